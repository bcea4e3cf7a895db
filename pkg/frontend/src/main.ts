import { ApiClient, FetchLike } from "./api.js";
import { DashboardModel } from "./dashboardModel.js";
import { PlayModel } from "./playModel.js";
import { renderDashboard, renderPlay } from "./render.js";

export interface App {
  play: PlayModel;
  dashboard: DashboardModel;
  refreshDashboard: () => Promise<void>;
}

/** Wire models to the page. `baseUrl` defaults to the serving origin and
 * can be overridden with ?api=http://host:port for split deployments. */
export function mountApp(
  root: HTMLElement,
  baseUrl: string,
  fetchImpl?: FetchLike,
): App {
  return mountWithClient(root, new ApiClient(baseUrl, fetchImpl));
}

/** The actual mount; tests inject their own client here. */
export function mountWithClient(root: HTMLElement, api: ApiClient): App {
  const play = new PlayModel(api);
  const dashboard = new DashboardModel(api);

  root.textContent = "";
  const nav = document.createElement("nav");
  const playTab = document.createElement("button");
  playTab.textContent = "play";
  playTab.setAttribute("data-testid", "tab-play");
  const dashboardTab = document.createElement("button");
  dashboardTab.textContent = "dashboard";
  dashboardTab.setAttribute("data-testid", "tab-dashboard");
  nav.append(playTab, dashboardTab);

  const playRoot = document.createElement("main");
  playRoot.setAttribute("data-testid", "play-root");
  const dashboardRoot = document.createElement("main");
  dashboardRoot.setAttribute("data-testid", "dashboard-root");
  dashboardRoot.hidden = true;
  root.append(nav, playRoot, dashboardRoot);

  playTab.addEventListener("click", () => {
    playRoot.hidden = false;
    dashboardRoot.hidden = true;
  });
  dashboardTab.addEventListener("click", () => {
    playRoot.hidden = true;
    dashboardRoot.hidden = false;
    void dashboard.refresh();
  });

  play.onChange(() => renderPlay(playRoot, play));
  dashboard.onChange(() => renderDashboard(dashboardRoot, dashboard));
  renderPlay(playRoot, play);
  renderDashboard(dashboardRoot, dashboard);
  void play.loadCatalog();

  return { play, dashboard, refreshDashboard: () => dashboard.refresh() };
}

declare global {
  interface Window {
    __textileguessApp?: App;
  }
}

// Browser bootstrap; tests import mountApp directly instead.
if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("api") ?? "";
  const app = mountApp(document.getElementById("app") as HTMLElement, baseUrl);
  window.__textileguessApp = app;
  window.setInterval(() => {
    const dashboardRoot = document.querySelector('[data-testid="dashboard-root"]');
    if (dashboardRoot instanceof HTMLElement && !dashboardRoot.hidden) {
      void app.refreshDashboard();
    }
  }, 5000);
}
