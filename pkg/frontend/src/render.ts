import { DashboardModel } from "./dashboardModel.js";
import { PlayModel } from "./playModel.js";

function el(tag: string, attrs: Record<string, string> = {}, text?: string): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Render the play flow into `root`. Re-rendered wholesale on every model
 * change: the widget tree IS the model state, which keeps the
 * "no screen offers an illegal action" rule enforceable in one place. */
export function renderPlay(root: HTMLElement, model: PlayModel): void {
  const state = model.getState();
  root.textContent = "";

  if (state.banner) {
    root.append(el("div", { class: "banner", "data-testid": "banner" }, state.banner));
  }

  const session = state.session;
  if (session) {
    const strip = el("div", { class: "status", "data-testid": "status-strip" });
    strip.append(
      el("span", {}, `target ${session.target_id} (${model.sampleName(session.target_id)})`),
      el(
        "span",
        { "data-testid": "shown-reference" },
        `reference in hand: ${session.shown_reference_id} ` +
          `(${model.sampleName(session.shown_reference_id)})`,
      ),
      el(
        "span",
        { "data-testid": "attempt-counter" },
        `attempt ${session.attempts.length} of ${session.max_attempts}`,
      ),
    );
    root.append(strip);
  }

  switch (state.screen) {
    case "assignment": {
      const panel = el("section", { "data-testid": "assignment-panel" });
      panel.append(el("h2", {}, "Assign two textiles"));
      const targetInput = el("input", {
        type: "number", id: "target-input", "data-testid": "target-input", min: "1",
      }) as HTMLInputElement;
      const referenceInput = el("input", {
        type: "number", id: "reference-input", "data-testid": "reference-input", min: "1",
      }) as HTMLInputElement;
      const start = el(
        "button",
        { "data-testid": "start-button" },
        "start the game",
      ) as HTMLButtonElement;
      start.addEventListener("click", () => {
        void model.start(Number(targetInput.value), Number(referenceInput.value));
      });
      panel.append(
        el("label", {}, "target id (facilitator only)"), targetInput,
        el("label", {}, "reference id"), referenceInput,
        start,
      );
      if (state.descriptionError) {
        panel.append(el("p", { class: "error", "data-testid": "inline-error" }, state.descriptionError));
      }
      root.append(panel);
      break;
    }
    case "describe": {
      const panel = el("section", { "data-testid": "describe-panel" });
      panel.append(el("h2", {}, "Describe the target textile"));
      const input = el("textarea", {
        "data-testid": "description-input", rows: "3",
      }) as HTMLTextAreaElement;
      const submit = el(
        "button",
        { "data-testid": "describe-button" },
        "send description",
      ) as HTMLButtonElement;
      submit.disabled = !model.describeEnabled;
      submit.addEventListener("click", () => void model.submitDescription(input.value));
      panel.append(input, submit);
      if (state.descriptionError) {
        panel.append(el("p", { class: "error", "data-testid": "inline-error" }, state.descriptionError));
      }
      root.append(panel);
      break;
    }
    case "guess": {
      const panel = el("section", { "data-testid": "guess-panel" });
      panel.append(
        el(
          "p",
          { "data-testid": "guess-announcement" },
          `Are you having number ${state.pendingGuessId}? ` +
            `(${model.sampleName(state.pendingGuessId)})`,
        ),
      );
      const correct = el("button", { "data-testid": "correct-button" }, "correct");
      const incorrect = el("button", { "data-testid": "incorrect-button" }, "incorrect");
      correct.addEventListener("click", () => void model.judgeCorrect());
      incorrect.addEventListener("click", () => model.judgeIncorrect());
      panel.append(correct, incorrect);
      root.append(panel);
      break;
    }
    case "validity":
    case "similarity": {
      const kind = state.screen;
      const panel = el("section", { "data-testid": "rating-panel", "data-kind": kind });
      panel.append(
        el(
          "h2",
          {},
          kind === "validity"
            ? "How valid was the interpretation of your descriptors? (1-10)"
            : "How similar does the guessed textile feel to the target? (1-10)",
        ),
      );
      const input = el("input", {
        type: "number", min: "1", max: "10", step: "1",
        "data-testid": "rating-input",
      }) as HTMLInputElement;
      const confirm = el("button", { "data-testid": "rating-confirm" }, "confirm score");
      confirm.addEventListener("click", () => void model.submitRating(Number(input.value)));
      panel.append(input, confirm);
      if (state.ratingError) {
        panel.append(el("p", { class: "error", "data-testid": "rating-error" }, state.ratingError));
      }
      root.append(panel);
      break;
    }
    case "won": {
      const panel = el("section", { "data-testid": "won-panel" });
      panel.append(el("h2", {}, "Correct! Session won."));
      const again = el("button", { "data-testid": "new-game-button" }, "new game");
      again.addEventListener("click", () => model.newGame());
      panel.append(again);
      root.append(panel);
      break;
    }
    case "lost": {
      const panel = el("section", { "data-testid": "lost-panel" });
      panel.append(el("h2", {}, "Session lost."));
      const again = el("button", { "data-testid": "new-game-button" }, "new game");
      again.addEventListener("click", () => model.newGame());
      panel.append(again);
      root.append(panel);
      break;
    }
  }

  if (state.gameOverModal) {
    const modal = el("div", { class: "modal", "data-testid": "game-over-modal" });
    modal.append(el("h2", {}, "Game Over"));
    modal.append(el("p", {}, "The attempt limit was reached."));
    const close = el("button", { "data-testid": "game-over-close" }, "close");
    close.addEventListener("click", () => model.dismissGameOver());
    modal.append(close);
    root.append(modal);
  }

  if (session && session.attempts.length > 0) {
    const list = el("ol", { "data-testid": "attempt-list" });
    for (const attempt of session.attempts) {
      list.append(
        el(
          "li",
          {},
          `#${attempt.index} guessed ${attempt.predicted_id} ` +
            `(${model.sampleName(attempt.predicted_id)}) - ${attempt.judgment}` +
            (attempt.judgment === "incorrect"
              ? ` [validity ${attempt.validity}, similarity ${attempt.similarity}]`
              : ""),
        ),
      );
    }
    root.append(list);
  }
}

export function renderDashboard(root: HTMLElement, model: DashboardModel): void {
  const state = model.getState();
  root.textContent = "";

  if (state.error) {
    root.append(el("div", { class: "banner", "data-testid": "dashboard-error" }, state.error));
    return;
  }
  if (state.empty) {
    root.append(
      el("p", { "data-testid": "dashboard-empty" }, "no sessions yet - play a game first"),
    );
    return;
  }
  const report = state.report;
  if (report === null) return;

  const banner = el("div", { class: "overall", "data-testid": "overall-banner" });
  banner.append(
    el("strong", { "data-testid": "overall-rate" }, model.overallBanner ?? ""),
    el(
      "span",
      {},
      ` success over ${report.total_tasks} tasks (${report.wins} won, ` +
        `${report.total_attempts} attempts)`,
    ),
  );
  root.append(banner);

  for (const kind of ["validity", "similarity"] as const) {
    const stats = report[kind];
    const section = el("section", { "data-testid": `${kind}-histogram` });
    section.append(el("h3", {}, `${kind} scores (failed attempts)`));
    if (!stats) {
      section.append(el("p", {}, "no failed attempts rated"));
    } else {
      section.append(el("p", {}, `mean ${stats.mean.toFixed(2)} over ${stats.count} ratings`));
      const bars = el("div", { class: "bars" });
      const max = Math.max(1, ...model.histogramBars(kind).map((b) => b.count));
      for (const bar of model.histogramBars(kind)) {
        const column = el("div", { class: "bar", "data-rating": String(bar.rating) });
        const fill = el("div", { class: "fill" }, String(bar.count));
        fill.style.height = `${(bar.count / max) * 100}%`;
        column.append(fill, el("span", {}, String(bar.rating)));
        bars.append(column);
      }
      section.append(bars);
    }
    root.append(section);
  }

  const per = el("section", { "data-testid": "per-textile" });
  per.append(el("h3", {}, "per-textile results (by success rate)"));
  const table = el("table");
  const head = el("tr");
  for (const column of ["id", "name", "success", "mean validity", "mean similarity"]) {
    head.append(el("th", {}, column));
  }
  table.append(head);
  for (const row of model.perTextileRows) {
    const tr = el("tr", { "data-id": String(row.id) });
    tr.append(
      el("td", {}, String(row.id)),
      el("td", {}, row.name),
      el("td", {}, row.success_rate === null ? "" : row.success_rate.toFixed(2)),
      el("td", {}, row.mean_validity === null ? "" : row.mean_validity.toFixed(2)),
      el("td", {}, row.mean_similarity === null ? "" : row.mean_similarity.toFixed(2)),
    );
    table.append(tr);
  }
  per.append(table);
  root.append(per);

  const heat = el("section", { "data-testid": "confusion-heatmap" });
  heat.append(el("h3", {}, "confusion: actual target (rows) vs prediction (columns)"));
  const n = report.confusion_ids.length;
  const grid = el("div", { class: "heatmap" });
  grid.style.gridTemplateColumns = `repeat(${n}, 1.4em)`;
  for (const cell of model.heatmapCells) {
    const div = el("div", {
      class: "cell",
      "data-actual": String(cell.actual),
      "data-predicted": String(cell.predicted),
      title: `target ${cell.actual} -> guessed ${cell.predicted}: ${cell.count}`,
    });
    div.style.background = `rgba(30, 90, 190, ${cell.intensity})`;
    if (cell.count > 0) div.textContent = String(cell.count);
    grid.append(div);
  }
  heat.append(grid);
  root.append(heat);
}
