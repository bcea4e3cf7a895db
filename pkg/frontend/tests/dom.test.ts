// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { mountWithClient, type App } from "../src/main.js";
import { FakeApi } from "./fakeApi.js";

let api: FakeApi;
let app: App;
let root: HTMLElement;

function query(testId: string): HTMLElement | null {
  return root.querySelector(`[data-testid="${testId}"]`);
}

function mustQuery(testId: string): HTMLElement {
  const node = query(testId);
  if (!node) throw new Error(`missing [data-testid=${testId}]`);
  return node;
}

async function settle() {
  // flush the promise chains behind click handlers
  for (let i = 0; i < 6; i += 1) await Promise.resolve();
}

function setInput(testId: string, value: string) {
  (mustQuery(testId) as HTMLInputElement).value = value;
}

async function click(testId: string) {
  mustQuery(testId).dispatchEvent(new window.Event("click", { bubbles: true }));
  await settle();
}

beforeEach(async () => {
  document.body.innerHTML = '<div id="root"></div>';
  root = document.getElementById("root") as HTMLElement;
  api = new FakeApi();
  app = mountWithClient(root, api.asClient());
  await settle();
});

describe("DOM play flow", () => {
  it("renders the assignment panel first, with no rating widgets anywhere", () => {
    expect(query("assignment-panel")).toBeTruthy();
    expect(query("rating-panel")).toBeNull();
    expect(query("describe-panel")).toBeNull();
  });

  it("plays a full winning game without ever showing rating widgets", async () => {
    api.guessQueue = [2];
    setInput("target-input", "2");
    setInput("reference-input", "1");
    await click("start-button");

    expect(query("describe-panel")).toBeTruthy();
    (mustQuery("description-input") as HTMLTextAreaElement).value = "fluffy warm";
    expect(query("rating-panel")).toBeNull();
    await click("describe-button");

    const announcement = mustQuery("guess-announcement").textContent ?? "";
    expect(announcement).toContain("Are you having number 2?");
    expect(query("rating-panel")).toBeNull();

    await click("correct-button");
    expect(query("won-panel")).toBeTruthy();
    expect(query("rating-panel")).toBeNull();
    expect(query("game-over-modal")).toBeNull();
  });

  it("shows rating widgets only after an incorrect judgment", async () => {
    api.guessQueue = [3, 2];
    setInput("target-input", "2");
    setInput("reference-input", "1");
    await click("start-button");
    (mustQuery("description-input") as HTMLTextAreaElement).value = "rough";
    await click("describe-button");

    expect(query("rating-panel")).toBeNull();
    await click("incorrect-button");
    const panel = mustQuery("rating-panel");
    expect(panel.getAttribute("data-kind")).toBe("validity");

    setInput("rating-input", "6");
    await click("rating-confirm");
    expect(mustQuery("rating-panel").getAttribute("data-kind")).toBe("similarity");

    setInput("rating-input", "4");
    await click("rating-confirm");
    expect(query("rating-panel")).toBeNull();
    expect(query("describe-panel")).toBeTruthy();
    expect(mustQuery("shown-reference").textContent).toContain("3");
  });

  it("rejects validity 11 inline without a request", async () => {
    api.guessQueue = [3];
    setInput("target-input", "2");
    setInput("reference-input", "1");
    await click("start-button");
    (mustQuery("description-input") as HTMLTextAreaElement).value = "rough";
    await click("describe-button");
    await click("incorrect-button");

    const callsBefore = api.calls.length;
    setInput("rating-input", "11");
    await click("rating-confirm");
    expect(mustQuery("rating-error").textContent).toContain("1 to 10");
    expect(api.calls.length).toBe(callsBefore);
    expect(mustQuery("rating-panel").getAttribute("data-kind")).toBe("validity");
  });

  it("pops the Game Over modal at five incorrect judgments", async () => {
    api.guessQueue = [3, 4, 5, 6, 2];
    setInput("target-input", "2");
    setInput("reference-input", "1");
    await click("start-button");
    for (let attempt = 1; attempt <= 5; attempt += 1) {
      (mustQuery("description-input") as HTMLTextAreaElement).value = `attempt ${attempt}`;
      await click("describe-button");
      await click("incorrect-button");
      setInput("rating-input", "2");
      await click("rating-confirm");
      setInput("rating-input", "3");
      await click("rating-confirm");
    }
    expect(query("game-over-modal")).toBeTruthy();
    expect(query("lost-panel")).toBeTruthy();
    await click("game-over-close");
    expect(query("game-over-modal")).toBeNull();
  });
});

describe("DOM dashboard", () => {
  it("renders the no-sessions state on an empty log", async () => {
    await app.refreshDashboard();
    expect(mustQuery("dashboard-empty").textContent).toContain("no sessions yet");
  });
});
