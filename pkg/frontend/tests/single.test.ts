// Single-word mode renders the stubbed payload exactly: hypernym badge,
// image placeholder, related words, clues, examples, common features.

import { beforeEach, describe, expect, it } from "vitest";

import { mountApp } from "../src/app.js";
import { formatScore, formatWeight } from "../src/render.js";
import { ApiError } from "../src/api.js";
import { StubApiClient, flush, stubPrediction } from "./stub.js";

async function renderSingle(client = new StubApiClient()) {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const app = await mountApp(root, client, "");
  (root.querySelector(".word-input") as HTMLInputElement).value = "jaguar";
  (root.querySelector(".context-input") as HTMLInputElement).value =
    "a large spotted predator";
  await app.run();
  await flush();
  return { app, root, client };
}

describe("single word view", () => {
  let root: HTMLElement;
  let client: StubApiClient;

  beforeEach(async () => {
    ({ root, client } = await renderSingle());
  });

  it("renders one card per ranked sense in API order", () => {
    const cards = root.querySelectorAll(".sense-card");
    expect(cards.length).toBe(stubPrediction.ranked.length);
    const names = [...cards].map((c) => c.querySelector(".sense-name")!.textContent);
    expect(names).toEqual(["jaguar#0", "jaguar#1"]);
  });

  it("expands only the best sense by default, others expandable", () => {
    const cards = [...root.querySelectorAll<HTMLElement>(".sense-card")];
    expect(cards[0].dataset.expanded).toBe("true");
    expect(cards[1].dataset.expanded).toBe("false");
    (cards[1].querySelector(".expand-toggle") as HTMLButtonElement).click();
    expect(cards[1].dataset.expanded).toBe("true");
  });

  it("shows the stubbed hypernym badge on the top card", () => {
    const badge = root.querySelector(".sense-card .hypernym-badge")!;
    expect(badge.textContent).toBe(stubPrediction.ranked[0].sense.label);
  });

  it("renders a deterministic placeholder for a null image url", () => {
    const image = root.querySelector<HTMLElement>(".sense-card .sense-image")!;
    expect(image.dataset.placeholder).toBe("true");
    expect(root.querySelector("img")).toBeNull();
  });

  it("lists related words exactly as stubbed, in order", () => {
    const top = root.querySelector(".sense-card")!;
    const chips = top.querySelectorAll(".chips.members .chip");
    expect([...chips].map((c) => c.textContent)).toEqual(
      stubPrediction.ranked[0].sense.members.map((m) => m.word),
    );
    expect((chips[0] as HTMLElement).title).toBe(
      formatWeight(stubPrediction.ranked[0].sense.members[0].weight),
    );
  });

  it("lists context clues exactly as stubbed", () => {
    const top = root.querySelector(".sense-card")!;
    const chips = top.querySelectorAll(".chips.clues .chip");
    expect([...chips].map((c) => c.textContent)).toEqual(
      stubPrediction.ranked[0].sense.context_clues.map((c) => c.feature),
    );
  });

  it("lists usage examples exactly as stubbed", () => {
    const top = root.querySelector(".sense-card")!;
    const items = top.querySelectorAll(".example");
    expect([...items].map((c) => c.textContent)).toEqual(
      stubPrediction.ranked[0].sense.examples.map((e) => e.sentence),
    );
  });

  it("renders common features as clickable buttons in stub order", () => {
    const cards = root.querySelectorAll(".sense-card");
    const buttons = cards[0].querySelectorAll(".feature");
    expect([...buttons].map((b) => b.textContent)).toEqual(
      stubPrediction.ranked[0].common_features.map((cf) => cf.feature),
    );
  });

  it("renders the stubbed score without recomputation", () => {
    const score = root.querySelector(".sense-card .score")!;
    expect(score.textContent).toBe(formatScore(stubPrediction.ranked[0].score));
  });

  it("sends the selected model with the query", () => {
    const call = client.calls.find((c) => c.method === "predict")!;
    expect(call.args).toEqual(["jaguar", "a large spotted predator", "words-cluster"]);
  });
});

describe("single word errors", () => {
  it("shows an inline banner on 422 and preserves the inputs", async () => {
    const client = new StubApiClient();
    client.predictError = new ApiError(422, "context must not be empty");
    const { root } = await renderSingle(client);
    const banner = root.querySelector<HTMLElement>(".error-banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toBe("enter a context");
    expect((root.querySelector(".word-input") as HTMLInputElement).value).toBe("jaguar");
    expect((root.querySelector(".context-input") as HTMLInputElement).value).toBe(
      "a large spotted predator",
    );
  });

  it("shows the API error message on 404", async () => {
    const client = new StubApiClient();
    client.predictError = new ApiError(404, "unknown word: 'zzz'");
    const { root } = await renderSingle(client);
    expect(root.querySelector(".error-banner")!.textContent).toBe("unknown word: 'zzz'");
  });
});

describe("model switcher", () => {
  it("re-issues the identical query against the new model", async () => {
    const { root, client } = await renderSingle();
    const select = root.querySelector(".model-select") as HTMLSelectElement;
    select.value = "super-context";
    select.dispatchEvent(new Event("change"));
    await flush();
    const predicts = client.calls.filter((c) => c.method === "predict");
    expect(predicts.length).toBe(2);
    expect(predicts[1].args).toEqual([
      "jaguar",
      "a large spotted predator",
      "super-context",
    ]);
  });
});

describe("stale responses", () => {
  it("discards a superseded in-flight response", async () => {
    const client = new StubApiClient();
    let releaseFirst!: () => void;
    client.gates.set(0, new Promise((resolve) => (releaseFirst = resolve)));
    document.body.innerHTML = '<div id="app"></div>';
    const root = document.getElementById("app")!;
    const app = await mountApp(root, client, "");
    (root.querySelector(".word-input") as HTMLInputElement).value = "jaguar";
    (root.querySelector(".context-input") as HTMLInputElement).value = "first query";
    const first = app.run();
    (root.querySelector(".context-input") as HTMLInputElement).value = "second query";
    const second = app.run();
    releaseFirst();
    await Promise.all([first, second]);
    await flush();
    const predicts = client.calls.filter((c) => c.method === "predict");
    expect(predicts.length).toBe(2);
    // the second (newest) response owns the view; exactly one rendering
    expect(root.querySelectorAll(".prediction").length).toBe(1);
    expect(app.query.context).toBe("second query");
  });
});
