// Controller: wires the two modes, the model switcher, feature trace-back,
// error banners, and URL-encoded state onto a root element. At most one
// request is in flight per view; stale responses are dropped by sequence
// number.

import {
  ApiClient,
  ApiError,
  Annotation,
  PredictAllResponse,
  Prediction,
  RankedSense,
  TraceResponse,
} from "./api.js";
import { renderAnnotatedText, renderPrediction, renderTracePanel, el } from "./render.js";
import { DEFAULT_STATE, Mode, QueryState, decodeQuery, encodeQuery, isRunnable } from "./state.js";

interface Selected {
  senseId: number;
  word: string;
  feature: string;
}

export class App {
  query: QueryState;
  prediction: Prediction | null = null;
  allWords: PredictAllResponse | null = null;
  selected: Selected | null = null;
  trace: { payload: TraceResponse; empty: boolean } | null = null;

  private seq = 0;
  private root: HTMLElement;
  private client: ApiClient;
  private modelSelect!: HTMLSelectElement;
  private wordInput!: HTMLInputElement;
  private contextInput!: HTMLInputElement;
  private textInput!: HTMLTextAreaElement;
  private banner!: HTMLElement;
  private results!: HTMLElement;

  constructor(root: HTMLElement, client: ApiClient, search = "") {
    this.root = root;
    this.client = client;
    this.query = search ? decodeQuery(search) : { ...DEFAULT_STATE };
  }

  async init(): Promise<void> {
    this.buildChrome();
    try {
      const models = await this.client.models();
      for (const model of models) {
        const option = el("option", undefined, model.model_id);
        option.value = model.model_id;
        this.modelSelect.appendChild(option);
      }
      if (this.query.model) this.modelSelect.value = this.query.model;
      this.query.model = this.modelSelect.value;
    } catch (err) {
      this.showError(err);
      return;
    }
    if (isRunnable(this.query)) {
      await this.run();
    }
  }

  private buildChrome(): void {
    this.root.textContent = "";
    const header = el("header", "app-header");
    header.appendChild(el("h1", undefined, "wsdkit"));

    const modeToggle = el("div", "mode-toggle");
    for (const mode of ["single", "all"] as Mode[]) {
      const button = el(
        "button",
        "mode-button",
        mode === "single" ? "Single word" : "All words",
      );
      button.type = "button";
      button.dataset.mode = mode;
      button.addEventListener("click", () => this.setMode(mode));
      modeToggle.appendChild(button);
    }
    header.appendChild(modeToggle);

    this.modelSelect = el("select", "model-select");
    this.modelSelect.addEventListener("change", () => this.onModelChange());
    header.appendChild(this.modelSelect);
    this.root.appendChild(header);

    const singleForm = el("form", "query-form single-form");
    this.wordInput = el("input", "word-input");
    this.wordInput.placeholder = "ambiguous word, e.g. jaguar";
    this.contextInput = el("input", "context-input");
    this.contextInput.placeholder = "its context sentence";
    const singleSubmit = el("button", "submit", "Disambiguate");
    singleSubmit.type = "submit";
    singleForm.append(this.wordInput, this.contextInput, singleSubmit);
    singleForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run();
    });
    this.root.appendChild(singleForm);

    const allForm = el("form", "query-form all-form");
    this.textInput = el("textarea", "text-input");
    this.textInput.placeholder = "text to annotate";
    const allSubmit = el("button", "submit", "Annotate");
    allSubmit.type = "submit";
    allForm.append(this.textInput, allSubmit);
    allForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.run();
    });
    this.root.appendChild(allForm);

    const syncDisabled = () => {
      singleSubmit.disabled =
        !this.wordInput.value.trim() || !this.contextInput.value.trim();
      allSubmit.disabled = !this.textInput.value.trim();
    };
    for (const input of [this.wordInput, this.contextInput, this.textInput]) {
      input.addEventListener("input", syncDisabled);
    }

    this.banner = el("div", "error-banner");
    this.banner.setAttribute("role", "alert");
    this.banner.hidden = true;
    this.root.appendChild(this.banner);

    this.results = el("main", "results");
    this.root.appendChild(this.results);

    this.wordInput.value = this.query.word;
    this.contextInput.value = this.query.context;
    this.textInput.value = this.query.text;
    syncDisabled();
    this.applyMode();
  }

  private setMode(mode: Mode): void {
    if (this.query.mode !== mode) {
      this.query.mode = mode;
      this.applyMode();
      this.syncUrl();
    }
  }

  private applyMode(): void {
    const single = this.query.mode === "single";
    this.root.querySelector<HTMLElement>(".single-form")!.hidden = !single;
    this.root.querySelector<HTMLElement>(".all-form")!.hidden = single;
    for (const button of this.root.querySelectorAll<HTMLElement>(".mode-button")) {
      button.classList.toggle("active", button.dataset.mode === this.query.mode);
    }
  }

  private syncUrl(): void {
    if (typeof history !== "undefined" && history.replaceState) {
      history.replaceState(null, "", `?${encodeQuery(this.query)}`);
    }
  }

  private readQueryFromInputs(): void {
    this.query.word = this.wordInput.value;
    this.query.context = this.contextInput.value;
    this.query.text = this.textInput.value;
    this.query.model = this.modelSelect.value;
  }

  async run(): Promise<void> {
    this.readQueryFromInputs();
    if (!isRunnable(this.query)) return;
    this.syncUrl();
    const ticket = ++this.seq;
    this.hideError();
    try {
      if (this.query.mode === "single") {
        const prediction = await this.client.predict(
          this.query.word,
          this.query.context,
          this.query.model,
        );
        if (ticket !== this.seq) return; // superseded by a newer request
        this.prediction = prediction;
        this.allWords = null;
      } else {
        const response = await this.client.predictAll(this.query.text, this.query.model);
        if (ticket !== this.seq) return;
        this.allWords = response;
        this.prediction = null;
      }
      this.selected = null;
      this.trace = null;
      this.renderResults();
    } catch (err) {
      if (ticket !== this.seq) return;
      this.showError(err);
    }
  }

  private onModelChange(): void {
    // identical query, new model
    this.query.model = this.modelSelect.value;
    if (this.prediction || this.allWords) {
      void this.run();
    }
  }

  private async onFeatureClick(ranked: RankedSense, feature: string): Promise<void> {
    const sense = ranked.sense;
    if (
      this.selected &&
      this.selected.senseId === sense.sense_id &&
      this.selected.feature === feature
    ) {
      this.selected = null;
      this.trace = null;
      this.renderResults();
      return;
    }
    this.selected = { senseId: sense.sense_id, word: sense.word, feature };
    try {
      const payload = await this.client.trace(
        this.query.model,
        sense.inventory === "super" ? "-" : sense.word,
        sense.sense_id,
        feature,
      );
      this.trace = { payload, empty: payload.members.length === 0 };
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.trace = {
          payload: { word: sense.word, sense_id: sense.sense_id, feature, members: [] },
          empty: true,
        };
      } else {
        this.showError(err);
        return;
      }
    }
    this.renderResults();
  }

  private onSpanClick(annotation: Annotation): void {
    // the same sense-card component as single-word mode
    const detail = this.results.querySelector(".annotation-detail");
    if (detail) detail.remove();
    const holder = el("div", "annotation-detail");
    holder.appendChild(
      renderPrediction(annotation.prediction, {
        selectedFeature: null,
        onFeatureClick: (ranked, feature) => void this.onFeatureClick(ranked, feature),
      }),
    );
    this.results.appendChild(holder);
  }

  private renderResults(): void {
    this.results.textContent = "";
    if (this.query.mode === "single" && this.prediction) {
      this.results.appendChild(
        renderPrediction(this.prediction, {
          selectedFeature: this.selected
            ? { senseId: this.selected.senseId, feature: this.selected.feature }
            : null,
          onFeatureClick: (ranked, feature) => void this.onFeatureClick(ranked, feature),
        }),
      );
      this.results.appendChild(
        renderTracePanel(this.trace ? this.trace.payload : null, this.trace?.empty ?? false),
      );
    } else if (this.query.mode === "all" && this.allWords) {
      this.results.appendChild(
        renderAnnotatedText(this.allWords, (annotation) => this.onSpanClick(annotation)),
      );
    }
  }

  private showError(err: unknown): void {
    const message =
      err instanceof ApiError
        ? err.message
        : err instanceof Error
          ? err.message
          : String(err);
    this.banner.textContent =
      err instanceof ApiError && err.status === 422 ? "enter a context" : message;
    this.banner.hidden = false;
  }

  private hideError(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }
}

export async function mountApp(
  root: HTMLElement,
  client: ApiClient,
  search = "",
): Promise<App> {
  const app = new App(root, client, search);
  await app.init();
  return app;
}
