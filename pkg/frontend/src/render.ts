// DOM builders. Everything shown is taken verbatim from API payloads:
// ranking order, member order, clue order, and offsets are rendered as
// received, never recomputed.

import type {
  Annotation,
  PredictAllResponse,
  Prediction,
  RankedSense,
  TraceResponse,
} from "./api.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export const formatScore = (value: number): string => value.toFixed(3);
export const formatWeight = (value: number): string => value.toFixed(2);

export type FeatureClickHandler = (ranked: RankedSense, feature: string) => void;

function imageFor(card: RankedSense): HTMLElement {
  const url = card.sense.image_url;
  if (url === null) {
    const placeholder = el("div", "sense-image placeholder", "✱");
    placeholder.dataset.placeholder = "true";
    return placeholder;
  }
  const img = el("img", "sense-image");
  img.src = url;
  img.alt = `${card.sense.word} ${card.sense.label ?? ""}`.trim();
  img.loading = "lazy";
  return img;
}

function wordChips(
  className: string,
  items: { word: string; weight: number }[],
): HTMLElement {
  const list = el("ul", `chips ${className}`);
  for (const item of items) {
    const chip = el("li", "chip", item.word);
    chip.title = formatWeight(item.weight);
    list.appendChild(chip);
  }
  return list;
}

function section(title: string, body: HTMLElement): HTMLElement {
  const wrap = el("section", "card-section");
  wrap.appendChild(el("h4", undefined, title));
  wrap.appendChild(body);
  return wrap;
}

export function renderSenseCard(
  ranked: RankedSense,
  options: {
    expanded: boolean;
    selectedFeature?: string | null;
    onFeatureClick?: FeatureClickHandler;
  },
): HTMLElement {
  const { sense } = ranked;
  const card = el("article", "sense-card");
  card.dataset.senseId = String(sense.sense_id);
  card.dataset.expanded = String(options.expanded);

  const header = el("header", "card-header");
  header.appendChild(el("span", "sense-name", `${sense.word}#${sense.sense_id}`));
  header.appendChild(el("span", "hypernym-badge", sense.label ?? "unlabeled"));
  header.appendChild(el("span", "score", formatScore(ranked.score)));
  card.appendChild(header);

  const body = el("div", "card-body");
  body.hidden = !options.expanded;
  body.appendChild(imageFor(ranked));

  if (sense.hypernyms.length) {
    body.appendChild(
      section(
        "Hypernyms",
        wordChips(
          "hypernyms",
          sense.hypernyms.map((h) => ({ word: h.word, weight: h.score })),
        ),
      ),
    );
  }
  body.appendChild(section("Related words", wordChips("members", sense.members)));
  body.appendChild(
    section(
      "Context clues",
      wordChips(
        "clues",
        sense.context_clues.map((c) => ({ word: c.feature, weight: c.weight })),
      ),
    ),
  );

  const examples = el("ul", "examples");
  for (const example of sense.examples) {
    const item = el("li", "example", example.sentence);
    item.title = formatScore(example.confidence);
    examples.appendChild(item);
  }
  body.appendChild(section("Usage examples", examples));

  const features = el("div", "common-features");
  for (const cf of ranked.common_features) {
    const button = el("button", "feature", cf.feature);
    button.type = "button";
    button.title = `context ${formatWeight(cf.context_weight)} · sense ${formatWeight(cf.sense_weight)}`;
    if (options.selectedFeature === cf.feature) button.classList.add("selected");
    button.addEventListener("click", () => options.onFeatureClick?.(ranked, cf.feature));
    features.appendChild(button);
  }
  body.appendChild(section("Common features", features));

  card.appendChild(body);
  return card;
}

export function renderPrediction(
  prediction: Prediction,
  handlers: {
    selectedFeature?: { senseId: number; feature: string } | null;
    onFeatureClick?: FeatureClickHandler;
  } = {},
): HTMLElement {
  const wrap = el("div", "prediction");
  if (prediction.fallback_used) {
    wrap.appendChild(
      el("p", "fallback-note", "No overlapping features; showing the most frequent sense."),
    );
  }
  prediction.ranked.forEach((ranked, index) => {
    const selected =
      handlers.selectedFeature && handlers.selectedFeature.senseId === ranked.sense.sense_id
        ? handlers.selectedFeature.feature
        : null;
    const card = renderSenseCard(ranked, {
      expanded: index === 0,
      selectedFeature: selected,
      onFeatureClick: handlers.onFeatureClick,
    });
    if (index > 0) {
      const toggle = el("button", "expand-toggle", "show details");
      toggle.type = "button";
      toggle.addEventListener("click", () => {
        const body = card.querySelector<HTMLElement>(".card-body");
        if (body) {
          body.hidden = !body.hidden;
          card.dataset.expanded = String(!body.hidden);
          toggle.textContent = body.hidden ? "show details" : "hide details";
        }
      });
      card.querySelector("header")?.appendChild(toggle);
    }
    wrap.appendChild(card);
  });
  return wrap;
}

export function renderTracePanel(trace: TraceResponse | null, empty: boolean): HTMLElement {
  const panel = el("aside", "trace-panel");
  if (trace === null) {
    panel.hidden = true;
    return panel;
  }
  panel.appendChild(el("h4", undefined, `Cluster words containing "${trace.feature}"`));
  if (empty || trace.members.length === 0) {
    panel.appendChild(el("p", "trace-empty", "no contributing members"));
    return panel;
  }
  const list = el("ol", "trace-members");
  for (const member of trace.members) {
    const item = el("li", "trace-member");
    item.appendChild(el("span", "word", member.word));
    item.appendChild(el("span", "weight", formatWeight(member.weight)));
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderAnnotatedText(
  response: PredictAllResponse,
  onSpanClick: (annotation: Annotation) => void,
): HTMLElement {
  const wrap = el("div", "annotated-text");
  const text = response.text;
  let cursor = 0;
  for (const annotation of response.annotations) {
    if (annotation.begin > cursor) {
      wrap.appendChild(document.createTextNode(text.slice(cursor, annotation.begin)));
    }
    const mark = el("mark", "annotation", text.slice(annotation.begin, annotation.end));
    mark.dataset.begin = String(annotation.begin);
    mark.dataset.end = String(annotation.end);
    const top = annotation.prediction.ranked[0];
    mark.appendChild(el("sup", "inline-hypernym", top ? top.sense.label ?? "unlabeled" : ""));
    mark.addEventListener("click", () => onSpanClick(annotation));
    wrap.appendChild(mark);
    cursor = annotation.end;
  }
  if (cursor < text.length) {
    wrap.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return wrap;
}
