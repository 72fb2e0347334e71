// Shareable view state, round-tripped through the URL query string.

export type Mode = "single" | "all";

export interface QueryState {
  mode: Mode;
  model: string;
  word: string;
  context: string;
  text: string;
}

export const DEFAULT_STATE: QueryState = {
  mode: "single",
  model: "",
  word: "",
  context: "",
  text: "",
};

export function encodeQuery(state: QueryState): string {
  const params = new URLSearchParams();
  params.set("mode", state.mode);
  if (state.model) params.set("model", state.model);
  if (state.mode === "single") {
    if (state.word) params.set("word", state.word);
    if (state.context) params.set("context", state.context);
  } else if (state.text) {
    params.set("text", state.text);
  }
  return params.toString();
}

export function decodeQuery(search: string): QueryState {
  const params = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const mode = params.get("mode") === "all" ? "all" : "single";
  return {
    mode,
    model: params.get("model") ?? "",
    word: params.get("word") ?? "",
    context: params.get("context") ?? "",
    text: params.get("text") ?? "",
  };
}

/** True when the state carries a complete, runnable query. */
export function isRunnable(state: QueryState): boolean {
  if (state.mode === "single") {
    return state.word.trim().length > 0 && state.context.trim().length > 0;
  }
  return state.text.trim().length > 0;
}
