// Typed client for the wsdkit HTTP API (api_version=1).
// Shapes mirror docs/API.md field for field; the UI never recomputes or
// reorders anything it receives.

export interface ModelCounts {
  words: number;
  senses: number;
  classes: number;
}

export interface ModelInfo {
  model_id: string;
  inventory: "words" | "super";
  features: "cluster" | "context";
  counts: ModelCounts;
}

export interface ScoredWord {
  word: string;
  score: number;
}

export interface WeightedWord {
  word: string;
  weight: number;
}

export interface ContextClue {
  feature: string;
  weight: number;
}

export interface UsageExample {
  sentence: string;
  confidence: number;
}

export interface SenseCard {
  inventory: "words" | "super";
  word: string;
  sense_id: number;
  label: string | null;
  hypernyms: ScoredWord[];
  members: WeightedWord[];
  context_clues: ContextClue[];
  examples: UsageExample[];
  image_url: string | null;
}

export interface CommonFeature {
  feature: string;
  context_weight: number;
  sense_weight: number;
}

export interface RankedSense {
  sense: SenseCard;
  score: number;
  common_features: CommonFeature[];
}

export interface Prediction {
  word: string;
  model_id: string;
  confidence: number;
  fallback_used: boolean;
  ranked: RankedSense[];
}

export interface TokenSpan {
  surface: string;
  norm: string;
  begin: number;
  end: number;
}

export interface Annotation {
  token_index: number;
  begin: number;
  end: number;
  word: string;
  prediction: Prediction;
}

export interface PredictAllResponse {
  text: string;
  model_id: string;
  tokens: TokenSpan[];
  annotations: Annotation[];
}

export interface TraceResponse {
  word: string;
  sense_id: number;
  feature: string;
  members: WeightedWord[];
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export interface ApiClient {
  models(): Promise<ModelInfo[]>;
  predict(word: string, context: string, model: string): Promise<Prediction>;
  predictAll(text: string, model: string): Promise<PredictAllResponse>;
  trace(model: string, word: string, senseId: number, feature: string): Promise<TraceResponse>;
}

async function responseJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) message = body.error;
    } catch {
      // non-JSON error body; keep the status message
    }
    throw new ApiError(response.status, message);
  }
  return response.json() as Promise<T>;
}

export class HttpApiClient implements ApiClient {
  constructor(private readonly base: string = "") {}

  async models(): Promise<ModelInfo[]> {
    const body = await responseJson<{ models: ModelInfo[] }>(
      await fetch(`${this.base}/api/models`),
    );
    return body.models;
  }

  predict(word: string, context: string, model: string): Promise<Prediction> {
    return fetch(`${this.base}/api/predict`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ word, context, model }),
    }).then((r) => responseJson<Prediction>(r));
  }

  predictAll(text: string, model: string): Promise<PredictAllResponse> {
    return fetch(`${this.base}/api/predict-all`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, model }),
    }).then((r) => responseJson<PredictAllResponse>(r));
  }

  trace(model: string, word: string, senseId: number, feature: string): Promise<TraceResponse> {
    const query = new URLSearchParams({ feature });
    const wordSegment = encodeURIComponent(word || "-");
    return fetch(
      `${this.base}/api/trace/${encodeURIComponent(model)}/${wordSegment}/${senseId}?${query}`,
    ).then((r) => responseJson<TraceResponse>(r));
  }
}
