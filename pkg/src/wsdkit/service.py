"""HTTP API over loaded model directories.

One model directory exposes four logical models (words-cluster,
words-context, super-cluster, super-context). All endpoints are read-only;
loaded models are immutable, so request handling is freely concurrent. The
image provider is pluggable ("none" by default) and never turns a provider
failure into a 5xx. Response schemas are documented field-by-field in
docs/API.md (api_version=1).
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

import httpx
from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import wsd
from .corpus import load_stopwords, normalize, tokenize
from .errors import ConfigError, ModelNotLoadedError, NotFoundError, UnknownWordError
from .model import MODEL_KINDS, WSDModel, split_model_kind
from .senses import SemanticClass, SenseEntry
from .store import load_manifest, load_model

API_VERSION = 1
IMAGE_PROVIDERS = ("none", "static-map", "external")
_CLUE_CAP = 10  # context clues shown per sense card


@dataclass
class ApiConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    models: dict[str, Path] = field(default_factory=dict)
    static_dir: Path | None = None
    image_provider: str = "none"
    image_map: Path | None = None
    image_endpoint: str | None = None
    image_key: str | None = None
    image_timeout: float = 2.0
    cors: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.models:
            raise ConfigError("service config must name at least one model directory")
        if self.image_provider not in IMAGE_PROVIDERS:
            raise ConfigError(f"image_provider must be one of {IMAGE_PROVIDERS}")
        if self.image_provider == "external" and not self.image_endpoint:
            raise ConfigError("image_provider=external requires image_endpoint")
        if self.image_provider == "static-map" and not self.image_map:
            raise ConfigError("image_provider=static-map requires image_map")


def load_service_config(path: str | Path) -> ApiConfig:
    """Flat `key<TAB>value` (or `key=value`) config file; see README for keys."""
    config = ApiConfig()
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" in line:
            key, _, value = line.partition("\t")
        elif "=" in line:
            key, _, value = line.partition("=")
        else:
            raise ConfigError(f"{path}:{line_no}: expected key<TAB>value or key=value")
        key, value = key.strip(), value.strip()
        if key == "host":
            config.host = value
        elif key == "port":
            config.port = int(value)
        elif key == "model":
            config.models["default"] = Path(value)
        elif key.startswith("model."):
            config.models[key[len("model.") :]] = Path(value)
        elif key == "static_dir":
            config.static_dir = Path(value)
        elif key == "image_provider":
            config.image_provider = value
        elif key == "image_map":
            config.image_map = Path(value)
        elif key == "image_endpoint":
            config.image_endpoint = value
        elif key == "image_key":
            config.image_key = value
        elif key == "image_timeout":
            config.image_timeout = float(value)
        elif key == "cors":
            config.cors = [origin.strip() for origin in value.split(",") if origin.strip()]
        else:
            raise ConfigError(f"{path}:{line_no}: unknown config key {key!r}")
    # environment overrides
    if os.environ.get("WSDKIT_PORT"):
        config.port = int(os.environ["WSDKIT_PORT"])
    if os.environ.get("WSDKIT_MODEL"):
        config.models = {"default": Path(os.environ["WSDKIT_MODEL"])}
    return config


class ImageProvider:
    def get(self, word: str, hypernym: str | None) -> str | None:
        return None


class StaticMapProvider(ImageProvider):
    """Lookup table: `word hypernym<TAB>url` lines."""

    def __init__(self, path: Path):
        self.mapping: dict[str, str] = {}
        for line in path.read_text("utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            query, _, url = line.partition("\t")
            if url:
                self.mapping[query.strip()] = url.strip()

    def get(self, word: str, hypernym: str | None) -> str | None:
        if hypernym is None:
            return None
        return self.mapping.get(f"{word} {hypernym}")


class ExternalProvider(ImageProvider):
    """Forwards "word hypernym" to a search endpoint; first hit wins.

    Results are cached per (word, hypernym); transport failures yield None
    and are not cached, so a later call may retry.
    """

    def __init__(
        self,
        endpoint: str,
        key: str | None = None,
        timeout: float = 2.0,
        client: httpx.Client | None = None,
    ):
        self.endpoint = endpoint
        self.key = key
        self.timeout = timeout
        self.client = client or httpx.Client()
        self._cache: dict[tuple[str, str], str | None] = {}
        self._lock = threading.Lock()

    def get(self, word: str, hypernym: str | None) -> str | None:
        if hypernym is None:
            return None
        cache_key = (word, hypernym)
        with self._lock:
            if cache_key in self._cache:
                return self._cache[cache_key]
        params = {"q": f"{word} {hypernym}"}
        if self.key:
            params["key"] = self.key
        try:
            resp = self.client.get(self.endpoint, params=params, timeout=self.timeout)
            hits = resp.json().get("hits", [])
            url = hits[0].get("url") if hits else None
        except Exception:
            return None
        with self._lock:
            self._cache[cache_key] = url
        return url


def make_provider(config: ApiConfig, client: httpx.Client | None = None) -> ImageProvider:
    if config.image_provider == "static-map":
        return StaticMapProvider(config.image_map)
    if config.image_provider == "external":
        return ExternalProvider(
            config.image_endpoint, config.image_key, config.image_timeout, client
        )
    return ImageProvider()


@dataclass
class LogicalModel:
    model_id: str
    inventory: str
    features: str
    model: WSDModel
    manifest: dict[str, str]


class ModelRegistry:
    def __init__(self, configured: dict[str, Path]):
        self.logical: dict[str, LogicalModel] = {}
        for dir_id in sorted(configured):
            path = configured[dir_id]
            model = load_model(path)  # fail fast on any invalid directory
            manifest = load_manifest(path)
            for kind in MODEL_KINDS:
                inventory, features = split_model_kind(kind)
                logical_id = kind if dir_id == "default" else f"{dir_id}.{kind}"
                self.logical[logical_id] = LogicalModel(
                    model_id=logical_id,
                    inventory=inventory,
                    features=features,
                    model=model,
                    manifest=manifest,
                )

    def get(self, model_id: str) -> LogicalModel:
        if model_id not in self.logical:
            raise NotFoundError(f"unknown model id: {model_id!r}")
        return self.logical[model_id]


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def _clues(vec) -> list[dict]:
    return [
        {"feature": f, "weight": w} for f, w in vec.sorted_by_weight()[:_CLUE_CAP]
    ]


def sense_card(
    candidate: SenseEntry | SemanticClass,
    query_word: str,
    provider: ImageProvider,
) -> dict:
    """The interpretable payload shown for one candidate sense or class."""
    top_hyper = candidate.hypernyms.top()
    card = {
        "hypernyms": [{"word": h, "score": s} for h, s in candidate.hypernyms],
        "label": top_hyper,
        "context_clues": _clues(candidate.context_vec),
        "image_url": provider.get(query_word, top_hyper),
    }
    if isinstance(candidate, SenseEntry):
        card.update(
            {
                "inventory": "words",
                "word": candidate.word,
                "sense_id": candidate.sense_id,
                "members": [{"word": m, "weight": w} for m, w in candidate.members],
                "examples": [
                    {"sentence": text, "confidence": conf} for text, conf in candidate.examples
                ],
            }
        )
    else:
        card.update(
            {
                "inventory": "super",
                "word": query_word,
                "sense_id": candidate.class_id,
                "members": [{"word": m, "weight": 1.0} for m in candidate.member_words],
                "examples": [],
            }
        )
    return card


def serialize_prediction(pred: wsd.Prediction, provider: ImageProvider) -> dict:
    return {
        "word": pred.word,
        "model_id": pred.model_id,
        "confidence": pred.confidence,
        "fallback_used": pred.fallback_used,
        "ranked": [
            {
                "sense": sense_card(r.candidate, pred.word, provider),
                "score": r.score,
                "common_features": [
                    {
                        "feature": cf.feature,
                        "context_weight": cf.context_weight,
                        "sense_weight": cf.sense_weight,
                    }
                    for cf in r.common_features
                ],
            }
            for r in pred.ranked
        ],
    }


class PredictBody(BaseModel):
    word: str | None = None
    context: str | None = None
    model: str | None = None


class PredictAllBody(BaseModel):
    text: str | None = None
    model: str | None = None


def create_app(config: ApiConfig, http_client: httpx.Client | None = None) -> FastAPI:
    config.validate()
    registry = ModelRegistry(config.models)
    provider = make_provider(config, http_client)
    app = FastAPI(title="wsdkit", version=str(API_VERSION))
    if config.cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors,
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return _error(404, str(exc))

    @app.exception_handler(UnknownWordError)
    async def _unknown_word(request: Request, exc: UnknownWordError):
        return _error(404, str(exc))

    @app.exception_handler(ModelNotLoadedError)
    async def _not_loaded(request: Request, exc: ModelNotLoadedError):
        return _error(404, str(exc))

    @app.get("/api/models")
    def list_models():
        return {
            "api_version": API_VERSION,
            "models": [
                {
                    "model_id": lm.model_id,
                    "inventory": lm.inventory,
                    "features": lm.features,
                    "counts": lm.model.counts(),
                }
                for lm in registry.logical.values()
            ],
        }

    @app.get("/api/inventory/{model_id}/{word}")
    def inventory(model_id: str, word: str):
        lm = registry.get(model_id)
        word_norm = word.lower()
        if lm.inventory == "words":
            candidates = lm.model.lookup_word(word_norm)
        else:
            candidates = lm.model.classes_with_word(word_norm)
            if not candidates:
                raise NotFoundError(f"word not found in any class: {word!r}")
        return {
            "word": word_norm,
            "model_id": model_id,
            "senses": [sense_card(c, word_norm, provider) for c in candidates],
        }

    @app.post("/api/predict")
    def predict(body: PredictBody):
        if not body.word or body.model is None:
            return _error(400, "missing required fields: word, model")
        if body.context is None:
            return _error(400, "missing required field: context")
        if not body.context.strip():
            return _error(422, "context must not be empty")
        lm = registry.get(body.model)
        pred = wsd.disambiguate(body.word, body.context, f"{lm.inventory}-{lm.features}", lm.model)
        out = serialize_prediction(pred, provider)
        out["model_id"] = lm.model_id
        return out

    @app.post("/api/predict-all")
    def predict_all(body: PredictAllBody):
        if body.text is None or body.model is None:
            return _error(400, "missing required fields: text, model")
        lm = registry.get(body.model)
        text = normalize(body.text)
        annotations = wsd.disambiguate_all(text, f"{lm.inventory}-{lm.features}", lm.model)
        tokens = tokenize(text, load_stopwords())
        return {
            "text": text,
            "model_id": lm.model_id,
            "tokens": [
                {"surface": t.surface, "norm": t.norm, "begin": t.begin, "end": t.end}
                for t in tokens
            ],
            "annotations": [
                {
                    "token_index": a.token_index,
                    "begin": a.begin,
                    "end": a.end,
                    "word": a.word,
                    "prediction": {
                        **serialize_prediction(a.prediction, provider),
                        "model_id": lm.model_id,
                    },
                }
                for a in annotations
            ],
        }

    @app.get("/api/trace/{model_id}/{word}/{sense_id}")
    def trace(model_id: str, word: str, sense_id: int, feature: str = Query(...)):
        lm = registry.get(model_id)
        word_norm = word.lower()
        if lm.inventory == "words":
            candidate = lm.model.lookup_sense(word_norm, sense_id)
        else:
            candidate = lm.model.lookup_class(sense_id)
        members = wsd.trace_feature(candidate, feature, lm.model)
        return {
            "word": word_norm,
            "sense_id": sense_id,
            "feature": feature,
            "members": [{"word": m, "weight": w} for m, w in members],
        }

    @app.get("/api/image")
    def image(word: str = Query(...), hypernym: str = Query(...)):
        return {"url": provider.get(word, hypernym)}

    if config.static_dir:
        app.mount("/", StaticFiles(directory=str(config.static_dir), html=True), name="static")

    return app


def serve(config: ApiConfig, http_client: httpx.Client | None = None) -> None:
    import uvicorn

    app = create_app(config, http_client)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
