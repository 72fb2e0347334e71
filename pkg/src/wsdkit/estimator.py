"""sklearn-style facade over the induction pipeline.

SenseInducer.fit consumes raw document strings and builds the full model;
predict disambiguates (word, context) pairs against it. Parameters mirror
the pipeline configuration so get_params/set_params, cloning, and grid
search over induction settings compose with the scikit-learn ecosystem.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import wsd
from .config import PipelineConfig
from .corpus import load_stopwords, sentences_from_text
from .errors import ConfigError
from .model import MODEL_KINDS, WSDModel
from .pipeline import build_model
from .store import ModelDir, load_model, save_model


class SenseInducer(BaseEstimator):
    """Unsupervised word sense induction with cosine-based disambiguation."""

    def __init__(
        self,
        window: int = 3,
        min_word_freq: int = 5,
        p: int = 100,
        n_max: int = 200,
        n_ego: int = 200,
        n_inner: int = 50,
        max_iter: int = 20,
        min_cluster_size: int = 2,
        min_class_size: int = 2,
        k_hyper: int = 3,
        vec_cap: int = 10000,
        k_examples: int = 5,
        seed: int = 42,
        default_model: str = "words-context",
        jobs: int = 1,
    ):
        self.window = window
        self.min_word_freq = min_word_freq
        self.p = p
        self.n_max = n_max
        self.n_ego = n_ego
        self.n_inner = n_inner
        self.max_iter = max_iter
        self.min_cluster_size = min_cluster_size
        self.min_class_size = min_class_size
        self.k_hyper = k_hyper
        self.vec_cap = vec_cap
        self.k_examples = k_examples
        self.seed = seed
        self.default_model = default_model
        self.jobs = jobs

    def _config(self) -> PipelineConfig:
        if self.default_model not in MODEL_KINDS:
            raise ConfigError(f"default_model must be one of {MODEL_KINDS}")
        return PipelineConfig(
            window=self.window,
            min_word_freq=self.min_word_freq,
            p=self.p,
            n_max=self.n_max,
            n_ego=self.n_ego,
            n_inner=self.n_inner,
            max_iter=self.max_iter,
            min_cluster_size=self.min_cluster_size,
            min_class_size=self.min_class_size,
            k_hyper=self.k_hyper,
            vec_cap=self.vec_cap,
            k_examples=self.k_examples,
            seed=self.seed,
        )

    def fit(self, X: Iterable[str], y=None) -> "SenseInducer":
        """Induce the model from raw document strings."""
        stopwords = load_stopwords()
        sentences = []
        for i, doc in enumerate(X):
            if not isinstance(doc, str):
                raise ConfigError(f"documents must be strings, got {type(doc).__name__}")
            sentences.extend(sentences_from_text(doc, doc_id=f"doc{i}", stopwords=stopwords))
        self.model_ = build_model(sentences, self._config(), jobs=self.jobs)
        return self

    def predict(self, X: Sequence[tuple[str, str]], model_id: str | None = None) -> list[str]:
        """Top sense label ("word#id" or "class#id") per (word, context) pair."""
        check_is_fitted(self, "model_")
        model_id = model_id or self.default_model
        labels = []
        for word, context in X:
            pred = wsd.disambiguate(word, context, model_id, self.model_)
            top = pred.ranked[0].candidate
            if hasattr(top, "class_id"):
                labels.append(f"class#{top.class_id}")
            else:
                labels.append(f"{top.word}#{top.sense_id}")
        return labels

    def predict_ranked(
        self, word: str, context: str, model_id: str | None = None
    ) -> wsd.Prediction:
        check_is_fitted(self, "model_")
        return wsd.disambiguate(word, context, model_id or self.default_model, self.model_)

    def transform(self, X: Sequence[str], model_id: str | None = None) -> list[list[wsd.Annotation]]:
        """All-words annotations for each text."""
        check_is_fitted(self, "model_")
        model_id = model_id or self.default_model
        return [wsd.disambiguate_all(text, model_id, self.model_) for text in X]

    def fit_transform(self, X: Sequence[str], y=None) -> list[list[wsd.Annotation]]:
        return self.fit(X).transform(X)

    def save(self, path: str | Path) -> ModelDir:
        check_is_fitted(self, "model_")
        return save_model(self.model_, path)

    @classmethod
    def from_model_dir(cls, path: str | Path, **params) -> "SenseInducer":
        est = cls(**params)
        est.model_ = load_model(path)
        return est

    @property
    def vocabulary_(self) -> set[str]:
        check_is_fitted(self, "model_")
        return self.model_.vocab


def load(path: str | Path) -> WSDModel:
    """Convenience re-export: materialize a saved model directory."""
    return load_model(path)
