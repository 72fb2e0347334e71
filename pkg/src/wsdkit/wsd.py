"""Disambiguation: context featurization, cosine scoring, baselines, trace-back.

Four model kinds share one code path: per-word inventories score the target's
induced senses, super-sense inventories score every semantic class. Scores
are cosine similarities between the L2-normalized context bag and the
candidate's cluster or context vector. When nothing overlaps, the most
frequent sense is returned with fallback_used set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .corpus import (
    Sentence,
    detect_targets,
    is_word_token,
    load_stopwords,
    normalize,
    sentences_from_text,
    tokenize,
)
from .errors import ModelNotLoadedError, UnknownWordError
from .model import WSDModel, split_model_kind
from .senses import SemanticClass, SenseEntry
from .vectors import FeatureVector

Candidate = SenseEntry | SemanticClass


class CommonFeature(NamedTuple):
    feature: str
    context_weight: float
    sense_weight: float


class RankedCandidate(NamedTuple):
    candidate: Candidate
    score: float
    common_features: list[CommonFeature]


@dataclass
class Prediction:
    word: str
    model_id: str
    ranked: list[RankedCandidate]
    confidence: float
    fallback_used: bool

    @property
    def top(self) -> Candidate:
        return self.ranked[0].candidate


@dataclass
class Annotation:
    token_index: int
    begin: int
    end: int
    word: str
    prediction: Prediction


def candidate_id(candidate: Candidate) -> int:
    return candidate.sense_id if isinstance(candidate, SenseEntry) else candidate.class_id


def candidate_size(candidate: Candidate) -> int:
    if isinstance(candidate, SenseEntry):
        return len(candidate.members)
    return len(candidate.member_senses)


def candidate_vector(candidate: Candidate, features: str) -> FeatureVector:
    """The scoring vector; an empty context vector falls back to cluster words."""
    if features == "cluster":
        return candidate.cluster_vec
    return candidate.context_vec if candidate.context_vec else candidate.cluster_vec


def featurize_context(sentence: Sentence, target_index: int | None) -> FeatureVector:
    """Bag of non-stopword word-token norms excluding the target, L2-normalized."""
    bag: dict[str, float] = {}
    for i, tok in enumerate(sentence.tokens):
        if i == target_index or tok.is_stopword or not is_word_token(tok):
            continue
        bag[tok.norm] = bag.get(tok.norm, 0.0) + 1.0
    return FeatureVector(bag).unit()


def score(context: FeatureVector, sense_vec: FeatureVector) -> float:
    return context.cosine(sense_vec)


def _candidates(word: str, model: WSDModel, inventory: str) -> list[Candidate]:
    if inventory == "words":
        entries = model.senses.get(word)
        if not entries:
            raise UnknownWordError(f"unknown word: {word!r}")
        return list(entries)
    if not model.classes:
        raise ModelNotLoadedError("model not loaded: no semantic classes")
    return list(model.classes)


def _common(context: FeatureVector, vec: FeatureVector) -> list[CommonFeature]:
    rows = [
        CommonFeature(f, context.get(f), vec.get(f)) for f in context.common_features(vec)
    ]
    rows.sort(key=lambda r: (-(r.context_weight * r.sense_weight), r.feature))
    return rows


def _as_sentence(context: Sentence | str) -> Sentence:
    if isinstance(context, Sentence):
        return context
    text = normalize(context)
    tokens = tokenize(text, load_stopwords())
    return Sentence(doc_id="<context>", index=0, tokens=tokens, raw=text)


def _find_target(sentence: Sentence, word: str) -> int | None:
    for i, tok in enumerate(sentence.tokens):
        if tok.norm == word:
            return i
    return None


def disambiguate_at(
    word: str,
    sentence: Sentence,
    target_index: int | None,
    model_id: str,
    model: WSDModel,
) -> Prediction:
    inventory, features = split_model_kind(model_id)
    word = normalize(word).lower()
    candidates = _candidates(word, model, inventory)
    context = featurize_context(sentence, target_index)
    scored = [
        RankedCandidate(
            candidate=cand,
            score=score(context, candidate_vector(cand, features)),
            common_features=_common(context, candidate_vector(cand, features)),
        )
        for cand in candidates
    ]
    scored.sort(key=lambda r: (-r.score, candidate_id(r.candidate)))
    fallback = all(r.score == 0.0 for r in scored)
    if fallback:
        # most frequent sense first: largest member count, ties smallest id
        scored.sort(key=lambda r: (-candidate_size(r.candidate), candidate_id(r.candidate)))
    confidence = scored[0].score - scored[1].score if len(scored) > 1 else 0.0
    return Prediction(
        word=word,
        model_id=model_id,
        ranked=scored,
        confidence=confidence,
        fallback_used=fallback,
    )


def disambiguate(
    word: str, context: Sentence | str, model_id: str, model: WSDModel
) -> Prediction:
    """Rank the word's candidate senses by relevance to the context sentence."""
    sentence = _as_sentence(context)
    word_norm = normalize(word).lower()
    return disambiguate_at(word_norm, sentence, _find_target(sentence, word_norm), model_id, model)


def disambiguate_all(text: str, model_id: str, model: WSDModel) -> list[Annotation]:
    """Annotate every detected in-vocabulary target in the text."""
    stopwords = load_stopwords()
    annotations: list[Annotation] = []
    vocab = model.vocab
    token_base = 0
    for sentence in sentences_from_text(text, doc_id="<text>", stopwords=stopwords):
        for idx in detect_targets(sentence, vocab):
            tok = sentence.tokens[idx]
            try:
                prediction = disambiguate_at(tok.norm, sentence, idx, model_id, model)
            except (UnknownWordError, ModelNotLoadedError):
                continue
            annotations.append(
                Annotation(
                    token_index=token_base + idx,
                    begin=sentence.start + tok.begin,
                    end=sentence.start + tok.end,
                    word=tok.norm,
                    prediction=prediction,
                )
            )
        token_base += len(sentence.tokens)
    return annotations


def mfs_predict(word: str, model: WSDModel, inventory: str = "words") -> Prediction:
    """Largest cluster (ties: smallest id), reported with score 0."""
    word = normalize(word).lower()
    candidates = _candidates(word, model, inventory)
    best = min(candidates, key=lambda c: (-candidate_size(c), candidate_id(c)))
    return Prediction(
        word=word,
        model_id="mfs",
        ranked=[RankedCandidate(best, 0.0, [])],
        confidence=0.0,
        fallback_used=False,
    )


def random_predict(
    word: str,
    model: WSDModel,
    seed: int | random.Random = 0,
    inventory: str = "words",
) -> Prediction:
    """Uniform choice over candidates with a seeded generator, score 0."""
    word = normalize(word).lower()
    candidates = _candidates(word, model, inventory)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pick = candidates[rng.randrange(len(candidates))]
    return Prediction(
        word=word,
        model_id="random",
        ranked=[RankedCandidate(pick, 0.0, [])],
        confidence=0.0,
        fallback_used=False,
    )


def trace_feature(
    candidate: Candidate, feature: str, model: WSDModel
) -> list[tuple[str, float]]:
    """Cluster members whose word vector contains the feature, weight descending."""
    if isinstance(candidate, SenseEntry):
        members = [m for m, _ in candidate.members]
    else:
        members = list(candidate.member_words)
    hits = []
    for member in members:
        vec = model.word_vecs.get(member)
        if vec is not None and feature in vec:
            hits.append((member, vec.get(feature)))
    hits.sort(key=lambda it: (-it[1], it[0]))
    return hits


def extract_usage_examples(
    word: str,
    sentences: Iterable[Sentence],
    model: WSDModel,
    k: int = 5,
) -> dict[int, list[tuple[str, float]]]:
    """Per sense, the k sentences predicted for it with the highest confidence.

    Sentences are disambiguated with the words-context model; predictions that
    needed the MFS fallback are excluded.
    """
    word = word.lower()
    buckets: dict[int, list[tuple[str, float]]] = {
        e.sense_id: [] for e in model.senses.get(word, [])
    }
    for sentence in sentences:
        idx = _find_target(sentence, word)
        if idx is None:
            continue
        try:
            pred = disambiguate_at(word, sentence, idx, "words-context", model)
        except (UnknownWordError, ModelNotLoadedError):
            continue
        if pred.fallback_used:
            continue
        top = pred.ranked[0]
        # collapse whitespace so the stored example survives TSV serialization
        text = " ".join(sentence.raw.split())
        buckets[candidate_id(top.candidate)].append((text, pred.confidence))
    for sense_id, rows in buckets.items():
        rows.sort(key=lambda it: (-it[1], it[0]))
        buckets[sense_id] = rows[:k]
    return buckets


def prediction_labels(prediction: Prediction) -> list[str]:
    """Hypernym label words of the top-ranked candidate."""
    return prediction.top.hypernyms.words()


__all__ = [
    "Annotation",
    "CommonFeature",
    "Prediction",
    "RankedCandidate",
    "candidate_id",
    "candidate_vector",
    "disambiguate",
    "disambiguate_all",
    "disambiguate_at",
    "extract_usage_examples",
    "featurize_context",
    "mfs_predict",
    "random_predict",
    "score",
    "trace_feature",
]
