"""Hypernymy-labeling-in-context evaluation.

A prediction is Hypers-correct when the predicted sense's stored hypernym
labels share at least one word with the gold direct hypernyms, and
HyperHypers-correct against the extended gold set. Rows whose gold hypernyms
never overlap the model's labels for the target are filtered out before
scoring; unknown words during scoring count as errors, not skips.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import wsd
from .errors import DatasetError, ModelNotLoadedError, UnknownWordError
from .model import WSDModel

DATASET_HEADER = ("target", "context", "hypernyms", "hyperhypers")
FEATURE_CHOICES = ("cluster", "context", "mfs", "random")


@dataclass
class EvalRow:
    target: str
    context: str
    gold_hypers: frozenset[str]
    gold_hyperhypers: frozenset[str]


@dataclass
class EvalReport:
    model_id: str
    n_total: int
    n_evaluated: int
    n_correct_hypers: int
    n_correct_hyperhypers: int
    n_unknown: int
    acc_hypers: float
    acc_hyperhypers: float

    def to_kv_lines(self) -> list[str]:
        return [
            f"model_id={self.model_id}",
            f"n_total={self.n_total}",
            f"n_evaluated={self.n_evaluated}",
            f"n_correct_hypers={self.n_correct_hypers}",
            f"n_correct_hyperhypers={self.n_correct_hyperhypers}",
            f"n_unknown={self.n_unknown}",
            f"acc_hypers={self.acc_hypers!r}",
            f"acc_hyperhypers={self.acc_hyperhypers!r}",
        ]

    def format_text(self) -> str:
        rows = [
            ("model", self.model_id),
            ("rows total", str(self.n_total)),
            ("rows evaluated", str(self.n_evaluated)),
            ("unknown targets", str(self.n_unknown)),
            ("correct (Hypers)", str(self.n_correct_hypers)),
            ("correct (HyperHypers)", str(self.n_correct_hyperhypers)),
            ("accuracy Hypers", f"{self.acc_hypers:.4f}"),
            ("accuracy HyperHypers", f"{self.acc_hyperhypers:.4f}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _parse_gold(field: str) -> frozenset[str]:
    return frozenset(w.strip().lower() for w in field.split(",") if w.strip())


def load_dataset(path: str | Path) -> list[EvalRow]:
    """TSV with a header: target<TAB>context<TAB>hyper,...<TAB>hyperhyper,..."""
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"dataset file does not exist: {path}")
    lines = path.read_text("utf-8").splitlines()
    if not lines:
        raise DatasetError(f"{path}: empty file (header line required)")
    header = [c.strip().lower() for c in lines[0].split("\t")]
    if len(header) != 4:
        raise DatasetError(f"{path}:1: header must have 4 tab-separated columns")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise DatasetError(f"{path}:{i}: expected 4 columns, got {len(cols)}")
        target = cols[0].strip().lower()
        if not target:
            raise DatasetError(f"{path}:{i}: empty target")
        hypers = _parse_gold(cols[2])
        if not hypers:
            raise DatasetError(f"{path}:{i}: empty gold hypernym set")
        rows.append(
            EvalRow(
                target=target,
                context=cols[1],
                gold_hypers=hypers,
                gold_hyperhypers=hypers | _parse_gold(cols[3]),
            )
        )
    return rows


def model_labels_for(word: str, model: WSDModel, inventory: str) -> set[str]:
    """Union of hypernym labels over the word's senses (or classes holding it)."""
    labels: set[str] = set()
    if inventory == "words":
        for entry in model.senses.get(word, []):
            labels.update(entry.hypernyms.words())
    else:
        for cls in model.classes_with_word(word):
            labels.update(cls.hypernyms.words())
    return labels


def filter_evaluable(
    rows: Sequence[EvalRow], model: WSDModel, inventory: str = "words"
) -> list[EvalRow]:
    """Keep rows whose gold hypernyms intersect the model's labels for the target."""
    return [
        row
        for row in rows
        if row.gold_hypers & model_labels_for(row.target, model, inventory)
    ]


def match_row(labels: Iterable[str], row: EvalRow) -> tuple[bool, bool]:
    labels = set(labels)
    return bool(labels & row.gold_hypers), bool(labels & row.gold_hyperhypers)


def _predict_labels(
    row: EvalRow, model: WSDModel, inventory: str, features: str, rng: random.Random
) -> list[str]:
    if features == "mfs":
        pred = wsd.mfs_predict(row.target, model, inventory)
    elif features == "random":
        pred = wsd.random_predict(row.target, model, rng, inventory)
    else:
        pred = wsd.disambiguate(row.target, row.context, f"{inventory}-{features}", model)
    return wsd.prediction_labels(pred)


def evaluate(
    rows: Sequence[EvalRow],
    model: WSDModel,
    inventory: str = "words",
    features: str = "context",
    seed: int = 0,
    n_total: int | None = None,
) -> EvalReport:
    """Score filtered rows; n_total defaults to len(rows) if filtering happened upstream."""
    if inventory not in ("words", "super"):
        raise DatasetError(f"inventory must be words|super, got {inventory!r}")
    if features not in FEATURE_CHOICES:
        raise DatasetError(f"features must be one of {FEATURE_CHOICES}, got {features!r}")
    rng = random.Random(seed)
    n_hypers = n_hyperhypers = n_unknown = 0
    for row in rows:
        try:
            labels = _predict_labels(row, model, inventory, features, rng)
        except (UnknownWordError, ModelNotLoadedError):
            n_unknown += 1
            continue
        ok_h, ok_hh = match_row(labels, row)
        n_hypers += ok_h
        n_hyperhypers += ok_hh
    n_eval = len(rows)
    return EvalReport(
        model_id=f"{inventory}-{features}",
        n_total=n_total if n_total is not None else n_eval,
        n_evaluated=n_eval,
        n_correct_hypers=n_hypers,
        n_correct_hyperhypers=n_hyperhypers,
        n_unknown=n_unknown,
        acc_hypers=n_hypers / n_eval if n_eval else 0.0,
        acc_hyperhypers=n_hyperhypers / n_eval if n_eval else 0.0,
    )
