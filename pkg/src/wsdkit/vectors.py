"""Sparse feature vectors.

A FeatureVector maps feature terms to strictly positive weights and is the
shared representation for words, senses, semantic classes, and contexts.
Zero or negative entries are never stored.
"""

from __future__ import annotations

import math
from typing import Iterator, Mapping


class FeatureVector:
    """Immutable-by-convention sparse vector over string features."""

    __slots__ = ("entries", "_norm")

    def __init__(self, entries: Mapping[str, float] | None = None):
        self.entries: dict[str, float] = {
            f: float(w) for f, w in (entries or {}).items() if w > 0
        }
        self._norm: float | None = None

    @property
    def norm2(self) -> float:
        """Euclidean norm, cached; summation order is fixed for determinism."""
        if self._norm is None:
            self._norm = math.sqrt(
                sum(w * w for _, w in sorted(self.entries.items()))
            )
        return self._norm

    def get(self, feature: str, default: float = 0.0) -> float:
        return self.entries.get(feature, default)

    def dot(self, other: "FeatureVector") -> float:
        a, b = self.entries, other.entries
        if len(b) < len(a):
            a, b = b, a
        return sum(w * b[f] for f, w in sorted(a.items()) if f in b)

    def cosine(self, other: "FeatureVector") -> float:
        na, nb = self.norm2, other.norm2
        if na == 0.0 or nb == 0.0:
            return 0.0
        return self.dot(other) / (na * nb)

    def top(self, k: int) -> "FeatureVector":
        """Keep the k largest entries; ties keep the lexicographically smaller feature."""
        if len(self.entries) <= k:
            return self
        kept = sorted(self.entries.items(), key=lambda it: (-it[1], it[0]))[:k]
        return FeatureVector(dict(kept))

    def unit(self) -> "FeatureVector":
        """L2-normalized copy; the zero vector stays zero."""
        n = self.norm2
        if n == 0.0:
            return FeatureVector()
        return FeatureVector({f: w / n for f, w in self.entries.items()})

    def scaled(self, c: float) -> "FeatureVector":
        return FeatureVector({f: w * c for f, w in self.entries.items()})

    def common_features(self, other: "FeatureVector") -> list[str]:
        return sorted(set(self.entries) & set(other.entries))

    def items(self):
        return self.entries.items()

    def sorted_by_weight(self) -> list[tuple[str, float]]:
        return sorted(self.entries.items(), key=lambda it: (-it[1], it[0]))

    def __contains__(self, feature: str) -> bool:
        return feature in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        head = dict(self.sorted_by_weight()[:4])
        more = f" +{len(self) - 4}" if len(self) > 4 else ""
        return f"FeatureVector({head}{more})"
