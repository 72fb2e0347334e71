"""Distributional thesaurus: co-occurrence counting, LMI weighting, neighbor lists.

Features are sentence-bounded token windows over non-stopword word tokens.
Word-word similarity is the overlap of the retained (pruned) feature sets,
which keeps ego-network edge weights on the same integer-like scale as the
thesaurus itself; cosine is reserved for disambiguation time.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import Sentence, is_word_token
from .vectors import FeatureVector


@dataclass
class CooccurrenceCounts:
    """Sparse (word, feature) counts with consistent marginals."""

    n_wf: dict[str, Counter] = field(default_factory=dict)
    n_w: Counter = field(default_factory=Counter)
    n_f: Counter = field(default_factory=Counter)
    N: int = 0

    def add(self, word: str, feature: str, count: int = 1) -> None:
        self.n_wf.setdefault(word, Counter())[feature] += count
        self.n_w[word] += count
        self.n_f[feature] += count
        self.N += count

    def merge(self, other: "CooccurrenceCounts") -> None:
        for word, row in other.n_wf.items():
            mine = self.n_wf.setdefault(word, Counter())
            mine.update(row)
        self.n_w.update(other.n_w)
        self.n_f.update(other.n_f)
        self.N += other.N


@dataclass
class Thesaurus:
    """Per word, a ranked list of (neighbor, similarity), no self-neighbors."""

    neighbors: dict[str, list[tuple[str, float]]] = field(default_factory=dict)

    def __contains__(self, word: str) -> bool:
        return word in self.neighbors

    def get(self, word: str) -> list[tuple[str, float]]:
        return self.neighbors.get(word, [])

    def words(self) -> list[str]:
        return sorted(self.neighbors)


def _eligible(sentence: Sentence) -> list[str]:
    return [t.norm for t in sentence.tokens if not t.is_stopword and is_word_token(t)]


def count_pairs(
    sentences: Iterable[Sentence], window: int
) -> tuple[CooccurrenceCounts, Counter]:
    """Raw windowed pair counts plus corpus frequency of eligible tokens.

    Mergeable across disjoint sentence shards: counts add, frequencies add.
    """
    counts = CooccurrenceCounts()
    freq: Counter = Counter()
    for sentence in sentences:
        norms = _eligible(sentence)
        freq.update(norms)
        n = len(norms)
        for i, w in enumerate(norms):
            lo = max(0, i - window)
            hi = min(n, i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    counts.add(w, norms[j])
    return counts, freq


def filter_word_axis(
    counts: CooccurrenceCounts, freq: Counter, min_word_freq: int
) -> CooccurrenceCounts:
    """Drop words below min_word_freq from the word axis; recompute marginals."""
    out = CooccurrenceCounts()
    for word in counts.n_wf:
        if freq[word] >= min_word_freq:
            for feature, c in counts.n_wf[word].items():
                out.add(word, feature, c)
    return out


def extract_cooccurrences(
    sentences: Iterable[Sentence], window: int = 3, min_word_freq: int = 5
) -> CooccurrenceCounts:
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    counts, freq = count_pairs(sentences, window)
    return filter_word_axis(counts, freq, min_word_freq)


def weight_lmi(counts: CooccurrenceCounts) -> dict[str, FeatureVector]:
    """LMI significance: n_wf * log2(n_wf * N / (n_w * n_f)); non-positive dropped."""
    N = counts.N
    vectors: dict[str, FeatureVector] = {}
    for word, row in counts.n_wf.items():
        nw = counts.n_w[word]
        entries = {}
        for feature, nwf in row.items():
            weight = nwf * math.log2((nwf * N) / (nw * counts.n_f[feature]))
            if weight > 0:
                entries[feature] = weight
        vectors[word] = FeatureVector(entries)
    return vectors


def prune_features(vectors: dict[str, FeatureVector], p: int = 100) -> dict[str, FeatureVector]:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return {word: vec.top(p) for word, vec in vectors.items()}


def build_thesaurus(pruned: dict[str, FeatureVector], n_max: int = 200) -> Thesaurus:
    """Top n_max neighbors per word by retained-feature-set overlap (>= 1)."""
    index: dict[str, list[str]] = defaultdict(list)
    for word in sorted(pruned):
        for feature in pruned[word]:
            index[feature].append(word)
    overlap: dict[str, Counter] = {word: Counter() for word in pruned}
    for feature, words in index.items():
        if len(words) < 2:
            continue
        for a in words:
            row = overlap[a]
            for b in words:
                if b != a:
                    row[b] += 1
    thesaurus = Thesaurus()
    for word in pruned:
        ranked = sorted(overlap[word].items(), key=lambda it: (-it[1], it[0]))[:n_max]
        if ranked:  # words with no overlapping neighbor carry no thesaurus entry
            thesaurus.neighbors[word] = [(nb, float(sim)) for nb, sim in ranked]
    return thesaurus
