"""Hypernym extraction via Hearst patterns and similarity-weighted sense labeling.

Six fixed patterns over token norms:
  1. H such as X (, X)* ((and|or) X)?
  2. such H as X (, X)* ((and|or) X)?
  3. X (, X)* (and|or) other H
  4. H including X (, X)* ((and|or) X)?
  5. H especially X (, X)* ((and|or) X)?
  6. X is a|an H

Noun phrases are maximal runs of consecutive non-stopword alphabetic tokens
with the last token as head; articles and determiners inside matches are
skipped. A plural head loses its trailing "s" only when the stripped form is
attested elsewhere in the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Sentence

_DETERMINERS = frozenset(
    "the a an this that these those my your his her its our their some any no each every all both".split()
)


@dataclass
class HypernymCounts:
    pairs: dict[tuple[str, str], int] = field(default_factory=dict)
    _index: dict[str, dict[str, int]] | None = field(
        default=None, repr=False, compare=False
    )

    def add(self, hyponym: str, hypernym: str, count: int = 1) -> None:
        if hyponym == hypernym:
            return
        key = (hyponym, hypernym)
        self.pairs[key] = self.pairs.get(key, 0) + count
        self._index = None

    def merge(self, other: "HypernymCounts") -> None:
        for (hypo, hyper), c in other.pairs.items():
            self.add(hypo, hyper, c)

    def freq(self, hyponym: str, hypernym: str) -> int:
        return self.pairs.get((hyponym, hypernym), 0)

    def hypernyms_of(self, hyponym: str) -> dict[str, int]:
        if self._index is None:
            index: dict[str, dict[str, int]] = {}
            for (hypo, hyper), c in self.pairs.items():
                index.setdefault(hypo, {})[hyper] = c
            self._index = index
        return self._index.get(hyponym, {})

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class HypernymLabels:
    """Ranked (hypernym, score) labels, score descending then lexicographic."""

    labels: list[tuple[str, float]] = field(default_factory=list)

    def words(self) -> list[str]:
        return [w for w, _ in self.labels]

    def top(self) -> str | None:
        return self.labels[0][0] if self.labels else None

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


class _SentenceScanner:
    """Pattern matcher over one sentence's token norms."""

    def __init__(self, sentence: Sentence):
        self.norms = [t.norm for t in sentence.tokens]
        self.np = [t.norm.isalpha() and not t.is_stopword for t in sentence.tokens]
        self.n = len(self.norms)

    def run_starting(self, i: int) -> tuple[int, int] | None:
        """Maximal NP run [start, end] beginning at i, or None."""
        if i < 0 or i >= self.n or not self.np[i]:
            return None
        j = i
        while j + 1 < self.n and self.np[j + 1]:
            j += 1
        return (i, j)

    def run_ending(self, i: int) -> tuple[int, int] | None:
        if i < 0 or i >= self.n or not self.np[i]:
            return None
        j = i
        while j - 1 >= 0 and self.np[j - 1]:
            j -= 1
        return (j, i)

    def skip_det(self, i: int) -> int:
        while i < self.n and self.norms[i] in _DETERMINERS:
            i += 1
        return i

    def skip_det_back(self, i: int) -> int:
        while i >= 0 and self.norms[i] in _DETERMINERS:
            i -= 1
        return i

    def list_forward(self, i: int) -> list[str]:
        """Heads of `X (, X)* ((and|or) X)?` starting at position i."""
        heads: list[str] = []
        run = self.run_starting(self.skip_det(i))
        if run is None:
            return heads
        heads.append(self.norms[run[1]])
        pos = run[1] + 1
        while pos < self.n:
            if self.norms[pos] == ",":
                run = self.run_starting(self.skip_det(pos + 1))
                if run is None:
                    break
                heads.append(self.norms[run[1]])
                pos = run[1] + 1
            elif self.norms[pos] in ("and", "or"):
                run = self.run_starting(self.skip_det(pos + 1))
                if run is None:
                    break
                heads.append(self.norms[run[1]])
                break
            else:
                break
        return heads

    def list_backward(self, i: int) -> list[str]:
        """Heads of `X (, X)*` ending at position i (used by the "other" pattern)."""
        heads: list[str] = []
        run = self.run_ending(self.skip_det_back(i))
        if run is None:
            return heads
        heads.append(self.norms[run[1]])
        pos = self.skip_det_back(run[0] - 1)
        while pos >= 0 and self.norms[pos] == ",":
            run = self.run_ending(self.skip_det_back(pos - 1))
            if run is None:
                break
            heads.append(self.norms[run[1]])
            pos = self.skip_det_back(run[0] - 1)
        return heads

    def matches(self) -> list[tuple[str, str]]:
        """(hyponym head, hypernym head) pairs from all pattern occurrences."""
        pairs: list[tuple[str, str]] = []
        norms, n = self.norms, self.n
        for i in range(n):
            tok = norms[i]
            if tok == "such":
                if i + 1 < n and norms[i + 1] == "as":
                    hyper = self.run_ending(i - 1)
                    if hyper is not None:
                        for x in self.list_forward(i + 2):
                            pairs.append((x, norms[hyper[1]]))
                else:
                    run = self.run_starting(self.skip_det(i + 1))
                    if run is not None and run[1] + 1 < n and norms[run[1] + 1] == "as":
                        hyper_head = norms[run[1]]
                        for x in self.list_forward(run[1] + 2):
                            pairs.append((x, hyper_head))
            elif tok == "other" and i >= 1 and norms[i - 1] in ("and", "or"):
                hyper = self.run_starting(self.skip_det(i + 1))
                if hyper is not None:
                    for x in self.list_backward(i - 2):
                        pairs.append((x, norms[hyper[1]]))
            elif tok in ("including", "especially"):
                hyper = self.run_ending(i - 1)
                if hyper is not None:
                    for x in self.list_forward(i + 1):
                        pairs.append((x, norms[hyper[1]]))
            elif tok == "is" and i + 1 < n and norms[i + 1] in ("a", "an"):
                hypo = self.run_ending(i - 1)
                hyper = self.run_starting(self.skip_det(i + 2))
                if hypo is not None and hyper is not None:
                    pairs.append((norms[hypo[1]], norms[hyper[1]]))
        return pairs


def singularize(word: str, vocab: frozenset[str] | set[str]) -> str:
    """Strip one trailing "s" when the stripped form is attested in the corpus."""
    if len(word) > 1 and word.endswith("s") and word[:-1] in vocab:
        return word[:-1]
    return word


def extract_hypernym_pairs(
    sentences: Iterable[Sentence], vocab: set[str] | frozenset[str] | None = None
) -> HypernymCounts:
    """Count pattern matches; vocab (for singularization attestation) defaults to
    the token norms of the given sentences and must cover the whole corpus when
    extraction runs over shards."""
    sentences = list(sentences)
    if vocab is None:
        vocab = {tok.norm for s in sentences for tok in s.tokens}
    counts = HypernymCounts()
    for sentence in sentences:
        for hypo, hyper in _SentenceScanner(sentence).matches():
            counts.add(singularize(hypo, vocab), singularize(hyper, vocab))
    return counts


def _score_labels(
    weighted_members: Iterable[tuple[str, float]], counts: HypernymCounts, k_hyper: int
) -> HypernymLabels:
    scores: dict[str, float] = {}
    for member, weight in sorted(weighted_members):
        for hyper, freq in sorted(counts.hypernyms_of(member).items()):
            scores[hyper] = scores.get(hyper, 0.0) + weight * freq
    ranked = sorted(
        ((h, s) for h, s in scores.items() if s > 0), key=lambda it: (-it[1], it[0])
    )
    return HypernymLabels(labels=ranked[:k_hyper])


def label_sense(members: Sequence[tuple[str, float]], counts: HypernymCounts, k_hyper: int = 3) -> HypernymLabels:
    """Similarity-weighted hypernym frequencies over the cluster members."""
    return _score_labels(members, counts, k_hyper)


def label_class(members: Iterable[str], counts: HypernymCounts, k_hyper: int = 3) -> HypernymLabels:
    """Uniform-weight labeling for super-sense member word sets."""
    return _score_labels(((m, 1.0) for m in set(members)), counts, k_hyper)
