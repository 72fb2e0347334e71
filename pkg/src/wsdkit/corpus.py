"""Corpus ingestion: sentence splitting, tokenization, target detection.

Text is NFC-normalized before any other processing, so token offsets always
index the normalized string. Tokens are word runs (internal hyphens and
apostrophes preserved) or single punctuation characters. Sentences end at
[.?!] followed by whitespace and an uppercase letter, or at end of line.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConfigError, CorpusError

_WORD_RE = re.compile(r"\w+(?:[-'’]\w+)*", re.UNICODE)
_TOKEN_RE = re.compile(r"\w+(?:[-'’]\w+)*|\S", re.UNICODE)
_TERMINALS = ".?!"


@dataclass(slots=True)
class Token:
    surface: str
    norm: str
    begin: int
    end: int
    is_stopword: bool
    is_target_candidate: bool = False


@dataclass(slots=True)
class Sentence:
    doc_id: str
    index: int
    tokens: list[Token]
    raw: str
    start: int = 0  # char offset of raw within the source text

    def norms(self) -> list[str]:
        return [t.norm for t in self.tokens]


@dataclass(slots=True)
class CorpusConfig:
    doc_mode: str = "file"  # "file": one document per file; "line": per line
    stopwords: frozenset[str] = field(default_factory=lambda: load_stopwords())

    def __post_init__(self):
        if self.doc_mode not in ("file", "line"):
            raise ConfigError(f"doc_mode must be 'file' or 'line', got {self.doc_mode!r}")


@lru_cache(maxsize=8)
def _load_stopword_file(path: str | None) -> frozenset[str]:
    if path is None:
        text = (
            resources.files("wsdkit").joinpath("data/stopwords_en.txt").read_text("utf-8")
        )
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Built-in English stopword list, or a one-token-per-line override file."""
    return _load_stopword_file(str(path) if path is not None else None)


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def tokenize(text: str, stopwords: frozenset[str] = frozenset()) -> list[Token]:
    """Split on whitespace and punctuation boundaries; punctuation chars stand alone."""
    text = normalize(text)
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        norm = surface.lower()
        tokens.append(
            Token(
                surface=surface,
                norm=norm,
                begin=m.start(),
                end=m.end(),
                is_stopword=norm in stopwords,
            )
        )
    return tokens


def is_word_token(token: Token) -> bool:
    """True for tokens that carry at least one word character (not bare punctuation)."""
    return bool(_WORD_RE.search(token.norm))


def split_sentence_spans(text: str) -> list[tuple[int, int]]:
    """Spans (begin, end) of sentences within already-normalized text, trimmed."""
    spans: list[tuple[int, int]] = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        if text[i] in _TERMINALS:
            # consume the whole terminal run, boundary decided after it
            j = i
            while j + 1 < n and text[j + 1] in _TERMINALS:
                j += 1
            k = j + 1
            boundary = False
            if k >= n:
                boundary = True
            else:
                # end-of-line: only spaces/tabs up to a newline
                k2 = k
                while k2 < n and text[k2] in " \t":
                    k2 += 1
                if k2 >= n or text[k2] == "\n":
                    boundary = True
                elif text[k].isspace():
                    # whitespace then an uppercase letter
                    k3 = k
                    while k3 < n and text[k3].isspace():
                        k3 += 1
                    if k3 < n and text[k3].isupper():
                        boundary = True
            if boundary:
                spans.append((start, j + 1))
                start = j + 1
                i = j + 1
                continue
            i = j + 1
            continue
        i += 1
    if start < n:
        spans.append((start, n))
    # trim whitespace, drop empty spans
    trimmed = []
    for b, e in spans:
        while b < e and text[b].isspace():
            b += 1
        while e > b and text[e - 1].isspace():
            e -= 1
        if b < e:
            trimmed.append((b, e))
    return trimmed


def sentences_from_text(
    text: str, doc_id: str, stopwords: frozenset[str], base_offset: int = 0
) -> list[Sentence]:
    text = normalize(text)
    out = []
    for idx, (b, e) in enumerate(split_sentence_spans(text)):
        raw = text[b:e]
        tokens = tokenize(raw, stopwords)
        if not tokens:
            continue
        out.append(
            Sentence(doc_id=doc_id, index=idx, tokens=tokens, raw=raw, start=base_offset + b)
        )
    return out


def _read_file(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(
            f"{path} is not valid UTF-8 at byte offset {exc.start}"
        ) from exc


def load_corpus(path: str | Path, config: CorpusConfig | None = None) -> Iterator[Sentence]:
    """Yield sentences from a UTF-8 text file or a directory of them, in document order."""
    config = config or CorpusConfig()
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus path does not exist: {path}")
    files = [path] if path.is_file() else sorted(p for p in path.iterdir() if p.is_file())
    for file in files:
        text = _read_file(file)
        if config.doc_mode == "line":
            for line_no, line in enumerate(text.splitlines(), start=1):
                doc_id = f"{file.name}:{line_no}"
                yield from sentences_from_text(line, doc_id, config.stopwords)
        else:
            yield from sentences_from_text(text, file.name, config.stopwords)


def detect_targets(sentence: Sentence, vocab: Iterable[str]) -> list[int]:
    """Indices of tokens that are in-vocabulary, non-stopword, and alphabetic."""
    vocab = vocab if isinstance(vocab, (set, frozenset)) else set(vocab)
    hits = []
    for i, tok in enumerate(sentence.tokens):
        if tok.norm in vocab and not tok.is_stopword and tok.norm.isalpha():
            tok.is_target_candidate = True
            hits.append(i)
    return hits
