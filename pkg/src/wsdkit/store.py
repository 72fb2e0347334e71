"""Immutable file-based model store.

A model directory holds flat TSV files (UTF-8, LF) plus a `meta.tsv` manifest
and a terminal `COMPLETE` marker written last; a directory without the marker
is treated as invalid. Saving is a pure function of the model value: weights
use shortest round-trip decimal formatting and every file has a fixed sort
order, so identical models produce byte-identical directories.

File layout (full column documentation in docs/FORMATS.md):
  meta.tsv        key<TAB>value manifest (format_version, config.*, stats.*, count.*)
  dt.tsv          word<TAB>neighbor<TAB>similarity
  words.vec.tsv   word<TAB>feature:weight,...
  inventory.tsv   word<TAB>sense_id<TAB>member:weight,...
  hypernyms.tsv   word<TAB>sense_id<TAB>hyper:score,...
  senses.vec.tsv  word<TAB>sense_id<TAB>feature:weight,...
  examples.tsv    word<TAB>sense_id<TAB>confidence<TAB>sentence
  hearst.tsv      hyponym<TAB>hypernym<TAB>freq
  classes.tsv     class_id<TAB>word#sense,...<TAB>hyper:score,...
  classes.vec.tsv class_id<TAB>feature:weight,...
  COMPLETE        marker; written last
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .config import PipelineConfig
from .dt import Thesaurus
from .errors import ModelFormatError
from .hypernymy import HypernymCounts, HypernymLabels
from .model import WSDModel
from .senses import SemanticClass, SenseEntry
from .vectors import FeatureVector

FORMAT_VERSION = "1"
MARKER = "COMPLETE"
FILES = (
    "meta.tsv",
    "dt.tsv",
    "words.vec.tsv",
    "inventory.tsv",
    "hypernyms.tsv",
    "senses.vec.tsv",
    "examples.tsv",
    "hearst.tsv",
    "classes.tsv",
    "classes.vec.tsv",
)
_NORM_TOLERANCE = 1e-6


@dataclass
class ModelDir:
    path: Path
    manifest: dict[str, str]


def fmt_float(x: float) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


def _fmt_pairs(items: Iterable[tuple[str, float]]) -> str:
    return ",".join(f"{k}:{fmt_float(v)}" for k, v in items)


def _vec_pairs(vec: FeatureVector) -> str:
    return _fmt_pairs(vec.sorted_by_weight())


def _sanitize(text: str) -> str:
    return text.replace("\t", " ").replace("\r", " ").replace("\n", " ")


def _manifest_items(model: WSDModel) -> list[tuple[str, str]]:
    items = [("format_version", FORMAT_VERSION)]
    items += [(f"config.{k}", v) for k, v in model.config.to_items()]
    items += [(f"stats.{k}", str(v)) for k, v in sorted(model.stats.items())]
    counts = model.counts()
    items += [(f"count.{k}", str(counts[k])) for k in ("words", "senses", "classes")]
    return items


def save_model(model: WSDModel, path: str | Path) -> ModelDir:
    """Write the complete model directory; refuses a non-empty target."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    if any(path.iterdir()):
        raise ModelFormatError(f"refusing to overwrite non-empty directory: {path}")

    def write(name: str, lines: Iterable[str]) -> None:
        body = "".join(f"{line}\n" for line in lines)
        (path / name).write_bytes(body.encode("utf-8"))

    manifest = _manifest_items(model)
    write("meta.tsv", (f"{k}\t{v}" for k, v in manifest))
    write(
        "dt.tsv",
        (
            f"{word}\t{nb}\t{fmt_float(sim)}"
            for word in sorted(model.thesaurus.neighbors)
            for nb, sim in model.thesaurus.neighbors[word]
        ),
    )
    write(
        "words.vec.tsv",
        (f"{word}\t{_vec_pairs(model.word_vecs[word])}" for word in sorted(model.word_vecs)),
    )
    write(
        "inventory.tsv",
        (
            f"{word}\t{e.sense_id}\t{_fmt_pairs(e.members)}"
            for word in sorted(model.senses)
            for e in model.senses[word]
        ),
    )
    write(
        "hypernyms.tsv",
        (
            f"{word}\t{e.sense_id}\t{_fmt_pairs(e.hypernyms.labels)}"
            for word in sorted(model.senses)
            for e in model.senses[word]
        ),
    )
    write(
        "senses.vec.tsv",
        (
            f"{word}\t{e.sense_id}\t{_vec_pairs(e.context_vec)}"
            for word in sorted(model.senses)
            for e in model.senses[word]
        ),
    )
    write(
        "examples.tsv",
        (
            f"{word}\t{e.sense_id}\t{fmt_float(conf)}\t{_sanitize(text)}"
            for word in sorted(model.senses)
            for e in model.senses[word]
            for text, conf in e.examples
        ),
    )
    write(
        "hearst.tsv",
        (
            f"{hypo}\t{hyper}\t{freq}"
            for (hypo, hyper), freq in sorted(model.hearst.pairs.items())
        ),
    )
    write(
        "classes.tsv",
        (
            "\t".join(
                (
                    str(c.class_id),
                    ",".join(f"{w}#{sid}" for w, sid in c.member_senses),
                    _fmt_pairs(c.hypernyms.labels),
                )
            )
            for c in model.classes
        ),
    )
    write(
        "classes.vec.tsv",
        (f"{c.class_id}\t{_vec_pairs(c.context_vec)}" for c in model.classes),
    )
    (path / MARKER).write_bytes(b"")
    return ModelDir(path=path, manifest=dict(manifest))


def _read_lines(path: Path, name: str) -> list[str]:
    file = path / name
    if not file.exists():
        raise ModelFormatError(f"missing model file: {name}")
    data = file.read_bytes()
    if b"\r" in data:
        raise ModelFormatError(f"{name}: CR line endings rejected (store is LF-only)")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{name}: invalid UTF-8 at byte {exc.start}") from exc
    return text.splitlines()


def _parse_float(token: str, ctx: str) -> float:
    try:
        return float(token)
    except ValueError as exc:
        raise ModelFormatError(f"{ctx}: bad weight token {token!r}") from exc


def _parse_int(token: str, ctx: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ModelFormatError(f"{ctx}: bad integer {token!r}") from exc


def _parse_pairs(text: str, ctx: str) -> list[tuple[str, float]]:
    if not text:
        return []
    pairs = []
    for token in text.split(","):
        key, sep, value = token.rpartition(":")
        if not sep or not key:
            raise ModelFormatError(f"{ctx}: bad pair token {token!r}")
        pairs.append((key, _parse_float(value, ctx)))
    return pairs


def _split(line: str, n: int, ctx: str) -> list[str]:
    cols = line.split("\t")
    if len(cols) != n:
        raise ModelFormatError(f"{ctx}: expected {n} columns, got {len(cols)}")
    return cols


def load_manifest(path: str | Path) -> dict[str, str]:
    path = Path(path)
    manifest = {}
    for i, line in enumerate(_read_lines(path, "meta.tsv"), start=1):
        key, value = _split(line, 2, f"meta.tsv:{i}")
        manifest[key] = value
    return manifest


def _check_norm(vec: FeatureVector, ctx: str) -> None:
    if vec and abs(vec.norm2 - 1.0) > _NORM_TOLERANCE:
        raise ModelFormatError(f"{ctx}: stored vector norm {vec.norm2!r} is not unit")


def load_model(path: str | Path) -> WSDModel:
    """Materialize a model directory; validates marker, version, and counts."""
    path = Path(path)
    if not path.is_dir():
        raise ModelFormatError(f"not a model directory: {path}")
    if not (path / MARKER).exists():
        raise ModelFormatError(f"incomplete model (no {MARKER} marker): {path}")

    manifest = load_manifest(path)
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format_version {version!r} (supported: {FORMAT_VERSION})"
        )
    config = PipelineConfig.from_mapping(
        {k[len("config.") :]: v for k, v in manifest.items() if k.startswith("config.")}
    )
    stats = {
        k[len("stats.") :]: _parse_int(v, "meta.tsv")
        for k, v in manifest.items()
        if k.startswith("stats.")
    }

    thesaurus = Thesaurus()
    for i, line in enumerate(_read_lines(path, "dt.tsv"), start=1):
        word, nb, sim = _split(line, 3, f"dt.tsv:{i}")
        thesaurus.neighbors.setdefault(word, []).append(
            (nb, _parse_float(sim, f"dt.tsv:{i}"))
        )

    word_vecs: dict[str, FeatureVector] = {}
    for i, line in enumerate(_read_lines(path, "words.vec.tsv"), start=1):
        word, pairs = _split(line, 2, f"words.vec.tsv:{i}")
        word_vecs[word] = FeatureVector(dict(_parse_pairs(pairs, f"words.vec.tsv:{i}")))

    senses: dict[str, list[SenseEntry]] = {}
    for i, line in enumerate(_read_lines(path, "inventory.tsv"), start=1):
        ctx = f"inventory.tsv:{i}"
        word, sid, members = _split(line, 3, ctx)
        member_pairs = _parse_pairs(members, ctx)
        if not member_pairs:
            raise ModelFormatError(f"{ctx}: sense with no members")
        senses.setdefault(word, []).append(
            SenseEntry(
                word=word,
                sense_id=_parse_int(sid, ctx),
                members=member_pairs,
                cluster_vec=FeatureVector(dict(member_pairs)),
            )
        )

    def _sense(word: str, sid: int, ctx: str) -> SenseEntry:
        for entry in senses.get(word, []):
            if entry.sense_id == sid:
                return entry
        raise ModelFormatError(f"{ctx}: unknown sense {word}#{sid}")

    n_hyper_rows = 0
    for i, line in enumerate(_read_lines(path, "hypernyms.tsv"), start=1):
        ctx = f"hypernyms.tsv:{i}"
        word, sid, labels = _split(line, 3, ctx)
        entry = _sense(word, _parse_int(sid, ctx), ctx)
        entry.hypernyms = HypernymLabels(labels=_parse_pairs(labels, ctx))
        n_hyper_rows += 1

    n_vec_rows = 0
    for i, line in enumerate(_read_lines(path, "senses.vec.tsv"), start=1):
        ctx = f"senses.vec.tsv:{i}"
        word, sid, pairs = _split(line, 3, ctx)
        entry = _sense(word, _parse_int(sid, ctx), ctx)
        entry.context_vec = FeatureVector(dict(_parse_pairs(pairs, ctx)))
        _check_norm(entry.context_vec, ctx)
        n_vec_rows += 1

    for i, line in enumerate(_read_lines(path, "examples.tsv"), start=1):
        ctx = f"examples.tsv:{i}"
        word, sid, conf, text = _split(line, 4, ctx)
        _sense(word, _parse_int(sid, ctx), ctx).examples.append(
            (text, _parse_float(conf, ctx))
        )

    hearst = HypernymCounts()
    for i, line in enumerate(_read_lines(path, "hearst.tsv"), start=1):
        ctx = f"hearst.tsv:{i}"
        hypo, hyper, freq = _split(line, 3, ctx)
        hearst.add(hypo, hyper, _parse_int(freq, ctx))

    classes: list[SemanticClass] = []
    for i, line in enumerate(_read_lines(path, "classes.tsv"), start=1):
        ctx = f"classes.tsv:{i}"
        cid, members, labels = _split(line, 3, ctx)
        member_senses = []
        for token in members.split(",") if members else []:
            word, sep, sid = token.rpartition("#")
            if not sep:
                raise ModelFormatError(f"{ctx}: bad sense ref {token!r}")
            member_senses.append((word, _parse_int(sid, ctx)))
            _sense(word, member_senses[-1][1], ctx)  # referential integrity
        words = sorted({w for w, _ in member_senses})
        classes.append(
            SemanticClass(
                class_id=_parse_int(cid, ctx),
                member_senses=member_senses,
                member_words=words,
                hypernyms=HypernymLabels(labels=_parse_pairs(labels, ctx)),
                cluster_vec=FeatureVector({w: 1.0 for w in words}),
            )
        )

    for i, line in enumerate(_read_lines(path, "classes.vec.tsv"), start=1):
        ctx = f"classes.vec.tsv:{i}"
        cid, pairs = _split(line, 2, ctx)
        class_id = _parse_int(cid, ctx)
        matches = [c for c in classes if c.class_id == class_id]
        if not matches:
            raise ModelFormatError(f"{ctx}: unknown class {class_id}")
        matches[0].context_vec = FeatureVector(dict(_parse_pairs(pairs, ctx)))
        _check_norm(matches[0].context_vec, ctx)

    model = WSDModel(
        config=config,
        stats=stats,
        word_vecs=word_vecs,
        thesaurus=thesaurus,
        senses=senses,
        classes=classes,
        hearst=hearst,
    )
    counts = model.counts()
    for key in ("words", "senses", "classes"):
        declared = _parse_int(manifest.get(f"count.{key}", "-1"), "meta.tsv")
        if declared != counts[key]:
            raise ModelFormatError(
                f"count mismatch: manifest count.{key}={declared} but files hold {counts[key]}"
            )
    if n_hyper_rows != counts["senses"]:
        raise ModelFormatError(
            f"count mismatch: hypernyms.tsv has {n_hyper_rows} rows for {counts['senses']} senses"
        )
    if n_vec_rows != counts["senses"]:
        raise ModelFormatError(
            f"count mismatch: senses.vec.tsv has {n_vec_rows} rows for {counts['senses']} senses"
        )
    return model


def lookup(model: WSDModel, key: str | int):
    """Keyed retrieval: a word's senses (str) or a semantic class (int)."""
    if isinstance(key, int):
        return model.lookup_class(key)
    return model.lookup_word(key)
