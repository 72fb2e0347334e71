"""Pipeline configuration, serialized verbatim into the model manifest."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .validation import check_choice, check_non_negative_int, check_positive_int

_INT_FIELDS = (
    "window",
    "min_word_freq",
    "p",
    "n_max",
    "n_ego",
    "n_inner",
    "max_iter",
    "min_cluster_size",
    "min_class_size",
    "k_hyper",
    "vec_cap",
    "k_examples",
)


@dataclass
class PipelineConfig:
    window: int = 3
    min_word_freq: int = 5
    p: int = 100  # features kept per word vector
    n_max: int = 200  # thesaurus neighbors per word
    n_ego: int = 200
    n_inner: int = 50
    max_iter: int = 20
    min_cluster_size: int = 2
    min_class_size: int = 2
    k_hyper: int = 3
    vec_cap: int = 10000
    k_examples: int = 5
    seed: int = 42
    doc_mode: str = "file"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for name in _INT_FIELDS:
            check_positive_int(name, getattr(self, name))
        check_non_negative_int("seed", self.seed)
        check_choice("doc_mode", self.doc_mode, ("file", "line"))

    def to_items(self) -> list[tuple[str, str]]:
        return [(f.name, str(getattr(self, f.name))) for f in fields(self)]

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "PipelineConfig":
        kwargs = {}
        for f in fields(cls):
            if f.name not in mapping:
                continue
            raw = mapping[f.name]
            if f.name == "doc_mode":
                kwargs[f.name] = raw
            else:
                try:
                    kwargs[f.name] = int(raw)
                except ValueError as exc:
                    raise ConfigError(f"config value {f.name}={raw!r} is not an integer") from exc
        unknown = set(mapping) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        """Read `key<TAB>value` (or `key=value`) lines; blank and # lines skipped."""
        mapping = {}
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
            mapping[key.strip()] = value.strip()
        return cls.from_mapping(mapping)
