"""The fully materialized in-memory model: everything disambiguation needs."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import PipelineConfig
from .dt import Thesaurus
from .errors import NotFoundError
from .hypernymy import HypernymCounts
from .senses import SemanticClass, SenseEntry
from .vectors import FeatureVector

MODEL_KINDS = ("words-cluster", "words-context", "super-cluster", "super-context")
INVENTORIES = ("words", "super")
FEATURE_MODES = ("cluster", "context")


def split_model_kind(model_id: str) -> tuple[str, str]:
    """'words-context' -> ('words', 'context'); raises NotFoundError otherwise."""
    if model_id not in MODEL_KINDS:
        raise NotFoundError(f"unknown model id: {model_id!r}")
    inventory, _, features = model_id.partition("-")
    return inventory, features


@dataclass
class WSDModel:
    config: PipelineConfig = field(default_factory=PipelineConfig)
    stats: dict[str, int] = field(default_factory=dict)
    word_vecs: dict[str, FeatureVector] = field(default_factory=dict)
    thesaurus: Thesaurus = field(default_factory=Thesaurus)
    senses: dict[str, list[SenseEntry]] = field(default_factory=dict)
    classes: list[SemanticClass] = field(default_factory=list)
    hearst: HypernymCounts = field(default_factory=HypernymCounts)

    @property
    def vocab(self) -> set[str]:
        """Words having induced senses."""
        return set(self.senses)

    def counts(self) -> dict[str, int]:
        return {
            "words": len(self.senses),
            "senses": sum(len(v) for v in self.senses.values()),
            "classes": len(self.classes),
        }

    def lookup_word(self, word: str) -> list[SenseEntry]:
        entries = self.senses.get(word.lower())
        if not entries:
            raise NotFoundError(f"word not found: {word!r}")
        return entries

    def lookup_sense(self, word: str, sense_id: int) -> SenseEntry:
        for entry in self.lookup_word(word):
            if entry.sense_id == sense_id:
                return entry
        raise NotFoundError(f"sense not found: {word}#{sense_id}")

    def lookup_class(self, class_id: int) -> SemanticClass:
        if 0 <= class_id < len(self.classes):
            return self.classes[class_id]
        raise NotFoundError(f"class not found: {class_id}")

    def classes_with_word(self, word: str) -> list[SemanticClass]:
        word = word.lower()
        return [c for c in self.classes if word in c.member_words]
