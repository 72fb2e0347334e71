"""Full induction pipeline: raw text in, disambiguation model out.

Stage order: corpus -> thesaurus -> per-word sense induction -> Hearst
extraction and labeling -> sense vectors -> sense graph -> semantic classes
-> usage examples. Per-word and per-sentence stages can fan out over a
thread pool; results are re-ordered deterministically after collection, so
the produced model is identical for any jobs value.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence, TypeVar

from . import cluster, dt, hypernymy, senses, wsd
from .config import PipelineConfig
from .corpus import CorpusConfig, Sentence, load_corpus, load_stopwords
from .errors import PipelineError, WsdkitError
from .model import WSDModel

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class StageReport:
    name: str
    seconds: float
    counts: dict[str, int] = field(default_factory=dict)

    def format(self) -> str:
        details = " ".join(f"{k}={v}" for k, v in self.counts.items())
        return f"[{self.name}] {self.seconds:.2f}s {details}".rstrip()


def parallel_map(
    fn: Callable[[T], R], items: Sequence[T], jobs: int = 1
) -> list[R]:
    """Order-preserving map, fanned out over threads when jobs > 1."""
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _chunks(items: Sequence[T], n: int) -> list[Sequence[T]]:
    size = max(1, (len(items) + n - 1) // n)
    return [items[i : i + size] for i in range(0, len(items), size)]


def build_model(
    sentences: Iterable[Sentence],
    config: PipelineConfig | None = None,
    jobs: int = 1,
    on_stage: Callable[[StageReport], None] | None = None,
) -> WSDModel:
    """Run every induction stage over the given sentences."""
    config = config or PipelineConfig()

    @contextmanager
    def stage(name: str):
        start = time.perf_counter()
        counts: dict[str, int] = {}
        try:
            yield counts
        except PipelineError:
            raise
        except (WsdkitError, OSError) as exc:
            raise PipelineError(f"{name} stage failed: {exc}") from exc
        report = StageReport(name=name, seconds=time.perf_counter() - start, counts=counts)
        if on_stage:
            on_stage(report)

    with stage("corpus") as counts_out:
        sentence_list = list(sentences)
        if not sentence_list:
            raise PipelineError("corpus stage failed: no sentences in input")
        n_tokens = sum(len(s.tokens) for s in sentence_list)
        counts_out.update(sentences=len(sentence_list), tokens=n_tokens)

    with stage("thesaurus") as counts_out:
        counts = dt.CooccurrenceCounts()
        partials = parallel_map(
            lambda shard: dt.count_pairs(shard, config.window),
            _chunks(sentence_list, jobs if jobs > 1 else 1),
            jobs,
        )
        freq = Counter()
        for part_counts, part_freq in partials:
            counts.merge(part_counts)
            freq.update(part_freq)
        counts = dt.filter_word_axis(counts, freq, config.min_word_freq)
        word_vecs = dt.prune_features(dt.weight_lmi(counts), config.p)
        thesaurus = dt.build_thesaurus(word_vecs, config.n_max)
        counts_out.update(words=len(word_vecs), pairs=counts.N)

    with stage("senses") as counts_out:
        words = sorted(thesaurus.neighbors)
        clusters_per_word = parallel_map(
            lambda w: cluster.induce_senses(
                w,
                thesaurus,
                n_ego=config.n_ego,
                n_inner=config.n_inner,
                max_iter=config.max_iter,
                min_cluster_size=config.min_cluster_size,
                seed=config.seed,
            ),
            words,
            jobs,
        )
        word_clusters = {w: cs for w, cs in zip(words, clusters_per_word) if cs}
        counts_out.update(
            words=len(word_clusters), senses=sum(len(c) for c in word_clusters.values())
        )

    with stage("hearst") as counts_out:
        corpus_vocab = frozenset(tok.norm for s in sentence_list for tok in s.tokens)
        shards = parallel_map(
            lambda shard: hypernymy.extract_hypernym_pairs(shard, corpus_vocab),
            _chunks(sentence_list, jobs if jobs > 1 else 1),
            jobs,
        )
        hearst = hypernymy.HypernymCounts()
        for shard in shards:
            hearst.merge(shard)
        counts_out.update(pairs=len(hearst))

    with stage("vectors") as counts_out:
        sense_entries: dict[str, list[senses.SenseEntry]] = {}
        entry_lists = parallel_map(
            lambda w: [
                senses.build_sense_entry(
                    c, word_vecs, hearst, k_hyper=config.k_hyper, vec_cap=config.vec_cap
                )
                for c in word_clusters[w]
            ],
            sorted(word_clusters),
            jobs,
        )
        for w, entries in zip(sorted(word_clusters), entry_lists):
            sense_entries[w] = entries
        counts_out.update(senses=sum(len(v) for v in sense_entries.values()))

    with stage("sense-graph") as counts_out:
        sense_graph = senses.build_sense_graph(sense_entries)
        counts_out.update(nodes=len(sense_graph.nodes), edges=sense_graph.n_edges())

    with stage("classes") as counts_out:
        classes = senses.build_semantic_classes(
            sense_graph,
            sense_entries,
            hearst,
            word_vecs,
            seed=config.seed,
            max_iter=config.max_iter,
            min_class_size=config.min_class_size,
            k_hyper=config.k_hyper,
            vec_cap=config.vec_cap,
        )
        counts_out.update(classes=len(classes))

    model = WSDModel(
        config=config,
        stats={
            "n_documents": len({s.doc_id for s in sentence_list}),
            "n_sentences": len(sentence_list),
            "n_tokens": n_tokens,
        },
        word_vecs=word_vecs,
        thesaurus=thesaurus,
        senses=sense_entries,
        classes=classes,
        hearst=hearst,
    )

    with stage("examples") as counts_out:
        by_word: dict[str, list[Sentence]] = {}
        vocab = model.vocab
        for sentence in sentence_list:
            seen: set[str] = set()
            for tok in sentence.tokens:
                if tok.norm in vocab and tok.norm not in seen:
                    seen.add(tok.norm)
                    by_word.setdefault(tok.norm, []).append(sentence)
        example_words = sorted(by_word)
        per_word = parallel_map(
            lambda w: wsd.extract_usage_examples(w, by_word[w], model, k=config.k_examples),
            example_words,
            jobs,
        )
        n_examples = 0
        for w, buckets in zip(example_words, per_word):
            for entry in model.senses[w]:
                entry.examples = buckets.get(entry.sense_id, [])
                n_examples += len(entry.examples)
        counts_out.update(examples=n_examples)

    return model


def build_from_path(
    corpus_path: str | Path,
    config: PipelineConfig | None = None,
    jobs: int = 1,
    stopword_path: str | Path | None = None,
    on_stage: Callable[[StageReport], None] | None = None,
) -> WSDModel:
    config = config or PipelineConfig()
    corpus_config = CorpusConfig(
        doc_mode=config.doc_mode, stopwords=load_stopwords(stopword_path)
    )
    return build_model(load_corpus(corpus_path, corpus_config), config, jobs, on_stage)
