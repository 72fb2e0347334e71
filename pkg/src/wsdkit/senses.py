"""Sense and super-sense representations.

Each induced sense carries two sparse vectors: cluster_vec (member words
weighted by similarity) and context_vec (similarity-weighted sum of the
members' word vectors, capped and L2-normalized). Senses are linked into a
global graph by disambiguating each member against the member's own senses,
and Chinese Whispers over that graph yields semantic classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cluster import SenseCluster, WeightedGraph, chinese_whispers
from .hypernymy import HypernymCounts, HypernymLabels, label_class
from .vectors import FeatureVector

SenseRef = tuple[str, int]  # (word, sense_id)


@dataclass
class SenseEntry:
    word: str
    sense_id: int
    members: list[tuple[str, float]]
    hypernyms: HypernymLabels = field(default_factory=HypernymLabels)
    cluster_vec: FeatureVector = field(default_factory=FeatureVector)
    context_vec: FeatureVector = field(default_factory=FeatureVector)
    examples: list[tuple[str, float]] = field(default_factory=list)

    @property
    def ref(self) -> SenseRef:
        return (self.word, self.sense_id)

    def member_words(self) -> set[str]:
        return {m for m, _ in self.members}


@dataclass
class SemanticClass:
    class_id: int
    member_senses: list[SenseRef]
    member_words: list[str]  # sorted, deduplicated
    hypernyms: HypernymLabels = field(default_factory=HypernymLabels)
    cluster_vec: FeatureVector = field(default_factory=FeatureVector)
    context_vec: FeatureVector = field(default_factory=FeatureVector)


def cluster_vector(cluster: SenseCluster) -> FeatureVector:
    return FeatureVector(dict(cluster.members))


def aggregate_context_vec(
    cluster: SenseCluster,
    word_vecs: dict[str, FeatureVector],
    vec_cap: int = 10000,
) -> FeatureVector:
    """Similarity-weighted sum of member word vectors, top vec_cap, unit norm.

    Members without a word vector are skipped; if none has one the result is
    the zero vector and callers fall back to cluster_vec at prediction time.
    """
    acc: dict[str, float] = {}
    for member, weight in cluster.members:
        vec = word_vecs.get(member)
        if vec is None:
            continue
        for feature, w in sorted(vec.items()):
            acc[feature] = acc.get(feature, 0.0) + weight * w
    return FeatureVector(acc).top(vec_cap).unit()


def build_sense_entry(
    cluster: SenseCluster,
    word_vecs: dict[str, FeatureVector],
    hearst: HypernymCounts,
    k_hyper: int = 3,
    vec_cap: int = 10000,
) -> SenseEntry:
    from .hypernymy import label_sense

    return SenseEntry(
        word=cluster.word,
        sense_id=cluster.sense_id,
        members=list(cluster.members),
        hypernyms=label_sense(cluster.members, hearst, k_hyper),
        cluster_vec=cluster_vector(cluster),
        context_vec=aggregate_context_vec(cluster, word_vecs, vec_cap),
    )


def build_sense_graph(senses: dict[str, list[SenseEntry]]) -> WeightedGraph:
    """Graph over all (word, sense_id) nodes.

    For each sense s of w and each member (u, weight): pick the sense j of u
    whose member set (plus u itself) overlaps (members(s) + w) the most, ties
    to the smallest j, and connect s to u#j with that member weight. Parallel
    edges keep the maximum weight. Members without senses contribute nothing.
    """
    nodes: list[SenseRef] = [
        (word, entry.sense_id) for word in sorted(senses) for entry in senses[word]
    ]
    graph = WeightedGraph.with_nodes(nodes)
    closures: dict[SenseRef, set[str]] = {}
    for word in senses:
        for entry in senses[word]:
            closures[entry.ref] = entry.member_words() | {word}
    for word in sorted(senses):
        for entry in senses[word]:
            own = closures[entry.ref]
            for member, weight in entry.members:
                candidates = senses.get(member)
                if not candidates:
                    continue
                best_j, best_overlap = None, -1
                for cand in candidates:
                    overlap = len(own & closures[cand.ref])
                    if overlap > best_overlap:
                        best_j, best_overlap = cand.sense_id, overlap
                graph.add_edge_max(entry.ref, (member, best_j), weight)
    return graph


def build_semantic_classes(
    sense_graph: WeightedGraph,
    senses: dict[str, list[SenseEntry]],
    hearst: HypernymCounts,
    word_vecs: dict[str, FeatureVector],
    seed: int = 42,
    max_iter: int = 20,
    min_class_size: int = 2,
    k_hyper: int = 3,
    vec_cap: int = 10000,
) -> list[SemanticClass]:
    """Globally cluster the sense graph; small clusters are dropped.

    Class ids follow decreasing size (ties by smallest member sense). The
    class context vector is the unweighted mean of member word vectors,
    capped and L2-normalized; the cluster vector gives weight 1 per word.
    """
    partition = chinese_whispers(sense_graph, seed=seed, max_iter=max_iter)
    groups = [
        sorted(members)
        for members in partition.clusters.values()
        if len(members) >= min_class_size
    ]
    groups.sort(key=lambda members: (-len(members), members[0]))
    classes = []
    for class_id, member_senses in enumerate(groups):
        words = sorted({word for word, _ in member_senses})
        acc: dict[str, float] = {}
        n_vecs = 0
        for word in words:
            vec = word_vecs.get(word)
            if vec is None:
                continue
            n_vecs += 1
            for feature, w in sorted(vec.items()):
                acc[feature] = acc.get(feature, 0.0) + w
        if n_vecs:
            acc = {f: w / n_vecs for f, w in acc.items()}
        classes.append(
            SemanticClass(
                class_id=class_id,
                member_senses=member_senses,
                member_words=words,
                hypernyms=label_class(words, hearst, k_hyper),
                cluster_vec=FeatureVector({w: 1.0 for w in words}),
                context_vec=FeatureVector(acc).top(vec_cap).unit(),
            )
        )
    return classes
