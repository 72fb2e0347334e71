"""Weighted graphs, Chinese Whispers label propagation, per-word sense induction.

Chinese Whispers here is deterministic for a fixed (graph, seed): node visit
order is a seeded shuffle of the sorted node list, weight sums run in sorted
neighbor order, and argmax ties go to the smallest label id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .dt import Thesaurus
from .errors import UnknownWordError

Node = Hashable


@dataclass
class WeightedGraph:
    """Undirected weighted graph; no self-loops, weights > 0."""

    nodes: list[Node] = field(default_factory=list)
    adj: dict[Node, dict[Node, float]] = field(default_factory=dict)

    @classmethod
    def with_nodes(cls, nodes: Iterable[Node]) -> "WeightedGraph":
        g = cls()
        for node in nodes:
            g.add_node(node)
        return g

    def add_node(self, node: Node) -> None:
        if node not in self.adj:
            self.nodes.append(node)
            self.adj[node] = {}

    def add_edge_max(self, u: Node, v: Node, weight: float) -> None:
        """Insert or raise the undirected edge weight to max(current, weight)."""
        if u == v or weight <= 0:
            return
        self.add_node(u)
        self.add_node(v)
        if weight > self.adj[u].get(v, 0.0):
            self.adj[u][v] = weight
            self.adj[v][u] = weight

    def n_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def edges(self) -> list[tuple[Node, Node, float]]:
        out = []
        for u in self.adj:
            for v, w in self.adj[u].items():
                if u < v:
                    out.append((u, v, w))
        return sorted(out)


@dataclass
class Partition:
    assignment: dict[Node, int]
    clusters: dict[int, set[Node]]

    @classmethod
    def from_assignment(cls, assignment: dict[Node, int]) -> "Partition":
        clusters: dict[int, set[Node]] = {}
        for node, label in assignment.items():
            clusters.setdefault(label, set()).add(node)
        return cls(assignment=assignment, clusters=clusters)


@dataclass
class SenseCluster:
    word: str
    sense_id: int
    members: list[tuple[str, float]]  # sorted by weight desc, then word


def chinese_whispers(graph: WeightedGraph, seed: int = 42, max_iter: int = 20) -> Partition:
    """Label propagation: each node adopts the neighbor label with the largest
    total incident edge weight.

    Weight ties are broken by structural affinity (the tied label backed by
    neighbors sharing the most common neighbors with the node wins), then by
    smallest label id. Plain smallest-id tie-breaking lets a label hop across
    sparse cut edges during the first pass, when every neighbor still holds a
    unique label, and permanently merges well-separated clusters; common
    neighbors are almost always cluster-internal, which keeps that first
    adoption local. No randomness enters tie-breaking, so the outcome is a
    pure function of (graph, seed): the seed only drives the per-pass visit
    order shuffle.
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    nodes = sorted(graph.nodes)
    labels = {node: i for i, node in enumerate(nodes)}
    neighbor_sets = {node: set(graph.adj[node]) for node in nodes}
    rng = random.Random(seed)
    for _ in range(max_iter):
        order = nodes[:]
        rng.shuffle(order)
        changed = False
        for node in order:
            neighbors = graph.adj[node]
            if not neighbors:
                continue
            scores: dict[int, float] = {}
            for nb in sorted(neighbors):
                label = labels[nb]
                scores[label] = scores.get(label, 0.0) + neighbors[nb]
            best_score = max(scores.values())
            tied = [l for l, s in scores.items() if s == best_score]
            if len(tied) == 1:
                best = tied[0]
            else:
                tied_set = set(tied)
                affinity = {l: 0 for l in tied}
                own_neighbors = neighbor_sets[node]
                for nb in sorted(neighbors):
                    label = labels[nb]
                    if label in tied_set:
                        affinity[label] += len(own_neighbors & neighbor_sets[nb])
                best_affinity = max(affinity.values())
                best = min(l for l in tied if affinity[l] == best_affinity)
            if best != labels[node]:
                labels[node] = best
                changed = True
        if not changed:
            break
    return Partition.from_assignment(labels)


def build_ego_network(
    word: str, thesaurus: Thesaurus, n_ego: int = 200, n_inner: int = 50
) -> WeightedGraph:
    """Graph over the word's top n_ego neighbors; (u, v) is an edge iff v is in
    u's top n_inner thesaurus neighbors (or vice versa), weighted by similarity."""
    if word not in thesaurus:
        raise UnknownWordError(f"unknown word: {word!r}")
    nodes = [nb for nb, _ in thesaurus.get(word)[:n_ego]]
    node_set = set(nodes)
    graph = WeightedGraph.with_nodes(nodes)
    for u in nodes:
        for v, sim in thesaurus.get(u)[:n_inner]:
            if v in node_set and v != u:
                graph.add_edge_max(u, v, sim)
    return graph


def induce_senses(
    word: str,
    thesaurus: Thesaurus,
    n_ego: int = 200,
    n_inner: int = 50,
    max_iter: int = 20,
    min_cluster_size: int = 2,
    seed: int = 42,
) -> list[SenseCluster]:
    """Cluster the word's ego-network; clusters below min_cluster_size are dropped.

    Member weight is the thesaurus similarity between the word and the member.
    Sense ids follow decreasing cluster size, ties by smallest member word.
    """
    graph = build_ego_network(word, thesaurus, n_ego, n_inner)
    partition = chinese_whispers(graph, seed=seed, max_iter=max_iter)
    sim = {nb: s for nb, s in thesaurus.get(word)}
    clusters = [
        members for members in partition.clusters.values() if len(members) >= min_cluster_size
    ]
    clusters.sort(key=lambda members: (-len(members), min(members)))
    senses = []
    for sense_id, members in enumerate(clusters):
        ranked = sorted(((m, float(sim[m])) for m in members), key=lambda it: (-it[1], it[0]))
        senses.append(SenseCluster(word=word, sense_id=sense_id, members=ranked))
    return senses
