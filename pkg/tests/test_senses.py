import random

from wsdkit.cluster import SenseCluster
from wsdkit.hypernymy import HypernymCounts
from wsdkit.senses import (
    SenseEntry,
    aggregate_context_vec,
    build_semantic_classes,
    build_sense_graph,
)
from wsdkit.vectors import FeatureVector

from oracles import brute_force_aggregate, brute_force_sense_edges


def _cluster(word, members, sense_id=0):
    return SenseCluster(word=word, sense_id=sense_id, members=members)


def _entry(word, sense_id, members):
    return SenseEntry(
        word=word,
        sense_id=sense_id,
        members=members,
        cluster_vec=FeatureVector(dict(members)),
    )


class TestAggregateContextVec:
    def test_single_member_normalized(self):
        vec = aggregate_context_vec(
            _cluster("w", [("a", 1.0)]), {"a": FeatureVector({"x": 3.0, "y": 4.0})}, 100
        )
        assert abs(vec.get("x") - 0.6) < 1e-12 and abs(vec.get("y") - 0.8) < 1e-12

    def test_disjoint_union_renormalized(self):
        vec = aggregate_context_vec(
            _cluster("w", [("a", 1.0), ("b", 1.0)]),
            {"a": FeatureVector({"x": 1.0}), "b": FeatureVector({"y": 1.0})},
            100,
        )
        assert set(vec.entries) == {"x", "y"}
        assert abs(vec.norm2 - 1.0) < 1e-9

    def test_missing_members_skipped(self):
        vec = aggregate_context_vec(
            _cluster("w", [("a", 1.0), ("ghost", 9.0)]),
            {"a": FeatureVector({"x": 2.0})},
            100,
        )
        assert set(vec.entries) == {"x"}

    def test_all_missing_zero_vector(self):
        vec = aggregate_context_vec(_cluster("w", [("ghost", 1.0)]), {}, 100)
        assert len(vec) == 0 and vec.norm2 == 0.0

    def test_vec_cap_applied(self):
        vecs = {"a": FeatureVector({f"f{i}": float(i + 1) for i in range(20)})}
        vec = aggregate_context_vec(_cluster("w", [("a", 1.0)]), vecs, 5)
        assert len(vec) == 5

    def test_brute_force_random(self):
        rng = random.Random(41)
        feats = [f"f{i}" for i in range(25)]
        word_vecs = {
            f"m{i}": FeatureVector(
                {f: rng.uniform(0.1, 3.0) for f in rng.sample(feats, rng.randint(1, 10))}
            )
            for i in range(10)
        }
        members = [(f"m{i}", rng.uniform(0.2, 2.0)) for i in range(10)]
        got = aggregate_context_vec(_cluster("w", members), word_vecs, 1000)
        ref = brute_force_aggregate(
            members, {w: dict(v.entries) for w, v in word_vecs.items()}, 1000
        )
        assert set(got.entries) == set(ref)
        for f in ref:
            assert abs(got.get(f) - ref[f]) < 1e-9


class TestBuildSenseGraph:
    def test_member_disambiguated_by_overlap(self):
        senses = {
            "jaguar": [_entry("jaguar", 0, [("leopard", 0.9)])],
            "leopard": [
                _entry("leopard", 0, [("jaguar", 0.8), ("lion", 0.5)]),
                _entry("leopard", 1, [("print", 0.7), ("fur", 0.4)]),
            ],
        }
        graph = build_sense_graph(senses)
        assert (("jaguar", 0), ("leopard", 0), 0.9) in graph.edges()
        assert all(
            not (a == ("jaguar", 0) and b == ("leopard", 1)) for a, b, _ in graph.edges()
        )

    def test_member_without_senses_skipped(self):
        senses = {"w": [_entry("w", 0, [("nosense", 1.0)])]}
        graph = build_sense_graph(senses)
        assert graph.n_edges() == 0 and graph.nodes == [("w", 0)]

    def test_nodes_equal_inventory_no_self_edges(self):
        senses = {
            "a": [_entry("a", 0, [("b", 1.0)]), _entry("a", 1, [("c", 1.0)])],
            "b": [_entry("b", 0, [("a", 1.0)])],
            "c": [_entry("c", 0, [("a", 0.5)])],
        }
        graph = build_sense_graph(senses)
        assert sorted(graph.nodes) == [("a", 0), ("a", 1), ("b", 0), ("c", 0)]
        for u, v, _ in graph.edges():
            assert u != v

    def test_random_inventory_vs_brute_force(self):
        rng = random.Random(53)
        words = [f"w{i}" for i in range(12)]
        senses = {}
        for w in words:
            entries = []
            for sid in range(rng.randint(1, 3)):
                others = [o for o in words if o != w]
                members = [
                    (m, round(rng.uniform(0.1, 2.0), 3))
                    for m in rng.sample(others, rng.randint(1, 5))
                ]
                entries.append(_entry(w, sid, members))
            senses[w] = entries
        graph = build_sense_graph(senses)
        got = set(graph.edges())
        ref = brute_force_sense_edges(
            {w: [(e.sense_id, e.members) for e in entries] for w, entries in senses.items()}
        )
        assert got == ref


class TestSemanticClasses:
    def _small_graph_classes(self, min_class_size=2):
        senses = {
            "a": [_entry("a", 0, [("b", 1.0)])],
            "b": [_entry("b", 0, [("a", 1.0)])],
            "c": [_entry("c", 0, [("d", 1.0)])],
            "d": [_entry("d", 0, [("c", 1.0)])],
        }
        graph = build_sense_graph(senses)
        return build_semantic_classes(
            graph, senses, HypernymCounts(), {}, min_class_size=min_class_size
        )

    def test_two_components_two_classes(self):
        classes = self._small_graph_classes()
        assert len(classes) == 2
        assert [c.class_id for c in classes] == [0, 1]
        words = [set(c.member_words) for c in classes]
        assert {"a", "b"} in words and {"c", "d"} in words

    def test_isolated_senses_dropped(self):
        senses = {
            "a": [_entry("a", 0, [("zz", 1.0)])],
            "b": [_entry("b", 0, [("qq", 1.0)])],
        }
        graph = build_sense_graph(senses)
        classes = build_semantic_classes(graph, senses, HypernymCounts(), {}, min_class_size=2)
        assert classes == []

    def test_cluster_vec_uniform_weight_one(self):
        for cls in self._small_graph_classes():
            assert all(w == 1.0 for w in cls.cluster_vec.entries.values())
            assert set(cls.cluster_vec.entries) == set(cls.member_words)

    def test_context_vec_mean_unit_norm(self):
        senses = {
            "a": [_entry("a", 0, [("b", 1.0)])],
            "b": [_entry("b", 0, [("a", 1.0)])],
        }
        graph = build_sense_graph(senses)
        word_vecs = {
            "a": FeatureVector({"x": 2.0, "y": 4.0}),
            "b": FeatureVector({"x": 4.0}),
        }
        classes = build_semantic_classes(graph, senses, HypernymCounts(), word_vecs)
        vec = classes[0].context_vec
        # mean before normalization: x=3, y=2
        assert abs(vec.norm2 - 1.0) < 1e-9
        assert abs(vec.get("x") / vec.get("y") - 1.5) < 1e-9

    def test_two_topic_corpus_classes_separate_topics(self, two_topic_model):
        model, corpus = two_topic_model
        assert len(model.classes) == 2
        for cls in model.classes:
            touched = {
                topic
                for topic, words in corpus.topics.items()
                if set(cls.member_words) & set(words)
            }
            assert len(touched) == 1
