import pytest

from wsdkit.config import PipelineConfig
from wsdkit.corpus import load_stopwords, sentences_from_text
from wsdkit.dt import Thesaurus
from wsdkit.hypernymy import HypernymCounts, HypernymLabels
from wsdkit.model import WSDModel
from wsdkit.pipeline import build_model
from wsdkit.senses import SemanticClass, SenseEntry
from wsdkit.vectors import FeatureVector

from synth import make_ambiguity_corpus, make_two_topic_corpus

# The single-word prediction scenario every interface test reuses: "jaguar"
# with an animal sense and a car sense.
JAGUAR_CONTEXT = (
    "Jaguar is a large spotted predator of tropical America similar to the leopard."
)


def make_tiny_model() -> WSDModel:
    """Hand-built two-sense model small enough to reason about exactly."""
    word_vecs = {
        "jaguar": FeatureVector({"predator": 1.5, "spotted": 1.0, "engine": 1.2}),
        "leopard": FeatureVector({"predator": 2.0, "spotted": 1.5, "feline": 1.2}),
        "lion": FeatureVector({"predator": 1.8, "mane": 1.0}),
        "bmw": FeatureVector({"engine": 2.2, "speed": 1.4}),
        "audi": FeatureVector({"engine": 2.0, "wheels": 1.1}),
    }
    thesaurus = Thesaurus(
        neighbors={
            "jaguar": [("leopard", 3.0), ("lion", 2.0), ("bmw", 2.0), ("audi", 1.0)],
            "leopard": [("jaguar", 3.0), ("lion", 2.0)],
            "lion": [("leopard", 2.0), ("jaguar", 2.0)],
            "bmw": [("jaguar", 2.0), ("audi", 2.0)],
            "audi": [("bmw", 2.0), ("jaguar", 1.0)],
        }
    )
    jaguar_animal = SenseEntry(
        word="jaguar",
        sense_id=0,
        members=[("leopard", 3.0), ("lion", 2.0)],
        hypernyms=HypernymLabels([("animal", 3.6), ("cat", 0.6)]),
        cluster_vec=FeatureVector({"leopard": 3.0, "lion": 2.0}),
        context_vec=FeatureVector(
            {"predator": 2.0, "spotted": 1.5, "feline": 1.2, "mane": 0.4}
        ).unit(),
        examples=[("The jaguar hunted a deer near the river.", 0.42)],
    )
    jaguar_car = SenseEntry(
        word="jaguar",
        sense_id=1,
        members=[("bmw", 2.0), ("audi", 1.0)],
        hypernyms=HypernymLabels([("car", 2.0)]),
        cluster_vec=FeatureVector({"bmw": 2.0, "audi": 1.0}),
        context_vec=FeatureVector({"engine": 2.1, "speed": 1.4, "wheels": 0.9}).unit(),
        examples=[("He parked the jaguar beside the audi.", 0.37)],
    )
    leopard_animal = SenseEntry(
        word="leopard",
        sense_id=0,
        members=[("jaguar", 3.0), ("lion", 2.0)],
        hypernyms=HypernymLabels([("animal", 2.4)]),
        cluster_vec=FeatureVector({"jaguar": 3.0, "lion": 2.0}),
        context_vec=FeatureVector({"predator": 1.9, "spotted": 1.1, "mane": 0.5}).unit(),
        examples=[],
    )
    bmw_car = SenseEntry(
        word="bmw",
        sense_id=0,
        members=[("audi", 2.0), ("jaguar", 1.0)],
        hypernyms=HypernymLabels([("car", 2.0)]),
        cluster_vec=FeatureVector({"audi": 2.0, "jaguar": 1.0}),
        context_vec=FeatureVector({"engine": 2.0, "wheels": 1.0}).unit(),
        examples=[],
    )
    classes = [
        SemanticClass(
            class_id=0,
            member_senses=[("jaguar", 0), ("leopard", 0)],
            member_words=["jaguar", "leopard"],
            hypernyms=HypernymLabels([("animal", 2.0)]),
            cluster_vec=FeatureVector({"jaguar": 1.0, "leopard": 1.0}),
            context_vec=FeatureVector({"predator": 1.75, "spotted": 1.25, "feline": 0.6}).unit(),
        ),
        SemanticClass(
            class_id=1,
            member_senses=[("bmw", 0), ("jaguar", 1)],
            member_words=["bmw", "jaguar"],
            hypernyms=HypernymLabels([("car", 2.0)]),
            cluster_vec=FeatureVector({"bmw": 1.0, "jaguar": 1.0}),
            context_vec=FeatureVector({"engine": 1.7, "speed": 0.7, "predator": 0.75}).unit(),
        ),
    ]
    hearst = HypernymCounts()
    for hypo, hyper, freq in [
        ("jaguar", "animal", 3),
        ("leopard", "animal", 2),
        ("lion", "cat", 1),
        ("bmw", "car", 2),
        ("audi", "car", 2),
    ]:
        hearst.add(hypo, hyper, freq)
    return WSDModel(
        config=PipelineConfig(),
        stats={"n_documents": 1, "n_sentences": 10, "n_tokens": 120},
        word_vecs=word_vecs,
        thesaurus=thesaurus,
        senses={
            "jaguar": [jaguar_animal, jaguar_car],
            "leopard": [leopard_animal],
            "bmw": [bmw_car],
        },
        classes=classes,
        hearst=hearst,
    )


@pytest.fixture
def tiny_model() -> WSDModel:
    return make_tiny_model()


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


@pytest.fixture(scope="session")
def planted_corpus():
    return make_ambiguity_corpus()


@pytest.fixture(scope="session")
def synth_model(planted_corpus, stopwords):
    sentences = sentences_from_text(planted_corpus.text(), "synth", stopwords)
    return build_model(sentences, PipelineConfig())


@pytest.fixture(scope="session")
def two_topic_model(stopwords):
    corpus = make_two_topic_corpus()
    sentences = sentences_from_text(corpus.text(), "two-topic", stopwords)
    return build_model(sentences, PipelineConfig()), corpus


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    from wsdkit.store import save_model

    path = tmp_path_factory.mktemp("model") / "tiny"
    save_model(make_tiny_model(), path)
    return path
