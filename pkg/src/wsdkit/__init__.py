"""wsdkit: unsupervised, knowledge-free, interpretable word sense induction
and disambiguation.

The package induces word senses from raw text by clustering ego-networks of
distributionally similar words, labels them with corpus-extracted hypernyms
and usage examples, groups senses into global semantic classes, and
disambiguates words in context by sparse cosine similarity. Models live in
flat TSV directories and are served over a CLI and an HTTP API.
"""

from .cluster import SenseCluster, WeightedGraph, build_ego_network, chinese_whispers, induce_senses
from .config import PipelineConfig
from .corpus import CorpusConfig, Sentence, Token, detect_targets, load_corpus, tokenize
from .dt import CooccurrenceCounts, Thesaurus, build_thesaurus, extract_cooccurrences, prune_features, weight_lmi
from .errors import (
    ConfigError,
    CorpusError,
    DatasetError,
    ModelFormatError,
    ModelNotLoadedError,
    NotFoundError,
    PipelineError,
    UnknownWordError,
    WsdkitError,
)
from .estimator import SenseInducer
from .evaluation import EvalReport, EvalRow, evaluate, filter_evaluable, load_dataset
from .hypernymy import HypernymCounts, HypernymLabels, extract_hypernym_pairs, label_class, label_sense
from .model import MODEL_KINDS, WSDModel
from .pipeline import build_from_path, build_model
from .senses import SemanticClass, SenseEntry, aggregate_context_vec, build_semantic_classes, build_sense_graph
from .store import load_model, lookup, save_model
from .vectors import FeatureVector
from .wsd import (
    Annotation,
    Prediction,
    disambiguate,
    disambiguate_all,
    extract_usage_examples,
    featurize_context,
    mfs_predict,
    random_predict,
    score,
    trace_feature,
)

__version__ = "0.1.0"
