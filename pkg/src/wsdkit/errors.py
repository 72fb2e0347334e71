"""Exception hierarchy shared across the toolkit."""


class WsdkitError(Exception):
    """Base class for all toolkit errors."""


class CorpusError(WsdkitError):
    """Unreadable, undecodable, or empty corpus input."""


class UnknownWordError(WsdkitError):
    """A per-word operation was asked about a word without induced senses."""


class ModelNotLoadedError(WsdkitError):
    """A disambiguation call hit a model with no candidates at all."""


class NotFoundError(WsdkitError):
    """Keyed lookup (word, sense, class, model id) found nothing."""


class ModelFormatError(WsdkitError):
    """A model directory is incomplete, corrupt, or from an unsupported version."""


class DatasetError(WsdkitError):
    """An evaluation dataset file failed to parse."""


class ConfigError(WsdkitError):
    """A pipeline or service configuration value is invalid."""


class PipelineError(WsdkitError):
    """A build stage failed; the message names the stage."""
