# -*- coding: utf-8 -*-

"""
Exception hierarchy.

Every error raised on purpose by this package derives from :class:`RpmError`.
Each subclass is also a :class:`ValueError`, the inputs being the problem.
"""


class RpmError(ValueError):
    """Base class of all errors raised by the robust prediction pipeline."""


class DataError(RpmError):
    """Ingestion, schema, imputation or projection failure."""


class SamplingError(RpmError):
    """Class balancing or fold construction failure."""


class ClusteringError(RpmError):
    """k-means or cluster splitting failure."""


class LearnerError(RpmError):
    """Invalid learner parameters or predict-time arity mismatch."""


class RankingError(RpmError):
    """Chi-square ranking or PCA failure."""


class EvaluationError(RpmError):
    """Confusion matrix, vote or cross-validation failure."""


class PipelineError(RpmError):
    """Orchestration failure in the level loop."""


class RecipeError(RpmError):
    """Dataset recipe mismatch: missing column, unknown recipe id, ..."""
