# -*- coding: utf-8 -*-

"""
Pipeline configurations.
"""

from pydantic import BaseModel, ConfigDict, Field

from ..constants import AlgorithmEnum, LoopRuleEnum
from .config_02_learners import LearnerSpec, default_ensemble


class KMeansSettings(BaseModel):
    """
    Overrides of the attribute clustering step. ``k=None`` means the number of
    target classes.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int | None = Field(default=None, ge=1)
    max_iter: int = Field(default=300, ge=1)
    tol: float = Field(default=1e-6, ge=0.0)
    n_init: int = Field(default=10, ge=1)


class PipelineConfig(BaseModel):
    """
    Everything :func:`~robust_prediction.rpm_pipeline.run_rpm` needs besides the data.

    :param per_class_n: instances per class after balancing; ``None`` uses
        the majority class size (up-sampling only).
    :param top_v: number of chi-square ranked attributes kept in ``D_f``.
    :param max_levels: upper bound of the transpose / cluster / select loop.
    :param cluster_learner: learner used to score attribute clusters.
    :param rule_learner: learner whose tree becomes the rule set.
    :param variance_to_keep: retained variance of the PCA baseline.
    :param strict_cv: drop test instances whose source row is also in training.
    :param n_jobs: joblib workers for cluster scoring, folds and forests.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    per_class_n: int | None = Field(default=None, ge=1)
    top_v: int = Field(default=12, ge=1)
    folds: int = Field(default=10, ge=2)
    max_levels: int = Field(default=5, ge=1)
    kmeans: KMeansSettings = Field(default_factory=KMeansSettings)
    normalize: bool = True
    bins: int = Field(default=10, ge=2)
    learners: tuple[LearnerSpec, ...] = Field(
        default_factory=default_ensemble, min_length=1
    )
    cluster_learner: LearnerSpec = Field(
        default_factory=lambda: LearnerSpec(algorithm=AlgorithmEnum.cart)
    )
    rule_learner: LearnerSpec = Field(
        default_factory=lambda: LearnerSpec(algorithm=AlgorithmEnum.cart)
    )
    loop_rule: LoopRuleEnum = LoopRuleEnum.improvement
    variance_to_keep: float = Field(default=0.95, gt=0.0, le=1.0)
    strict_cv: bool = False
    seed: int = 42
    n_jobs: int = 1
