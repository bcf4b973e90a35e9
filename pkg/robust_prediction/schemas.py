# -*- coding: utf-8 -*-

"""
Pydantic schemas of the machine-readable run report.

Defines schemas for:

- Cross-validation summaries (per-fold metrics, mean, std, pooled confusion)
- Level traces and rules of a pipeline run
- The run report itself and the cross-recipe comparison table
"""

from pydantic import BaseModel, Field

from ._version import __version__
from .config.api import LearnerSpec, PipelineConfig


# =============================================================================
# Evaluation Schemas
# =============================================================================
class Metrics(BaseModel):
    """Accuracy, kappa and the macro recall / precision of one evaluation."""

    accuracy: float
    kappa: float
    weighted_mean_recall: float
    weighted_mean_precision: float


class Confusion(BaseModel):
    """Rows are actual classes, columns predicted classes."""

    labels: list[str]
    counts: list[list[int]]


class Evaluation(BaseModel):
    learners: list[str]
    learner_specs: list[LearnerSpec] = Field(default_factory=list)
    seed: int
    folds: int
    mean: Metrics
    std: Metrics
    fold_metrics: list[Metrics]
    pooled_confusion: Confusion
    dropped_test_instances: int = 0


# =============================================================================
# Pipeline Schemas
# =============================================================================
class ClusterScoreRead(BaseModel):
    cluster_id: int
    attributes: list[str]
    accuracy_mean: float
    accuracy_std: float


class LevelRead(BaseModel):
    level: int
    k: int
    wcss: float
    clusters: list[ClusterScoreRead]
    chosen: list[str]
    chi_square: dict[str, float] = Field(
        ..., description="chi-square weight of every attribute of the chosen cluster"
    )
    selected: list[str]
    evaluation: Evaluation


class ConditionRead(BaseModel):
    attribute: str
    op: str
    threshold: float | None = None
    categories: list[str] = Field(default_factory=list)


class RuleRead(BaseModel):
    conditions: list[ConditionRead]
    prediction: str
    support: int
    confidence: float
    text: str


class RunReport(BaseModel):
    """
    Everything a run produced; the text report is rendered from this model.
    """

    version: str = __version__
    recipe_id: str
    description: str = ""
    data_path: str
    pipeline: PipelineConfig | None = None
    n_instances: int
    classes: list[str]
    class_counts: list[int]
    seed: int
    loop_rule: str
    per_class_n: int
    balanced_size: int
    levels: list[LevelRead]
    final_level: int
    stop_reason: str
    final_attributes: list[str]
    final: Evaluation
    rules: list[RuleRead]
    baseline: Evaluation | None = None
    notes: list[str] = Field(default_factory=list)


class CompareRow(BaseModel):
    """One recipe of the RPM versus PCA comparison."""

    recipe_id: str
    rpm_accuracy: float
    rpm_accuracy_std: float
    rpm_kappa: float
    rpm_kappa_std: float
    pca_accuracy: float | None = None
    pca_accuracy_std: float | None = None
    pca_kappa: float | None = None
    pca_kappa_std: float | None = None
