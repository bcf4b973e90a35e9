# -*- coding: utf-8 -*-

"""
Majority-vote ensemble and the stratified cross-validation harness.

Metrics follow the conventions of the reported result tables:

- kappa is 0 when chance agreement is 1;
- "weighted mean" recall and precision are unweighted means over classes,
  a class never predicted has precision 0 and a class never seen has recall 0;
- fold dispersion is the sample standard deviation.
"""

import typing as T
import dataclasses

import numpy as np
from joblib import Parallel, delayed

from .config.api import LearnerSpec
from .data_model import Dataset
from .exc import EvaluationError
from .learners.api import train
from .learners.base import TrainedModel, argmax_with_prior, vote_counts
from .logger import logger
from .sampling import FoldPlan, stratified_folds

METRIC_NAMES = ("accuracy", "kappa", "weighted_mean_recall", "weighted_mean_precision")


@dataclasses.dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """
    Rows are actual classes, columns predicted classes, both in ``labels`` order.
    """

    labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts)
        m = len(self.labels)
        if counts.shape != (m, m):
            raise EvaluationError(f"confusion matrix must be {m}x{m}, got {counts.shape}")
        if np.any(counts < 0) or np.any(counts != np.floor(counts)):
            raise EvaluationError("confusion counts must be non-negative integers")
        counts = counts.astype(np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_codes(
        cls,
        labels: T.Sequence[str],
        actual: np.ndarray,
        predicted: np.ndarray,
    ) -> "ConfusionMatrix":
        m = len(labels)
        actual = np.asarray(actual, dtype=np.int64)
        predicted = np.asarray(predicted, dtype=np.int64)
        counts = np.bincount(actual * m + predicted, minlength=m * m).reshape(m, m)
        return cls(labels=tuple(labels), counts=counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        if self.labels != other.labels:
            raise EvaluationError("cannot pool confusion matrices over different labels")
        return ConfusionMatrix(labels=self.labels, counts=self.counts + other.counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.counts, other.counts)

    __hash__ = None


@dataclasses.dataclass(frozen=True)
class MetricSet:
    accuracy: float
    kappa: float
    weighted_mean_recall: float
    weighted_mean_precision: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in METRIC_NAMES])

    def to_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


def evaluate_confusion(cm: ConfusionMatrix) -> MetricSet:
    counts = cm.counts.astype(np.float64)
    total = counts.sum()
    if counts.size == 0 or total < 1:
        raise EvaluationError("cannot evaluate an empty confusion matrix")
    diag = np.diag(counts)
    rows = counts.sum(axis=1)
    cols = counts.sum(axis=0)
    p_o = diag.sum() / total
    p_e = float(np.dot(rows, cols)) / (total * total)
    kappa = 0.0 if abs(1.0 - p_e) < 1e-15 else (p_o - p_e) / (1.0 - p_e)
    recall = np.divide(diag, rows, out=np.zeros_like(diag), where=rows > 0)
    precision = np.divide(diag, cols, out=np.zeros_like(diag), where=cols > 0)
    return MetricSet(
        accuracy=float(p_o),
        kappa=float(kappa),
        weighted_mean_recall=float(recall.mean()),
        weighted_mean_precision=float(precision.mean()),
    )


# ------------------------------------------------------------------------------
# Vote
# ------------------------------------------------------------------------------
def _check_models(models: T.Sequence[TrainedModel]):
    if len(models) == 0:
        raise EvaluationError("vote needs at least one model")
    first = models[0]
    for model in models[1:]:
        if model.classes != first.classes or model.training_labels != first.training_labels:
            raise EvaluationError(
                f"label sets differ: {first.training_labels} vs {model.training_labels}"
            )


def vote_predict_codes(models: T.Sequence[TrainedModel], x: np.ndarray) -> np.ndarray:
    """
    Majority vote of ``models`` for every row of ``x``. Ties go to the class
    with the larger training prior, then to the lower class index.
    """
    _check_models(models)
    predictions = np.column_stack([m.predict_codes(x) for m in models])
    counts = vote_counts(predictions, len(models[0].classes))
    return argmax_with_prior(counts, models[0].class_counts)


def vote_predict(models: T.Sequence[TrainedModel], instance: np.ndarray) -> str:
    x = np.asarray(instance, dtype=np.float64).reshape(1, -1)
    code = vote_predict_codes(models, x)[0]
    return models[0].classes[code]


# ------------------------------------------------------------------------------
# Cross-validation
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True, eq=False)
class EvaluationReport:
    """
    Outcome of one stratified cross-validation.

    :param fold_metrics: metrics of every fold, in fold order.
    :param fold_confusions: confusion matrix of every fold.
    :param pooled: sum of the fold confusion matrices.
    """

    fold_metrics: tuple[MetricSet, ...]
    fold_confusions: tuple[ConfusionMatrix, ...]
    pooled: ConfusionMatrix
    learners: tuple[LearnerSpec, ...]
    seed: int
    folds: int
    dropped_test_instances: int = 0

    def _values(self) -> np.ndarray:
        return np.array([m.as_array() for m in self.fold_metrics])

    @property
    def mean(self) -> MetricSet:
        return MetricSet(*self._values().mean(axis=0).tolist())

    @property
    def std(self) -> MetricSet:
        values = self._values()
        if values.shape[0] < 2:
            return MetricSet(0.0, 0.0, 0.0, 0.0)
        return MetricSet(*values.std(axis=0, ddof=1).tolist())

    @property
    def accuracy(self) -> float:
        """
        Mean fold accuracy, the performance that drives the level loop.
        """
        return self.mean.accuracy


def _run_fold(
    d: Dataset,
    plan: FoldPlan,
    f: int,
    learners: tuple[LearnerSpec, ...],
    seed: int,
    strict: bool,
) -> tuple[ConfusionMatrix, int]:
    train_idx = plan.train_indices(f)
    test_idx = plan.test_indices(f)
    dropped = 0
    if strict:
        leaked = np.isin(d.row_origin[test_idx], d.row_origin[train_idx])
        dropped = int(leaked.sum())
        test_idx = test_idx[~leaked]
        if test_idx.size == 0:
            raise EvaluationError(
                f"fold {f} has no test instance left once rows shared with training are removed"
            )
    train_d = d.take_rows(train_idx)
    test_d = d.take_rows(test_idx)
    models = [train(spec, train_d, seed=seed + f) for spec in learners]
    predicted = vote_predict_codes(models, test_d.regular_values())
    cm = ConfusionMatrix.from_codes(d.classes, test_d.target_codes(), predicted)
    return cm, dropped


def cross_validate(
    d: Dataset,
    learners: T.Sequence[LearnerSpec],
    folds: int = 10,
    seed: int = 0,
    strict: bool = False,
    n_jobs: int = 1,
) -> EvaluationReport:
    """
    Stratified ``folds``-fold cross-validation of the majority vote of
    ``learners``. Fold ``f`` trains every learner with seed ``seed + f``.

    With ``strict``, test instances whose source row also feeds the training
    folds are left out of the fold's score.
    """
    learners = tuple(learners)
    if not learners:
        raise EvaluationError("cross-validation needs at least one learner")
    plan = stratified_folds(d, folds, seed)
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_fold)(d, plan, f, learners, seed, strict) for f in range(folds)
    )
    confusions = tuple(cm for cm, _ in results)
    dropped = sum(n for _, n in results)
    if dropped:
        logger.info(f"strict cv left out {dropped} test instances shared with training folds")
    pooled = confusions[0]
    for cm in confusions[1:]:
        pooled = pooled + cm
    return EvaluationReport(
        fold_metrics=tuple(evaluate_confusion(cm) for cm in confusions),
        fold_confusions=confusions,
        pooled=pooled,
        learners=learners,
        seed=seed,
        folds=folds,
        dropped_test_instances=dropped,
    )
