# -*- coding: utf-8 -*-

"""
Instance-based learners: k-nearest-neighbour and K*.

Both store the training matrix and score queries in chunks of at most
``CHUNK_SIZE`` rows and ``MAX_CHUNK_CELLS`` query x training cells.
"""

import dataclasses

import numpy as np

from ..constants import AlgorithmEnum
from ..data_model import Dataset
from ..exc import LearnerError
from .base import TrainedModel, training_arrays, argmax_with_prior

CHUNK_SIZE = 512
# upper bound on query x training cells scored at once
MAX_CHUNK_CELLS = 4_000_000
MIN_DISTANCE = 1e-12

# K* calibration
N_CALIBRATION_QUERIES = 200
N_BISECTION_STEPS = 48


def _chunks(n: int, n_training: int):
    size = max(1, min(CHUNK_SIZE, MAX_CHUNK_CELLS // max(n_training, 1)))
    for start in range(0, n, size):
        yield slice(start, min(start + size, n))


# ------------------------------------------------------------------------------
# k-nearest-neighbour
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True, eq=False)
class KnnModel(TrainedModel):
    """
    :param ranges: training range of every numeric attribute, 0 for nominal
        and constant ones.
    """

    x: np.ndarray
    y: np.ndarray
    k: int
    distance_weighting: bool
    ranges: np.ndarray

    def distances(self, queries: np.ndarray) -> np.ndarray:
        """
        ``(n_queries, n_training)`` mixed distance matrix.
        """
        sq = np.zeros((queries.shape[0], self.x.shape[0]))
        for j in range(self.x.shape[1]):
            diff = np.abs(queries[:, j][:, None] - self.x[:, j][None, :])
            if self.schema.nominal[j]:
                comp = (diff > 0).astype(np.float64)
            elif self.ranges[j] > 0:
                comp = diff / self.ranges[j]
            else:
                comp = (diff > 0).astype(np.float64)
            sq += comp * comp
        return np.sqrt(sq)

    def _predict_codes(self, x: np.ndarray) -> np.ndarray:
        n_classes = len(self.classes)
        out = np.empty(x.shape[0], dtype=np.int64)
        for sl in _chunks(x.shape[0], self.x.shape[0]):
            dist = self.distances(x[sl])
            # stable sort: equal distances keep the lower training index first
            nearest = np.argsort(dist, axis=1, kind="stable")[:, : self.k]
            labels = self.y[nearest]
            if self.distance_weighting:
                weights = 1.0 / np.maximum(
                    np.take_along_axis(dist, nearest, axis=1), MIN_DISTANCE
                )
            else:
                weights = np.ones(labels.shape)
            scores = np.zeros((labels.shape[0], n_classes))
            rows = np.repeat(np.arange(labels.shape[0]), labels.shape[1])
            np.add.at(scores, (rows, labels.ravel()), weights.ravel())
            out[sl] = argmax_with_prior(scores, self.class_counts)
        return out


def train_knn(d: Dataset, k: int = 5, distance_weighting: bool = False) -> KnnModel:
    """
    IBk style classifier. Numeric differences are divided by the training
    range of the attribute; nominal attributes contribute 0 on a match and 1
    otherwise; the distance is the Euclidean norm of those components.
    """
    x, y, schema = training_arrays(d)
    if k < 1:
        raise LearnerError(f"k must be >= 1, got {k}")
    if k > y.size:
        raise LearnerError(f"k={k} exceeds the {y.size} training instances")
    ranges = np.where(schema.nominal, 0.0, x.max(axis=0) - x.min(axis=0)) if x.size else np.zeros(0)
    return KnnModel(
        algorithm=AlgorithmEnum.knn,
        classes=d.classes,
        class_counts=d.class_counts(),
        schema=schema,
        x=x,
        y=y,
        k=k,
        distance_weighting=distance_weighting,
        ranges=ranges,
    )


# ------------------------------------------------------------------------------
# K*
# ------------------------------------------------------------------------------
def _effective_count(sums: np.ndarray, sq_sums: np.ndarray) -> float:
    """
    Mean over queries of ``(sum p)^2 / sum p^2``.
    """
    return float(np.mean(sums * sums / sq_sums))


def _calibration_rows(n: int) -> np.ndarray:
    return np.unique(np.linspace(0, n - 1, min(N_CALIBRATION_QUERIES, n)).astype(np.int64))


def calibrate_scale(col: np.ndarray, target: float) -> float:
    """
    Scale ``s`` of ``exp(-|a - x| / s)`` whose mean effective neighbour count
    over the calibration queries equals ``target``.
    """
    values, counts = np.unique(col, return_counts=True)
    spread = values[-1] - values[0]
    if values.size == 1 or spread <= 0:
        return 1.0
    queries = col[_calibration_rows(col.size)]
    diff = np.abs(queries[:, None] - values[None, :])

    def n_eff(scale: float) -> float:
        p = np.exp(-diff / scale)
        return _effective_count((p * counts).sum(axis=1), (p * p * counts).sum(axis=1))

    lo, hi = np.log(spread * 1e-9), np.log(spread * 1e9)
    for _ in range(N_BISECTION_STEPS):
        mid = (lo + hi) / 2.0
        if n_eff(np.exp(mid)) < target:
            lo = mid
        else:
            hi = mid
    return float(np.exp((lo + hi) / 2.0))


def calibrate_stay_probability(codes: np.ndarray, n_categories: int, target: float) -> float:
    """
    Stay probability ``p0`` of a nominal attribute. A value keeps its category
    with probability ``p0 + (1 - p0) / c`` and moves to any given other
    category with probability ``(1 - p0) / c``.
    """
    codes = codes.astype(np.int64)
    counts = np.bincount(codes, minlength=n_categories).astype(np.float64)
    n = codes.size
    same = counts[codes[_calibration_rows(n)]]
    diff = n - same

    def n_eff(p0: float) -> float:
        switch = (1.0 - p0) / n_categories
        stay = p0 + switch
        return _effective_count(
            same * stay + diff * switch, same * stay * stay + diff * switch * switch
        )

    lo, hi = 0.0, 1.0 - 1e-12
    for _ in range(N_BISECTION_STEPS):
        mid = (lo + hi) / 2.0
        if n_eff(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


@dataclasses.dataclass(frozen=True, eq=False)
class KStarModel(TrainedModel):
    """
    :param scales: per attribute numeric scale (unused for nominal ones).
    :param stay: per attribute nominal stay probability (unused for numeric ones).
    """

    x: np.ndarray
    y: np.ndarray
    blend: float
    scales: np.ndarray
    stay: np.ndarray

    def log_transform_probability(self, queries: np.ndarray) -> np.ndarray:
        """
        ``(n_queries, n_training)`` log probability of transforming each
        training instance into each query, up to a per-query constant.
        """
        logp = np.zeros((queries.shape[0], self.x.shape[0]))
        for j in range(self.x.shape[1]):
            if self.schema.nominal[j]:
                c = self.schema.n_categories[j]
                switch = (1.0 - self.stay[j]) / c
                stay = self.stay[j] + switch
                match = queries[:, j][:, None] == self.x[:, j][None, :]
                logp += np.where(match, np.log(stay), np.log(switch))
            else:
                logp -= np.abs(queries[:, j][:, None] - self.x[:, j][None, :]) / self.scales[j]
        return logp

    def class_log_scores(self, queries: np.ndarray) -> np.ndarray:
        n_classes = len(self.classes)
        logp = self.log_transform_probability(queries)
        peak = logp.max(axis=1, keepdims=True)
        weights = np.exp(logp - peak)
        scores = np.zeros((queries.shape[0], n_classes))
        for c in range(n_classes):
            members = self.y == c
            if members.any():
                scores[:, c] = weights[:, members].sum(axis=1)
        with np.errstate(divide="ignore"):
            return np.log(scores) + peak

    def _predict_codes(self, x: np.ndarray) -> np.ndarray:
        out = np.empty(x.shape[0], dtype=np.int64)
        for sl in _chunks(x.shape[0], self.x.shape[0]):
            out[sl] = argmax_with_prior(self.class_log_scores(x[sl]), self.class_counts)
        return out


def train_kstar(d: Dataset, blend: float = 20.0) -> KStarModel:
    """
    Entropic instance-based classifier.

    Each attribute gets a transformation probability: ``exp(-|a - x| / s)``
    for numeric attributes, a stay/switch law for nominal ones. ``s`` and the
    stay probability are calibrated so that on average
    ``1 + blend / 100 * (n - 1)`` training instances effectively contribute.
    An instance transforms with the product of its attribute probabilities; a
    class scores the sum over its training instances.
    """
    if not (0.0 < blend <= 100.0):
        raise LearnerError(f"blend must be in (0, 100], got {blend}")
    x, y, schema = training_arrays(d)
    n = y.size
    target = 1.0 + blend / 100.0 * (n - 1)
    scales = np.ones(schema.n_attributes)
    stay = np.zeros(schema.n_attributes)
    for j in range(schema.n_attributes):
        if schema.nominal[j]:
            stay[j] = calibrate_stay_probability(x[:, j], schema.n_categories[j], target)
        else:
            scales[j] = calibrate_scale(x[:, j], target)
    return KStarModel(
        algorithm=AlgorithmEnum.kstar,
        classes=d.classes,
        class_counts=d.class_counts(),
        schema=schema,
        x=x,
        y=y,
        blend=blend,
        scales=scales,
        stay=stay,
    )
