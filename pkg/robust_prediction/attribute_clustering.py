# -*- coding: utf-8 -*-

"""
Clustering of attributes (not instances).

The transposed :class:`~robust_prediction.data_model.AttributeMatrix` holds
one point per regular attribute; k-means groups those points, each group
becomes a dataset of its member attributes plus the target, and every group
is scored by cross-validated accuracy of a single learner.
"""

import typing as T
import dataclasses

import numpy as np
from joblib import Parallel, delayed

from .constants import AlgorithmEnum
from .config.api import LearnerSpec
from .data_model import Dataset, AttributeMatrix, project_attributes
from .ensemble_eval import EvaluationReport, cross_validate
from .exc import ClusteringError
from .logger import logger


@dataclasses.dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """
    :param labels: cluster id of every attribute row. Ids are numbered by
        first appearance, so ``labels[0] == 0``; empty clusters take the
        highest ids.
    :param centroids: ``(k, n_instances)``; a centroid is the mean of its
        member rows.
    :param wcss: within-cluster sum of squares of the returned assignment.
    :param wcss_history: WCSS after every assignment step of the kept run.
    """

    k: int
    labels: np.ndarray
    centroids: np.ndarray
    iterations: int
    wcss: float
    wcss_history: tuple[float, ...]

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster)

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)


def _squared_distances(rows: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    out = np.empty((rows.shape[0], centroids.shape[0]))
    for c in range(centroids.shape[0]):
        diff = rows - centroids[c]
        out[:, c] = np.einsum("ij,ij->i", diff, diff)
    return out


def _plus_plus(rows: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """
    k-means++ seeding. When every remaining row coincides with a chosen
    centre, the next centre is drawn uniformly among the unchosen rows.
    """
    n = rows.shape[0]
    chosen = [int(rng.integers(n))]
    closest = _squared_distances(rows, rows[chosen])[:, 0]
    while len(chosen) < k:
        total = closest.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=closest / total))
        else:
            left = np.setdiff1d(np.arange(n), chosen)
            nxt = int(rng.choice(left))
        chosen.append(nxt)
        closest = np.minimum(closest, _squared_distances(rows, rows[[nxt]])[:, 0])
    return np.array(rows[chosen], dtype=np.float64)


def _wcss(rows: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    diff = rows - centroids[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def _member_means(rows: np.ndarray, labels: np.ndarray, previous: np.ndarray) -> np.ndarray:
    centroids = np.array(previous)
    for c in range(previous.shape[0]):
        members = labels == c
        if members.any():
            centroids[c] = rows[members].mean(axis=0)
    return centroids


def _lloyd(
    rows: np.ndarray,
    k: int,
    rng: np.random.Generator,
    max_iter: int,
    tol: float,
) -> tuple[np.ndarray, np.ndarray, int, list[float]]:
    centroids = _plus_plus(rows, k, rng)
    labels = None
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        # argmin keeps the lowest cluster id on distance ties
        new_labels = np.argmin(_squared_distances(rows, centroids), axis=1)
        history.append(_wcss(rows, new_labels, centroids))
        stable = labels is not None and np.array_equal(new_labels, labels)
        labels = new_labels
        if stable:
            break
        new_centroids = _member_means(rows, labels, centroids)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break
    return labels, centroids, iterations, history


def _relabel(labels: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k = centroids.shape[0]
    _, first = np.unique(labels, return_index=True)
    order = list(labels[np.sort(first)])
    order += [c for c in range(k) if c not in order]
    mapping = np.empty(k, dtype=np.int64)
    mapping[order] = np.arange(k)
    return mapping[labels], centroids[order]


def kmeans(
    m: AttributeMatrix,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-6,
    n_init: int = 1,
) -> ClusterAssignment:
    """
    Lloyd's algorithm with k-means++ seeding over the rows of ``m``.

    A run stops when the assignment is stable, the largest centroid shift is
    below ``tol``, or after ``max_iter`` assignment steps. Restart ``r`` of
    ``n_init`` draws from ``default_rng([seed, r])``; the run with the lowest
    WCSS is kept, the earliest one on ties.
    """
    rows = np.asarray(m.rows, dtype=np.float64)
    if rows.shape[0] == 0:
        raise ClusteringError("cannot cluster an empty attribute matrix")
    if k < 1:
        raise ClusteringError(f"k must be >= 1, got {k}")
    if k > rows.shape[0]:
        raise ClusteringError(f"k={k} exceeds the {rows.shape[0]} attribute rows")
    if max_iter < 1:
        raise ClusteringError(f"max_iter must be >= 1, got {max_iter}")
    if n_init < 1:
        raise ClusteringError(f"n_init must be >= 1, got {n_init}")

    best = None
    for r in range(n_init):
        rng = np.random.default_rng([seed, r])
        labels, centroids, iterations, history = _lloyd(rows, k, rng, max_iter, tol)
        centroids = _member_means(rows, labels, centroids)
        wcss = _wcss(rows, labels, centroids)
        if best is None or wcss < best[0]:
            best = (wcss, labels, centroids, iterations, history)

    wcss, labels, centroids, iterations, history = best
    labels, centroids = _relabel(labels, centroids)
    return ClusterAssignment(
        k=k,
        labels=labels,
        centroids=centroids,
        iterations=iterations,
        wcss=wcss,
        wcss_history=tuple(history),
    )


def split_by_cluster(d: Dataset, a: ClusterAssignment) -> list[Dataset]:
    """
    One dataset per non-empty cluster, holding the member attributes and the
    target, in cluster id order.
    """
    names = d.regular_names
    if len(a.labels) != len(names):
        raise ClusteringError(
            f"assignment labels {len(a.labels)} attributes, dataset has {len(names)}"
        )
    clusters = []
    for c in range(a.k):
        members = [names[j] for j in a.members(c)]
        if not members:
            logger.warning(f"cluster {c} of {a.k} is empty, dropped")
            continue
        clusters.append(
            project_attributes(d, members, provenance=f"{d.provenance} cluster {c}".strip())
        )
    return clusters


@dataclasses.dataclass(frozen=True, eq=False)
class ClusterScore:
    cluster_id: int
    attributes: tuple[str, ...]
    accuracy_mean: float
    accuracy_std: float
    report: EvaluationReport

    @property
    def size(self) -> int:
        return len(self.attributes)


def pick_best_cluster(
    clusters: T.Sequence[Dataset],
    seed: int,
    folds: int = 10,
    learner: LearnerSpec | None = None,
    n_jobs: int = 1,
) -> tuple[Dataset, list[ClusterScore]]:
    """
    Cross-validate ``learner`` (CART by default) on every cluster dataset and
    return the one with the best mean accuracy. Ties go to the cluster with
    more attributes, then to the lower cluster id.
    """
    if len(clusters) == 0:
        raise ClusteringError("no cluster to choose from")
    if learner is None:
        learner = LearnerSpec(algorithm=AlgorithmEnum.cart)
    reports = Parallel(n_jobs=n_jobs)(
        delayed(cross_validate)(c, [learner], folds=folds, seed=seed) for c in clusters
    )
    scores = [
        ClusterScore(
            cluster_id=i,
            attributes=tuple(c.regular_names),
            accuracy_mean=report.mean.accuracy,
            accuracy_std=report.std.accuracy,
            report=report,
        )
        for i, (c, report) in enumerate(zip(clusters, reports))
    ]
    best = max(scores, key=lambda s: (s.accuracy_mean, s.size, -s.cluster_id))
    return clusters[best.cluster_id], scores
