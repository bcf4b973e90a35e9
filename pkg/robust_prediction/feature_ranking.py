# -*- coding: utf-8 -*-

"""
Attribute ranking by chi-square association with the target, top-v
selection, and the principal component reduction used by the baseline.
"""

import dataclasses

import numpy as np

from .constants import AttributeKindEnum, EPS
from .data_model import Dataset, AttributeMeta, encode_numeric, project_attributes
from .exc import RankingError


# ------------------------------------------------------------------------------
# Chi-square
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True, eq=False)
class AttributeWeights:
    """
    Chi-square statistic of every regular attribute, in dataset column order.
    """

    names: tuple[str, ...]
    weights: np.ndarray
    bins: int

    def ranked(self) -> list[tuple[str, float]]:
        """
        ``(name, weight)`` pairs by decreasing weight; equal weights keep
        column order.
        """
        order = np.argsort(-self.weights, kind="stable")
        return [(self.names[i], float(self.weights[i])) for i in order]

    def weight_of(self, name: str) -> float:
        return float(self.weights[self.names.index(name)])


def contingency_chi_square(table: np.ndarray) -> float:
    """
    Pearson statistic ``sum((O - E)^2 / E)`` of a contingency table, cells
    with zero expected count skipped.
    """
    observed = np.asarray(table, dtype=np.float64)
    total = observed.sum()
    if total <= 0:
        return 0.0
    expected = np.outer(observed.sum(axis=1), observed.sum(axis=0)) / total
    used = expected > 0
    return float((((observed - expected) ** 2)[used] / expected[used]).sum())


def equal_frequency_bins(col: np.ndarray, bins: int) -> np.ndarray:
    """
    Bin index of every value. Cut points are the lower empirical quantiles
    at ``1/bins, ..., (bins-1)/bins``, duplicates merged; a value equal to a
    cut point falls in the upper bin. Cuts at the column minimum are dropped,
    so the smallest value is always in bin 0.
    """
    cuts = np.quantile(col, np.linspace(0.0, 1.0, bins + 1)[1:-1], method="lower")
    cuts = np.unique(cuts)
    cuts = cuts[cuts > col.min()]
    return np.searchsorted(cuts, col, side="right")


def chi_square_weights(d: Dataset, bins: int = 10) -> AttributeWeights:
    if bins < 2:
        raise RankingError(f"bins must be >= 2, got {bins}")
    x = d.regular_values()
    if np.isnan(x).any():
        raise RankingError("chi-square ranking needs a dataset without missing cells")
    y = d.target_codes()
    if np.count_nonzero(np.bincount(y, minlength=len(d.classes))) < 2:
        raise RankingError("chi-square ranking needs at least two classes in the data")
    n_classes = len(d.classes)
    weights = np.zeros(x.shape[1])
    for j, a in enumerate(d.regular_attributes):
        if a.is_nominal:
            codes = x[:, j].astype(np.int64)
        else:
            codes = equal_frequency_bins(x[:, j], bins)
        n_rows = int(codes.max()) + 1 if codes.size else 0
        table = np.bincount(codes * n_classes + y, minlength=n_rows * n_classes)
        weights[j] = contingency_chi_square(table.reshape(n_rows, n_classes))
    return AttributeWeights(names=tuple(d.regular_names), weights=weights, bins=bins)


def select_top_v(d: Dataset, w: AttributeWeights, v: int) -> Dataset:
    """
    Project ``d`` onto the ``v`` highest weighted attributes (all of them
    when there are fewer than ``v``).
    """
    if v < 1:
        raise RankingError(f"v must be >= 1, got {v}")
    if set(w.names) != set(d.regular_names):
        raise RankingError("attribute weights do not match the dataset attributes")
    top = [name for name, _ in w.ranked()[:v]]
    return project_attributes(d, top, provenance="D_f")


# ------------------------------------------------------------------------------
# PCA
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True, eq=False)
class PcaModel:
    """
    :param means: per input attribute mean.
    :param stds: per input attribute sample std used for scaling, 0 for
        constant attributes and 1 everywhere when not standardizing.
    :param components: ``(n_attributes, n_components)`` orthonormal columns.
    :param explained_variance: every eigenvalue, decreasing.
    :param explained_ratio: ``explained_variance`` over its sum.
    """

    names: tuple[str, ...]
    means: np.ndarray
    stds: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray
    explained_ratio: np.ndarray
    standardized: bool

    @property
    def n_components(self) -> int:
        return self.components.shape[1]

    @property
    def component_names(self) -> list[str]:
        return [f"pc_{i + 1}" for i in range(self.n_components)]

    def _scale(self) -> np.ndarray:
        return np.where(self.stds > 0, self.stds, 1.0)

    def standardize(self, x: np.ndarray) -> np.ndarray:
        z = (np.asarray(x, dtype=np.float64) - self.means) / self._scale()
        z[:, self.stds == 0] = 0.0
        return z

    def transform(self, x: np.ndarray) -> np.ndarray:
        return self.standardize(x) @ self.components

    def inverse_transform(self, scores: np.ndarray, standardized: bool = False) -> np.ndarray:
        """
        Map component scores back to attribute space, in standardized units
        when ``standardized`` else in the original units.
        """
        z = np.asarray(scores, dtype=np.float64) @ self.components.T
        if standardized:
            return z
        return z * np.where(self.stds > 0, self.stds, 0.0) + self.means


def fit_pca(d: Dataset, variance_to_keep: float = 0.95, standardize: bool = True) -> PcaModel:
    """
    Eigen-decompose the sample covariance of the (standardized) encoded
    regular attributes and keep the smallest leading set of components whose
    cumulative explained variance reaches ``variance_to_keep``.

    Each component is signed so its largest absolute loading is positive.
    """
    if not (0.0 < variance_to_keep <= 1.0):
        raise RankingError(f"variance_to_keep must be in (0, 1], got {variance_to_keep}")
    if d.has_missing:
        raise RankingError("PCA needs a dataset without missing cells, impute first")
    x = encode_numeric(d)
    if x.shape[0] < 2:
        raise RankingError(f"PCA needs at least 2 instances, got {x.shape[0]}")
    if x.shape[1] == 0:
        raise RankingError("PCA needs at least one regular attribute")
    means = x.mean(axis=0)
    if standardize:
        stds = x.std(axis=0, ddof=1)
        stds = np.where(stds <= EPS * np.maximum(1.0, np.abs(means)), 0.0, stds)
    else:
        stds = np.ones(x.shape[1])
    if standardize and np.all(stds == 0):
        raise RankingError("every attribute is constant, nothing to decompose")
    z = (x - means) / np.where(stds > 0, stds, 1.0)
    z[:, stds == 0] = 0.0
    cov = np.atleast_2d(np.cov(z, rowvar=False))
    values, vectors = np.linalg.eigh(cov)
    order = np.argsort(values)[::-1]
    values = np.clip(values[order], 0.0, None)
    vectors = vectors[:, order]
    if values.sum() <= 0:
        raise RankingError("zero-variance dataset, nothing to decompose")
    pivot = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivot, np.arange(vectors.shape[1])])
    vectors = vectors * np.where(signs == 0, 1.0, signs)
    ratio = values / values.sum()
    cumulative = np.cumsum(ratio)
    r = int(np.searchsorted(cumulative, variance_to_keep - 1e-9, side="left")) + 1
    r = min(max(r, 1), vectors.shape[1])
    return PcaModel(
        names=tuple(d.regular_names),
        means=means,
        stds=stds,
        components=vectors[:, :r],
        explained_variance=values,
        explained_ratio=ratio,
        standardized=standardize,
    )


def pca_reduce(d: Dataset, variance_to_keep: float = 0.95, standardize: bool = True) -> Dataset:
    """
    Replace the regular attributes by the retained component scores
    ``pc_1 .. pc_r``; the target column is kept last.
    """
    model = fit_pca(d, variance_to_keep=variance_to_keep, standardize=standardize)
    scores = model.transform(encode_numeric(d))
    attributes = tuple(
        AttributeMeta(name=name, kind=AttributeKindEnum.numeric)
        for name in model.component_names
    ) + (d.target,)
    values = np.column_stack([scores, d.values[:, d.target_index]])
    return Dataset(
        attributes=attributes,
        values=values,
        provenance="PCA",
        row_origin=d.row_origin,
    )
