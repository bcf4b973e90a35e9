# -*- coding: utf-8 -*-

"""
Uniform train/predict contract shared by every base learner.

Learners work on the encoded regular-attribute matrix of a
:class:`~robust_prediction.data_model.Dataset` and on integer class codes.
A trained model is immutable; predicting never changes it.
"""

import abc
import dataclasses
from functools import cache

import numpy as np

from ..constants import AlgorithmEnum
from ..data_model import Dataset
from ..exc import LearnerError
from ..logger import logger


@cache
def _warn_unseen(attribute: str, category: str, replacement: str):
    logger.warning(
        f"unseen category {category!r} of {attribute!r} at predict time, "
        f"using most frequent training category {replacement!r}"
    )


@dataclasses.dataclass(frozen=True, eq=False)
class FeatureSchema:
    """
    What a model remembers about its training attributes.

    :param seen: per nominal attribute, the sorted category indices present in
        the training data (``None`` for numeric attributes).
    :param modes: most frequent training category per nominal attribute.
    """

    names: tuple[str, ...]
    nominal: np.ndarray
    n_categories: tuple[int, ...]
    categories: tuple[tuple[str, ...], ...]
    seen: tuple[np.ndarray | None, ...]
    modes: tuple[int, ...]

    @classmethod
    def from_dataset(cls, d: Dataset) -> "FeatureSchema":
        x = d.regular_values()
        attrs = d.regular_attributes
        seen = []
        modes = []
        for j, a in enumerate(attrs):
            if a.is_nominal:
                codes = x[:, j].astype(np.int64)
                counts = np.bincount(codes, minlength=len(a.categories))
                seen.append(np.flatnonzero(counts))
                modes.append(int(np.argmax(counts)) if codes.size else 0)
            else:
                seen.append(None)
                modes.append(-1)
        return cls(
            names=tuple(a.name for a in attrs),
            nominal=np.array([a.is_nominal for a in attrs], dtype=bool),
            n_categories=tuple(len(a.categories) for a in attrs),
            categories=tuple(a.categories for a in attrs),
            seen=tuple(seen),
            modes=tuple(modes),
        )

    @property
    def n_attributes(self) -> int:
        return len(self.names)

    def prepare(self, x: np.ndarray) -> np.ndarray:
        """
        Check arity and map unseen nominal categories to the training mode.
        """
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.n_attributes:
            raise LearnerError(
                f"instance arity {x.shape[1]} does not match the "
                f"{self.n_attributes} training attributes"
            )
        patched = None
        for j in np.flatnonzero(self.nominal):
            col = x[:, j]
            unseen = ~np.isin(col, self.seen[j])
            if unseen.any():
                if patched is None:
                    patched = np.array(x)
                for code in np.unique(col[unseen]):
                    cats = self.categories[j]
                    name = cats[int(code)] if 0 <= code < len(cats) else str(code)
                    _warn_unseen(self.names[j], name, cats[self.modes[j]])
                patched[unseen, j] = self.modes[j]
        return x if patched is None else patched


def training_arrays(d: Dataset) -> tuple[np.ndarray, np.ndarray, FeatureSchema]:
    if d.n_instances == 0:
        raise LearnerError("cannot train on an empty dataset")
    x = d.regular_values()
    if np.isnan(x).any():
        raise LearnerError("training data has missing cells, impute first")
    return np.array(x), d.target_codes(), FeatureSchema.from_dataset(d)


def argmax_with_prior(scores: np.ndarray, prior: np.ndarray) -> np.ndarray:
    """
    Row-wise argmax of ``scores`` (``(n, m)``). Ties go to the class with the
    larger ``prior``, then to the lower class index.
    """
    scores = np.atleast_2d(scores)
    best = scores.max(axis=1, keepdims=True)
    tied = scores == best
    ranked = np.where(tied, np.asarray(prior, dtype=np.float64)[None, :], -np.inf)
    return np.argmax(ranked, axis=1)


def vote_counts(predictions: np.ndarray, n_classes: int) -> np.ndarray:
    """
    ``(n, n_voters)`` class codes to ``(n, n_classes)`` vote counts.
    """
    predictions = np.asarray(predictions, dtype=np.int64)
    n = predictions.shape[0]
    counts = np.zeros((n, n_classes), dtype=np.int64)
    rows = np.arange(n)
    for col in predictions.T:
        np.add.at(counts, (rows, col), 1)
    return counts


@dataclasses.dataclass(frozen=True, eq=False)
class TrainedModel(abc.ABC):
    """
    Opaque trained predictor.

    :param classes: full category list of the training target.
    :param class_counts: training instances per class; drives tie-breaks.
    """

    algorithm: AlgorithmEnum
    classes: tuple[str, ...]
    class_counts: np.ndarray
    schema: FeatureSchema

    @property
    def training_labels(self) -> tuple[str, ...]:
        return tuple(c for c, n in zip(self.classes, self.class_counts) if n > 0)

    @abc.abstractmethod
    def _predict_codes(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict_codes(self, x: np.ndarray) -> np.ndarray:
        return self._predict_codes(self.schema.prepare(x))

    def predict_labels(self, x: np.ndarray) -> list[str]:
        return [self.classes[c] for c in self.predict_codes(x)]

    def predict_dataset(self, d: Dataset) -> np.ndarray:
        return self.predict_codes(d.regular_values())
