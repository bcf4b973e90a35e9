# -*- coding: utf-8 -*-

"""
Random forest: bagged random trees combined by majority vote.

Tree ``t`` draws its bootstrap sample from ``default_rng([seed, t])`` and its
per-node attribute subsets from seed ``seed + t``, so a one-tree forest
without bootstrap is exactly ``train_random_tree(d, seed=seed)``. Trees are
trained with :mod:`joblib` and always combined in tree order.
"""

import dataclasses

import numpy as np
from joblib import Parallel, delayed

from ..constants import AlgorithmEnum
from ..data_model import Dataset
from ..exc import LearnerError
from .base import TrainedModel, training_arrays, argmax_with_prior, vote_counts
from .tree import TreeStructure, grow_tree


@dataclasses.dataclass(frozen=True, eq=False)
class ForestModel(TrainedModel):
    trees: tuple[TreeStructure, ...]

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def _predict_codes(self, x: np.ndarray) -> np.ndarray:
        votes = np.column_stack([tree.predict_codes(x) for tree in self.trees])
        counts = vote_counts(votes, len(self.classes))
        return argmax_with_prior(counts, self.class_counts)


def _grow_one(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    nominal: np.ndarray,
    n_categories: tuple[int, ...],
    prior: np.ndarray,
    attributes_per_node: int,
    min_leaf: int,
    max_depth: int | None,
    seed: int,
    t: int,
    bootstrap: bool,
) -> TreeStructure:
    if bootstrap:
        rows = np.random.default_rng([seed, t]).integers(0, y.size, size=y.size)
        x, y = x[rows], y[rows]
    return grow_tree(
        x,
        y,
        n_classes=n_classes,
        nominal=nominal,
        n_categories=n_categories,
        prior=prior,
        min_leaf=min_leaf,
        max_depth=max_depth,
        attributes_per_node=attributes_per_node,
        rng=np.random.default_rng(seed + t),
    )


def train_random_forest(
    d: Dataset,
    n_trees: int = 100,
    attributes_per_node: int | None = None,
    seed: int = 0,
    bootstrap: bool = True,
    min_leaf: int = 1,
    max_depth: int | None = None,
    n_jobs: int = 1,
) -> ForestModel:
    if n_trees < 1:
        raise LearnerError(f"a forest needs at least one tree, got n_trees={n_trees}")
    if min_leaf < 1:
        raise LearnerError(f"min_leaf must be >= 1, got {min_leaf}")
    x, y, schema = training_arrays(d)
    n_attributes = schema.n_attributes
    if attributes_per_node is None:
        attributes_per_node = max(1, int(np.ceil(np.sqrt(n_attributes))))
    if attributes_per_node < 1:
        raise LearnerError(f"attributes_per_node must be >= 1, got {attributes_per_node}")
    prior = d.class_counts()
    # leaf ties of every tree fall back to the full training prior
    trees = Parallel(n_jobs=n_jobs)(
        delayed(_grow_one)(
            x,
            y,
            len(d.classes),
            schema.nominal,
            schema.n_categories,
            prior,
            attributes_per_node,
            min_leaf,
            max_depth,
            seed,
            t,
            bootstrap,
        )
        for t in range(n_trees)
    )
    return ForestModel(
        algorithm=AlgorithmEnum.random_forest,
        classes=d.classes,
        class_counts=prior,
        schema=schema,
        trees=tuple(trees),
    )
