# -*- coding: utf-8 -*-

"""
Single entry point from a :class:`~robust_prediction.config.api.LearnerSpec`
to a trained model.
"""

import numpy as np

from ..constants import AlgorithmEnum
from ..config.api import LearnerSpec
from ..data_model import Dataset
from .base import TrainedModel
from .tree import train_cart, train_random_tree
from .forest import train_random_forest
from .instance_based import train_knn, train_kstar


def train(spec: LearnerSpec, d: Dataset, seed: int = 0, n_jobs: int = 1) -> TrainedModel:
    """
    Train the learner described by ``spec``. Seeded learners use
    ``seed + spec.seed``.
    """
    seed = seed + spec.seed
    algorithm = spec.algorithm
    n_attributes = len(d.regular_names)
    if algorithm is AlgorithmEnum.cart:
        return train_cart(d, min_leaf=spec.effective_min_leaf, max_depth=spec.max_depth)
    elif algorithm is AlgorithmEnum.random_tree:
        return train_random_tree(
            d,
            attributes_per_node=spec.effective_attributes_per_node(n_attributes),
            seed=seed,
            min_leaf=spec.effective_min_leaf,
            max_depth=spec.max_depth,
        )
    elif algorithm is AlgorithmEnum.random_forest:
        return train_random_forest(
            d,
            n_trees=spec.n_trees,
            attributes_per_node=spec.effective_attributes_per_node(n_attributes),
            seed=seed,
            bootstrap=spec.bootstrap,
            min_leaf=spec.effective_min_leaf,
            max_depth=spec.max_depth,
            n_jobs=n_jobs,
        )
    elif algorithm is AlgorithmEnum.knn:
        return train_knn(d, k=spec.k_neighbors, distance_weighting=spec.distance_weighting)
    elif algorithm is AlgorithmEnum.kstar:
        return train_kstar(d, blend=spec.blend)
    else:  # pragma: no cover
        raise NotImplementedError(algorithm)


def predict(model: TrainedModel, instance: np.ndarray) -> str:
    """
    Label of one encoded instance (regular attributes only, training order).
    """
    return model.predict_labels(np.asarray(instance, dtype=np.float64).reshape(1, -1))[0]
