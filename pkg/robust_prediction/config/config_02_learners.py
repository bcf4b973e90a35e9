# -*- coding: utf-8 -*-

"""
Base learner specifications.
"""

import math

from pydantic import BaseModel, ConfigDict, Field

from ..constants import AlgorithmEnum

# algorithm specific defaults when a field is left to ``None``
_DEFAULT_MIN_LEAF = {
    AlgorithmEnum.cart: 2,
    AlgorithmEnum.random_tree: 1,
    AlgorithmEnum.random_forest: 1,
}


class LearnerSpec(BaseModel):
    """
    Algorithm id plus hyperparameters of one base learner.

    Only the fields relevant to :attr:`algorithm` are read; the others are
    ignored. ``seed`` is an offset added to the seed handed out by the caller.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    algorithm: AlgorithmEnum
    # trees
    min_leaf: int | None = Field(default=None, ge=1)
    max_depth: int | None = Field(default=None, ge=1)
    attributes_per_node: int | None = Field(default=None, ge=1)
    # forest
    n_trees: int = Field(default=100, ge=1)
    bootstrap: bool = True
    # knn
    k_neighbors: int = Field(default=5, ge=1)
    distance_weighting: bool = False
    # kstar
    blend: float = Field(default=20.0, gt=0.0, le=100.0)
    seed: int = 0

    @property
    def effective_min_leaf(self) -> int:
        if self.min_leaf is not None:
            return self.min_leaf
        return _DEFAULT_MIN_LEAF.get(self.algorithm, 1)

    def effective_attributes_per_node(self, n_attributes: int) -> int:
        if self.attributes_per_node is not None:
            return min(self.attributes_per_node, n_attributes)
        return max(1, math.ceil(math.sqrt(n_attributes)))

    @property
    def label(self) -> str:
        return self.algorithm.value


def default_ensemble() -> tuple[LearnerSpec, ...]:
    """
    Random tree, K*, CART and random forest.
    """
    return (
        LearnerSpec(algorithm=AlgorithmEnum.random_tree),
        LearnerSpec(algorithm=AlgorithmEnum.kstar),
        LearnerSpec(algorithm=AlgorithmEnum.cart),
        LearnerSpec(algorithm=AlgorithmEnum.random_forest),
    )
