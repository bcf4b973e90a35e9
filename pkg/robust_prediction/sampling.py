# -*- coding: utf-8 -*-

"""
Class balancing by sample bootstrapping and stratified fold construction.
"""

import dataclasses

import numpy as np

from .data_model import Dataset
from .exc import SamplingError


def bootstrap_balance(d: Dataset, per_class_n: int, seed: int) -> Dataset:
    """
    Draw exactly ``per_class_n`` instances of every target class.

    Classes larger than ``per_class_n`` are sampled without replacement,
    smaller ones with replacement. Class blocks are appended in category
    order, then the whole table is shuffled with the same generator.
    """
    if per_class_n <= 0:
        raise SamplingError(f"per_class_n must be positive, got {per_class_n}")
    codes = d.target_codes()
    counts = np.bincount(codes, minlength=len(d.classes))
    if len(d.classes) < 2:
        raise SamplingError("balancing needs at least two target classes")
    absent = [d.classes[c] for c, n in enumerate(counts) if n == 0]
    if absent:
        raise SamplingError(f"classes absent from the data: {absent}")

    rng = np.random.default_rng(seed)
    blocks = []
    for c in range(len(d.classes)):
        members = np.flatnonzero(codes == c)
        replace = members.size < per_class_n
        blocks.append(rng.choice(members, size=per_class_n, replace=replace))
    chosen = np.concatenate(blocks)
    chosen = chosen[rng.permutation(chosen.size)]
    return d.take_rows(chosen, provenance="D_1")


def majority_class_size(d: Dataset) -> int:
    return int(d.class_counts().max())


@dataclasses.dataclass(frozen=True, eq=False)
class FoldPlan:
    """
    Disjoint instance index lists covering the dataset, one per fold.
    """

    k: int
    folds: tuple[np.ndarray, ...]
    seed: int

    def test_indices(self, i: int) -> np.ndarray:
        return self.folds[i]

    def train_indices(self, i: int) -> np.ndarray:
        if self.k == 1:
            return self.folds[0]
        return np.sort(np.concatenate([f for j, f in enumerate(self.folds) if j != i]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FoldPlan):
            return NotImplemented
        return (
            self.k == other.k
            and self.seed == other.seed
            and all(np.array_equal(a, b) for a, b in zip(self.folds, other.folds))
        )

    __hash__ = None


def stratified_folds(d: Dataset, k: int, seed: int) -> FoldPlan:
    """
    Partition instance indices into ``k`` stratified folds.

    Each class is shuffled, the shuffled class blocks are concatenated in
    category order and dealt round-robin, so per-class counts and fold sizes
    both differ by at most one across folds.
    """
    if k < 1:
        raise SamplingError(f"fold count must be >= 1, got {k}")
    codes = d.target_codes()
    counts = np.bincount(codes, minlength=len(d.classes))
    if k > 1:
        short = [
            f"{d.classes[c]}={n}" for c, n in enumerate(counts) if 0 < n < k
        ]
        if short:
            raise SamplingError(
                f"every class needs at least {k} instances for {k}-fold cv: {', '.join(short)}"
            )
    rng = np.random.default_rng(seed)
    dealt = []
    for c in range(len(d.classes)):
        members = np.flatnonzero(codes == c)
        dealt.append(members[rng.permutation(members.size)])
    order = np.concatenate(dealt) if dealt else np.empty(0, dtype=np.int64)
    fold_of = np.arange(order.size) % k
    folds = tuple(np.sort(order[fold_of == i]) for i in range(k))
    return FoldPlan(k=k, folds=folds, seed=seed)
