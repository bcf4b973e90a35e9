# -*- coding: utf-8 -*-

"""
Binary classification trees grown by Gini impurity reduction.

- Numeric splits send ``value <= threshold`` left, the threshold being the
  midpoint between two consecutive distinct sorted values.
- Nominal splits are one-vs-rest: ``value == category`` goes left.

A node is split while it is impure, deeper than ``max_depth`` allows, and an
admissible split exists (both children keep at least ``min_leaf`` instances
and the attribute is not constant in the node). Zero-gain splits are
admissible; they let the tree fit patterns such as XOR.

The fitted tree is stored as flat arrays (:class:`TreeStructure`), grown with
an explicit stack so depth is not bounded by the interpreter recursion limit.
"""

import typing as T
import dataclasses

import numpy as np

from ..constants import AlgorithmEnum
from ..data_model import Dataset
from ..exc import LearnerError
from .base import TrainedModel, training_arrays, argmax_with_prior

LEAF = -1


@dataclasses.dataclass(frozen=True)
class Split:
    """
    Best split of a node. ``category >= 0`` marks a nominal one-vs-rest split.
    """

    attribute: int
    threshold: float
    category: int
    impurity: float
    gain: float

    @property
    def is_nominal(self) -> bool:
        return self.category >= 0


def gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.dot(p, p))


def _numeric_best(
    x: np.ndarray,
    y_onehot: np.ndarray,
    min_leaf: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Best threshold of every column of ``x`` at once.

    :returns: per column the best score ``sum(L^2)/nl + sum(R^2)/nr`` (``-inf``
        when no admissible threshold), its threshold and its sorted position.
    """
    n, q = x.shape
    order = np.argsort(x, axis=0, kind="stable")
    xs = np.take_along_axis(x, order, axis=0)
    left = np.cumsum(y_onehot[order], axis=0)[:-1]  # (n-1, q, m)
    total = y_onehot.sum(axis=0)
    right = total[None, None, :] - left
    nl = np.arange(1, n, dtype=np.float64)[:, None]
    nr = n - nl
    score = (left * left).sum(axis=2) / nl + (right * right).sum(axis=2) / nr
    valid = (xs[1:] > xs[:-1]) & (nl >= min_leaf) & (nr >= min_leaf)
    score = np.where(valid, score, -np.inf)
    pos = np.argmax(score, axis=0)
    cols = np.arange(q)
    best = score[pos, cols]
    threshold = (xs[pos, cols] + xs[pos + 1, cols]) / 2.0
    return best, threshold, pos


def _nominal_best(
    codes: np.ndarray,
    y: np.ndarray,
    n_categories: int,
    n_classes: int,
    total: np.ndarray,
    min_leaf: int,
) -> tuple[float, int]:
    n = codes.size
    table = np.bincount(
        codes * n_classes + y, minlength=n_categories * n_classes
    ).reshape(n_categories, n_classes).astype(np.float64)
    nl = table.sum(axis=1)
    nr = n - nl
    valid = (nl >= min_leaf) & (nr >= min_leaf) & (nl > 0) & (nr > 0)
    if not valid.any():
        return -np.inf, -1
    right = total[None, :] - table
    with np.errstate(divide="ignore", invalid="ignore"):
        score = (table * table).sum(axis=1) / nl + (right * right).sum(axis=1) / nr
    score = np.where(valid, score, -np.inf)
    category = int(np.argmax(score))
    return float(score[category]), category


def best_split(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    nominal: np.ndarray,
    n_categories: T.Sequence[int],
    candidates: T.Sequence[int],
    min_leaf: int = 1,
) -> Split | None:
    """
    Gini-optimal split among ``candidates`` (attribute indices, in priority
    order: ties go to the earlier candidate, then the lower threshold or
    category). ``None`` when no candidate admits a split.
    """
    n = y.size
    if n < 2 or len(candidates) == 0:
        return None
    y_onehot = np.eye(n_classes)[y]
    total = y_onehot.sum(axis=0)
    candidates = list(candidates)
    scores = np.full(len(candidates), -np.inf)
    thresholds = np.full(len(candidates), np.nan)
    categories = np.full(len(candidates), -1, dtype=np.int64)

    numeric_pos = [i for i, a in enumerate(candidates) if not nominal[a]]
    if numeric_pos:
        cols = [candidates[i] for i in numeric_pos]
        best, thr, _ = _numeric_best(x[:, cols], y_onehot, min_leaf)
        scores[numeric_pos] = best
        thresholds[numeric_pos] = thr
    for i, a in enumerate(candidates):
        if nominal[a]:
            score, category = _nominal_best(
                x[:, a].astype(np.int64), y, n_categories[a], n_classes, total, min_leaf
            )
            scores[i] = score
            categories[i] = category

    i = int(np.argmax(scores))
    if not np.isfinite(scores[i]):
        return None
    impurity = 1.0 - scores[i] / n
    return Split(
        attribute=candidates[i],
        threshold=float(thresholds[i]),
        category=int(categories[i]),
        impurity=float(impurity),
        gain=gini(total) - float(impurity),
    )


@dataclasses.dataclass(frozen=True, eq=False)
class TreeStructure:
    """
    Flat-array binary tree. Node 0 is the root; ``attribute[i] == -1`` marks
    a leaf. ``counts[i]`` are the training class counts reaching node ``i``.
    """

    attribute: np.ndarray
    threshold: np.ndarray
    category: np.ndarray
    left: np.ndarray
    right: np.ndarray
    counts: np.ndarray
    prediction: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.attribute.size

    @property
    def leaves(self) -> np.ndarray:
        return np.flatnonzero(self.attribute == LEAF)

    def depth(self) -> int:
        depth = np.zeros(self.n_nodes, dtype=np.int64)
        for i in range(self.n_nodes):
            if self.attribute[i] != LEAF:
                depth[self.left[i]] = depth[i] + 1
                depth[self.right[i]] = depth[i] + 1
        return int(depth.max())

    def goes_left(self, node: int, value: float) -> bool:
        if self.category[node] >= 0:
            return value == self.category[node]
        return value <= self.threshold[node]

    def apply(self, x: np.ndarray) -> np.ndarray:
        """
        Leaf id reached by every row of ``x``.
        """
        node = np.zeros(x.shape[0], dtype=np.int64)
        active = np.arange(x.shape[0])
        while active.size:
            current = node[active]
            attr = self.attribute[current]
            inner = attr != LEAF
            active = active[inner]
            current = current[inner]
            if not active.size:
                break
            attr = attr[inner]
            values = x[active, attr]
            cat = self.category[current]
            go_left = np.where(cat >= 0, values == cat, values <= self.threshold[current])
            node[active] = np.where(go_left, self.left[current], self.right[current])
        return node

    def predict_codes(self, x: np.ndarray) -> np.ndarray:
        return self.prediction[self.apply(x)]


def grow_tree(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    nominal: np.ndarray,
    n_categories: T.Sequence[int],
    prior: np.ndarray,
    min_leaf: int = 2,
    max_depth: int | None = None,
    attributes_per_node: int | None = None,
    rng: np.random.Generator | None = None,
) -> TreeStructure:
    """
    Grow a tree on encoded arrays.

    With ``attributes_per_node`` and ``rng`` set, each node first searches a
    random subset of that size; if none of them admits a split the remaining
    attributes are searched, in the same random order. A subset covering
    every attribute searches them in column order, like CART.
    """
    n_attributes = x.shape[1]
    attribute, threshold, category, left, right, counts = [], [], [], [], [], []

    def new_node(node_counts: np.ndarray) -> int:
        attribute.append(LEAF)
        threshold.append(np.nan)
        category.append(-1)
        left.append(-1)
        right.append(-1)
        counts.append(node_counts)
        return len(attribute) - 1

    root = new_node(np.bincount(y, minlength=n_classes))
    stack = [(root, np.arange(y.size), 0)]
    while stack:
        node, idx, depth = stack.pop()
        node_counts = counts[node]
        if np.count_nonzero(node_counts) <= 1:
            continue
        if max_depth is not None and depth >= max_depth:
            continue
        if idx.size < 2 * min_leaf:
            continue
        xn, yn = x[idx], y[idx]
        if attributes_per_node is None or rng is None or attributes_per_node >= n_attributes:
            split = best_split(xn, yn, n_classes, nominal, n_categories, range(n_attributes), min_leaf)
        else:
            order = rng.permutation(n_attributes)
            split = best_split(xn, yn, n_classes, nominal, n_categories, order[:attributes_per_node], min_leaf)
            if split is None:
                split = best_split(xn, yn, n_classes, nominal, n_categories, order[attributes_per_node:], min_leaf)
        if split is None:
            continue
        col = xn[:, split.attribute]
        if split.is_nominal:
            mask = col == split.category
        else:
            mask = col <= split.threshold
        li, ri = idx[mask], idx[~mask]
        attribute[node] = split.attribute
        threshold[node] = split.threshold if not split.is_nominal else np.nan
        category[node] = split.category
        left_id = new_node(np.bincount(y[li], minlength=n_classes))
        right_id = new_node(np.bincount(y[ri], minlength=n_classes))
        left[node], right[node] = left_id, right_id
        stack.append((right_id, ri, depth + 1))
        stack.append((left_id, li, depth + 1))

    counts_arr = np.array(counts, dtype=np.int64)
    prediction = argmax_with_prior(counts_arr, prior)
    return TreeStructure(
        attribute=np.array(attribute, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        category=np.array(category, dtype=np.int64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        counts=counts_arr,
        prediction=prediction,
    )


@dataclasses.dataclass(frozen=True, eq=False)
class TreeModel(TrainedModel):
    tree: TreeStructure

    def _predict_codes(self, x: np.ndarray) -> np.ndarray:
        return self.tree.predict_codes(x)


def _fit(
    d: Dataset,
    algorithm: AlgorithmEnum,
    min_leaf: int,
    max_depth: int | None,
    attributes_per_node: int | None = None,
    seed: int | None = None,
) -> TreeModel:
    if min_leaf < 1:
        raise LearnerError(f"min_leaf must be >= 1, got {min_leaf}")
    if max_depth is not None and max_depth < 1:
        raise LearnerError(f"max_depth must be >= 1, got {max_depth}")
    x, y, schema = training_arrays(d)
    prior = d.class_counts()
    tree = grow_tree(
        x,
        y,
        n_classes=len(d.classes),
        nominal=schema.nominal,
        n_categories=schema.n_categories,
        prior=prior,
        min_leaf=min_leaf,
        max_depth=max_depth,
        attributes_per_node=attributes_per_node,
        rng=None if seed is None else np.random.default_rng(seed),
    )
    return TreeModel(
        algorithm=algorithm,
        classes=d.classes,
        class_counts=prior,
        schema=schema,
        tree=tree,
    )


def train_cart(d: Dataset, min_leaf: int = 2, max_depth: int | None = None) -> TreeModel:
    """
    Simple CART: every node searches every attribute.
    """
    return _fit(d, AlgorithmEnum.cart, min_leaf=min_leaf, max_depth=max_depth)


def train_random_tree(
    d: Dataset,
    attributes_per_node: int | None = None,
    seed: int = 0,
    min_leaf: int = 1,
    max_depth: int | None = None,
) -> TreeModel:
    """
    Random tree: every node searches a seeded random subset of
    ``attributes_per_node`` attributes (default ``ceil(sqrt(#attrs))``).
    """
    n_attributes = len(d.regular_names)
    if attributes_per_node is None:
        attributes_per_node = max(1, int(np.ceil(np.sqrt(n_attributes))))
    if attributes_per_node < 1:
        raise LearnerError(f"attributes_per_node must be >= 1, got {attributes_per_node}")
    return _fit(
        d,
        AlgorithmEnum.random_tree,
        min_leaf=min_leaf,
        max_depth=max_depth,
        attributes_per_node=attributes_per_node,
        seed=seed,
    )
