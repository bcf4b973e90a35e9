# -*- coding: utf-8 -*-

import numpy as np
import pytest

from robust_prediction.exc import LearnerError
from robust_prediction.learners.tree import (
    LEAF,
    best_split,
    gini,
    train_cart,
    train_random_tree,
)
from robust_prediction.tests.data import make_dataset, matrix_dataset, xor_dataset


def _training_accuracy(model, d) -> float:
    return float(np.mean(model.predict_dataset(d) == d.target_codes()))


def _brute_force_impurity(x, y, n_classes, nominal, min_leaf):
    """
    Lowest weighted child Gini over every admissible (attribute, threshold or
    category) pair, or None.
    """
    n = y.size
    best = None
    for j in range(x.shape[1]):
        col = x[:, j]
        if nominal[j]:
            masks = [col == c for c in np.unique(col)]
        else:
            values = np.unique(col)
            masks = [col <= (a + b) / 2 for a, b in zip(values[:-1], values[1:])]
        for mask in masks:
            nl = int(mask.sum())
            nr = n - nl
            if nl < min_leaf or nr < min_leaf or nl == 0 or nr == 0:
                continue
            impurity = (
                nl / n * gini(np.bincount(y[mask], minlength=n_classes))
                + nr / n * gini(np.bincount(y[~mask], minlength=n_classes))
            )
            if best is None or impurity < best:
                best = impurity
    return best


class TestBestSplit:
    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(11)
        for trial in range(60):
            n = int(rng.integers(2, 51))
            p = int(rng.integers(1, 7))
            n_classes = int(rng.integers(2, 4))
            nominal = rng.random(p) < 0.3
            x = np.column_stack(
                [
                    rng.integers(0, 4, size=n).astype(np.float64)
                    if nominal[j]
                    else np.round(rng.normal(size=n), 1)
                    for j in range(p)
                ]
            )
            y = rng.integers(0, n_classes, size=n)
            min_leaf = int(rng.integers(1, 3))
            split = best_split(
                x, y, n_classes, nominal, [4] * p, range(p), min_leaf=min_leaf
            )
            expected = _brute_force_impurity(x, y, n_classes, nominal, min_leaf)
            if expected is None:
                assert split is None
                continue
            assert split is not None
            assert split.impurity == pytest.approx(expected, abs=1e-12)
            # the reported impurity is the one of the partition it describes
            col = x[:, split.attribute]
            mask = col == split.category if split.is_nominal else col <= split.threshold
            nl, nr = mask.sum(), (~mask).sum()
            actual = nl / n * gini(np.bincount(y[mask], minlength=n_classes)) + nr / n * gini(
                np.bincount(y[~mask], minlength=n_classes)
            )
            assert split.impurity == pytest.approx(actual, abs=1e-12)

    def test_midpoint_threshold(self):
        x = np.array([[1.0], [2.0], [3.0], [4.0]])
        y = np.array([0, 0, 1, 1])
        split = best_split(x, y, 2, np.array([False]), [0], [0])
        assert split.attribute == 0
        assert split.threshold == 2.5
        assert split.impurity == 0.0

    def test_constant_attribute_has_no_split(self):
        x = np.ones((4, 1))
        y = np.array([0, 1, 0, 1])
        assert best_split(x, y, 2, np.array([False]), [0], [0]) is None


class TestCart:
    def test_pure_data_single_leaf(self):
        d = make_dataset({"x": [1, 2, 3]}, ["a", "a", "a"])
        model = train_cart(d)
        assert model.tree.n_nodes == 1
        assert model.predict_labels(np.array([[100.0]])) == ["a"]

    def test_root_split(self, tiny_dataset):
        model = train_cart(tiny_dataset)
        assert model.tree.attribute[0] == 0
        assert model.tree.threshold[0] == 2.5
        assert _training_accuracy(model, tiny_dataset) == 1.0

    def test_xor_depth_two(self):
        d = xor_dataset(repeat=2)
        model = train_cart(d, max_depth=2)
        assert model.tree.depth() == 2
        assert _training_accuracy(model, d) == 1.0

    def test_max_depth_respected(self, blob_dataset):
        model = train_cart(blob_dataset, max_depth=1)
        assert model.tree.depth() <= 1

    def test_fits_consistent_data(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=(60, 3))
        labels = [("p", "q", "r")[i] for i in rng.integers(0, 3, size=60)]
        d = matrix_dataset(x, labels)
        assert _training_accuracy(train_cart(d, min_leaf=1), d) == 1.0

    def test_nominal_split(self, mixed_dataset):
        model = train_cart(mixed_dataset)
        assert model.tree.category[0] >= 0
        assert _training_accuracy(model, mixed_dataset) == 1.0

    def test_leaf_counts_sum_to_training_size(self, blob_dataset):
        tree = train_cart(blob_dataset).tree
        assert tree.counts[tree.leaves].sum() == blob_dataset.n_instances
        assert all(tree.attribute[leaf] == LEAF for leaf in tree.leaves)

    def test_empty_dataset(self, tiny_dataset):
        with pytest.raises(LearnerError):
            train_cart(tiny_dataset.take_rows([]))

    def test_arity_mismatch(self, tiny_dataset):
        model = train_cart(tiny_dataset)
        with pytest.raises(LearnerError):
            model.predict_codes(np.zeros((1, 2)))

    def test_predict_is_repeatable(self, blob_dataset):
        model = train_cart(blob_dataset)
        x = blob_dataset.regular_values()
        np.testing.assert_array_equal(model.predict_codes(x), model.predict_codes(x))

    def test_unseen_category_maps_to_mode(self, mixed_dataset):
        codes = mixed_dataset.values[:, mixed_dataset.index_of("color")]
        green = mixed_dataset.attributes[0].categories.index("green")
        train = mixed_dataset.take_rows(np.flatnonzero(codes != green))
        model = train_cart(train)
        mode = model.schema.modes[0]
        unseen = model.predict_codes(np.array([[green, 3.0]]))
        known = model.predict_codes(np.array([[mode, 3.0]]))
        np.testing.assert_array_equal(unseen, known)


class TestRandomTree:
    def test_full_subset_equals_cart(self, blob_dataset):
        cart = train_cart(blob_dataset, min_leaf=1)
        rt = train_random_tree(blob_dataset, attributes_per_node=2, seed=9, min_leaf=1)
        for name in ("attribute", "threshold", "category", "left", "right", "counts"):
            np.testing.assert_array_equal(getattr(cart.tree, name), getattr(rt.tree, name))

    def test_same_seed_same_tree(self):
        rng = np.random.default_rng(4)
        d = matrix_dataset(rng.normal(size=(80, 6)), ["p", "q"] * 40)
        a = train_random_tree(d, seed=5)
        b = train_random_tree(d, seed=5)
        np.testing.assert_array_equal(a.tree.attribute, b.tree.attribute)
        np.testing.assert_array_equal(a.tree.threshold, b.tree.threshold)

    def test_fits_consistent_data(self):
        rng = np.random.default_rng(8)
        d = matrix_dataset(rng.normal(size=(70, 5)), ["p", "q"] * 35)
        assert _training_accuracy(train_random_tree(d, seed=1), d) == 1.0

    def test_pure_data_single_leaf(self):
        d = make_dataset({"x": [1, 2], "y": [3, 4]}, ["a", "a"])
        assert train_random_tree(d, seed=0).tree.n_nodes == 1

    def test_invalid_subset_size(self, tiny_dataset):
        with pytest.raises(LearnerError):
            train_random_tree(tiny_dataset, attributes_per_node=0)


if __name__ == "__main__":
    from robust_prediction.tests import run_cov_test

    run_cov_test(
        __file__,
        "robust_prediction.learners.tree",
        preview=False,
    )
