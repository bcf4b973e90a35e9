# -*- coding: utf-8 -*-

import numpy as np
import pytest

from robust_prediction.exc import SamplingError
from robust_prediction.sampling import (
    bootstrap_balance,
    majority_class_size,
    stratified_folds,
)
from robust_prediction.tests.data import make_dataset, unbalanced


class TestBootstrapBalance:
    def test_exact_class_counts(self, unbalanced_dataset):
        out = bootstrap_balance(unbalanced_dataset, per_class_n=50, seed=7)
        assert out.n_instances == 100
        assert out.class_counts().tolist() == [50, 50]
        assert out.provenance == "D_1"

    def test_without_replacement_when_large_enough(self, unbalanced_dataset):
        out = bootstrap_balance(unbalanced_dataset, per_class_n=20, seed=7)
        codes = out.target_codes()
        for c in range(2):
            origins = out.row_origin[codes == c]
            assert len(set(origins.tolist())) == 20

    def test_rows_come_from_source(self, unbalanced_dataset):
        out = bootstrap_balance(unbalanced_dataset, per_class_n=60, seed=1)
        np.testing.assert_array_equal(
            out.values, unbalanced_dataset.values[out.row_origin]
        )

    def test_deterministic(self, unbalanced_dataset):
        a = bootstrap_balance(unbalanced_dataset, per_class_n=30, seed=3)
        b = bootstrap_balance(unbalanced_dataset, per_class_n=30, seed=3)
        assert a == b
        np.testing.assert_array_equal(a.row_origin, b.row_origin)

    def test_single_member_class(self):
        d = make_dataset({"a": [1, 2, 3]}, ["x", "x", "y"])
        out = bootstrap_balance(d, per_class_n=4, seed=0)
        minority = out.row_origin[out.target_codes() == 1]
        assert minority.tolist() == [2, 2, 2, 2]

    def test_invalid(self, unbalanced_dataset):
        with pytest.raises(SamplingError):
            bootstrap_balance(unbalanced_dataset, per_class_n=0, seed=0)
        single = make_dataset({"a": [1, 2]}, ["x", "x"])
        with pytest.raises(SamplingError):
            bootstrap_balance(single, per_class_n=3, seed=0)

    def test_majority_class_size(self, unbalanced_dataset):
        assert majority_class_size(unbalanced_dataset) == 80


class TestStratifiedFolds:
    def test_partition_and_stratification(self):
        d = unbalanced(n_major=53, n_minor=27)
        plan = stratified_folds(d, k=10, seed=5)
        allidx = np.concatenate(plan.folds)
        assert sorted(allidx.tolist()) == list(range(d.n_instances))
        sizes = [f.size for f in plan.folds]
        assert max(sizes) - min(sizes) <= 1
        codes = d.target_codes()
        for c in range(2):
            per_fold = [int((codes[f] == c).sum()) for f in plan.folds]
            assert max(per_fold) - min(per_fold) <= 1

    def test_train_is_complement(self, unbalanced_dataset):
        plan = stratified_folds(unbalanced_dataset, k=5, seed=0)
        for i in range(5):
            train = set(plan.train_indices(i).tolist())
            test = set(plan.test_indices(i).tolist())
            assert not train & test
            assert len(train | test) == unbalanced_dataset.n_instances

    def test_deterministic(self, unbalanced_dataset):
        assert stratified_folds(unbalanced_dataset, 10, 1) == stratified_folds(
            unbalanced_dataset, 10, 1
        )

    def test_single_fold(self, tiny_dataset):
        plan = stratified_folds(tiny_dataset, k=1, seed=0)
        assert plan.test_indices(0).tolist() == [0, 1, 2, 3]
        assert plan.train_indices(0).tolist() == [0, 1, 2, 3]

    def test_class_smaller_than_k(self):
        d = make_dataset({"a": list(range(12))}, ["x"] * 9 + ["y"] * 3)
        with pytest.raises(SamplingError):
            stratified_folds(d, k=4, seed=0)


if __name__ == "__main__":
    from robust_prediction.tests import run_cov_test

    run_cov_test(
        __file__,
        "robust_prediction.sampling",
        preview=False,
    )
