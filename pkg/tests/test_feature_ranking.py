# -*- coding: utf-8 -*-

import numpy as np
import pytest

from robust_prediction.exc import RankingError
from robust_prediction.feature_ranking import (
    AttributeWeights,
    contingency_chi_square,
    equal_frequency_bins,
    chi_square_weights,
    select_top_v,
    fit_pca,
    pca_reduce,
)
from robust_prediction.tests.data import make_dataset, matrix_dataset


class TestChiSquare:
    def test_two_by_two(self):
        assert contingency_chi_square(np.array([[30, 10], [10, 30]])) == pytest.approx(20.0)

    def test_independent_table(self):
        assert contingency_chi_square(np.array([[10, 20], [30, 60]])) == pytest.approx(0.0)

    def test_empty_rows_are_skipped(self):
        full = contingency_chi_square(np.array([[30, 10], [0, 0], [10, 30]]))
        assert full == pytest.approx(20.0)
        assert contingency_chi_square(np.zeros((2, 2))) == 0.0

    def test_matches_scipy(self):
        stats = pytest.importorskip("scipy.stats")
        rng = np.random.default_rng(6)
        for _ in range(20):
            table = rng.integers(1, 40, size=(int(rng.integers(2, 6)), int(rng.integers(2, 4))))
            expected = stats.chi2_contingency(table, correction=False)[0]
            assert contingency_chi_square(table) == pytest.approx(expected, rel=1e-10)

    def test_equal_frequency_bins(self):
        col = np.arange(1.0, 11.0)
        assert equal_frequency_bins(col, 5).tolist() == [0, 1, 1, 2, 2, 3, 3, 4, 4, 4]
        assert equal_frequency_bins(np.full(7, 3.0), 4).tolist() == [0] * 7

    def test_bins_start_at_zero(self):
        col = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 2.0, 5.0, 5.0])
        # the lower quartile and the median are both the minimum
        assert equal_frequency_bins(col, 4).tolist() == [0, 0, 0, 0, 0, 1, 1, 1]

    def test_weights(self, signal_dataset):
        w = chi_square_weights(signal_dataset)
        assert w.names == tuple(signal_dataset.regular_names)
        assert w.weight_of("copy") == pytest.approx(200.0)
        ranked = [name for name, _ in w.ranked()]
        assert ranked[:2] == ["copy", "signal"]
        assert np.all(w.weights >= 0.0)

    def test_nominal_attribute(self, mixed_dataset):
        w = chi_square_weights(mixed_dataset)
        assert w.weight_of("color") == pytest.approx(24.0)

    def test_ranking_ties_keep_column_order(self):
        w = AttributeWeights(names=("a", "b", "c"), weights=np.array([1.0, 2.0, 1.0]), bins=10)
        assert [name for name, _ in w.ranked()] == ["b", "a", "c"]

    def test_invalid(self, tiny_dataset):
        with pytest.raises(RankingError):
            chi_square_weights(tiny_dataset, bins=1)
        single = make_dataset({"x": [1, 2, 3]}, ["a", "a", "a"])
        with pytest.raises(RankingError):
            chi_square_weights(single)
        missing = make_dataset({"x": [1.0, np.nan]}, ["a", "b"])
        with pytest.raises(RankingError):
            chi_square_weights(missing)


class TestSelectTopV:
    def test_projection(self, signal_dataset):
        w = chi_square_weights(signal_dataset)
        d_f = select_top_v(signal_dataset, w, v=2)
        assert d_f.names == ["signal", "copy", "class"]
        assert d_f.provenance == "D_f"
        np.testing.assert_array_equal(d_f.target_codes(), signal_dataset.target_codes())

    def test_v_larger_than_attribute_count(self, tiny_dataset):
        w = chi_square_weights(tiny_dataset)
        assert select_top_v(tiny_dataset, w, v=50).regular_names == ["x"]

    def test_invalid(self, tiny_dataset, signal_dataset):
        w = chi_square_weights(tiny_dataset)
        with pytest.raises(RankingError):
            select_top_v(tiny_dataset, w, v=0)
        with pytest.raises(RankingError):
            select_top_v(signal_dataset, w, v=2)


def _nine_to_one():
    x = np.array([[3.0, 1.0], [-3.0, 1.0], [3.0, -1.0], [-3.0, -1.0]])
    return matrix_dataset(x, ["p", "q", "p", "q"])


class TestPca:
    def test_unstandardized_variance_split(self):
        model = fit_pca(_nine_to_one(), variance_to_keep=0.9, standardize=False)
        np.testing.assert_allclose(model.explained_ratio, [0.9, 0.1])
        assert model.n_components == 1
        np.testing.assert_allclose(model.components[:, 0], [1.0, 0.0], atol=1e-12)
        assert fit_pca(_nine_to_one(), 0.95, standardize=False).n_components == 2

    def test_standardized_equalizes_scales(self):
        model = fit_pca(_nine_to_one(), variance_to_keep=0.95)
        np.testing.assert_allclose(model.explained_ratio, [0.5, 0.5])
        np.testing.assert_allclose(model.stds, [np.sqrt(12.0), np.sqrt(4.0 / 3.0)])

    def test_matches_svd(self):
        rng = np.random.default_rng(12)
        x = rng.normal(size=(40, 5)) @ rng.normal(size=(5, 5))
        d = matrix_dataset(x, ["p", "q"] * 20)
        model = fit_pca(d, variance_to_keep=1.0, standardize=False)
        centred = x - x.mean(axis=0)
        singular = np.linalg.svd(centred, compute_uv=False)
        np.testing.assert_allclose(model.explained_variance, singular**2 / 39, rtol=1e-9)
        np.testing.assert_allclose(
            model.components.T @ model.components, np.eye(5), atol=1e-9
        )
        assert np.all(np.diff(model.explained_variance) <= 1e-12)
        pivots = np.argmax(np.abs(model.components), axis=0)
        assert np.all(model.components[pivots, np.arange(5)] > 0)

    def test_inverse_with_every_component(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=(30, 3))
        d = matrix_dataset(x, ["p", "q", "r"] * 10)
        model = fit_pca(d, variance_to_keep=1.0)
        np.testing.assert_allclose(model.inverse_transform(model.transform(x)), x, atol=1e-9)

    def test_smallest_component_count(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(50, 6))
        d = matrix_dataset(x, ["p", "q"] * 25)
        for keep in (0.3, 0.6, 0.95):
            model = fit_pca(d, variance_to_keep=keep)
            cumulative = np.cumsum(model.explained_ratio)
            r = model.n_components
            assert cumulative[r - 1] >= keep - 1e-9
            if r > 1:
                assert cumulative[r - 2] < keep

    def test_constant_attribute(self):
        d = make_dataset({"a": [1, 2, 3, 4], "b": [5, 5, 5, 5]}, ["p", "q", "p", "q"])
        model = fit_pca(d)
        assert model.stds[1] == 0.0
        np.testing.assert_allclose(model.explained_ratio, [1.0, 0.0])

    def test_reduce(self, signal_dataset):
        out = pca_reduce(signal_dataset, variance_to_keep=0.8)
        r = len(out.regular_names)
        assert 1 <= r <= len(signal_dataset.regular_names)
        assert out.names == [f"pc_{i}" for i in range(1, r + 1)] + ["class"]
        assert out.provenance == "PCA"
        np.testing.assert_array_equal(out.row_origin, signal_dataset.row_origin)
        np.testing.assert_array_equal(out.target_codes(), signal_dataset.target_codes())

    def test_invalid(self, tiny_dataset):
        for keep in (0.0, 1.5):
            with pytest.raises(RankingError):
                fit_pca(tiny_dataset, variance_to_keep=keep)
        with pytest.raises(RankingError):
            fit_pca(tiny_dataset.take_rows([0]))
        constant = make_dataset({"a": [2, 2, 2]}, ["p", "q", "p"])
        with pytest.raises(RankingError):
            fit_pca(constant)
        missing = make_dataset({"a": [1.0, np.nan, 2.0]}, ["p", "q", "p"])
        with pytest.raises(RankingError):
            fit_pca(missing)


if __name__ == "__main__":
    from robust_prediction.tests import run_cov_test

    run_cov_test(
        __file__,
        "robust_prediction.feature_ranking",
        preview=False,
    )
