# -*- coding: utf-8 -*-

import json

import pytest

from .data import (
    make_dataset,
    blobs,
    xor_dataset,
    noisy_with_signal,
    unbalanced,
    toy_grades_frame,
)


@pytest.fixture
def tiny_dataset():
    """x = 1..4 labelled a, a, b, b."""
    return make_dataset({"x": [1, 2, 3, 4]}, ["a", "a", "b", "b"])


@pytest.fixture
def mixed_dataset():
    """Numeric and nominal attributes, nominal signal."""
    colors = ["red", "red", "blue", "green", "blue", "red", "green", "blue"] * 3
    sizes = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] * 3
    labels = ["hot" if c == "red" else "cold" for c in colors]
    return make_dataset({"color": colors, "size": sizes}, labels, nominal=["color"])


@pytest.fixture
def blob_dataset():
    return blobs(n_per_class=100, n_attributes=2, separation=6.0, seed=1)


@pytest.fixture
def xor():
    return xor_dataset()


@pytest.fixture
def signal_dataset():
    return noisy_with_signal(n=200, n_noise=6, seed=3)


@pytest.fixture
def unbalanced_dataset():
    return unbalanced()


TOY_CONFIG = {
    "_defaults": {
        "*.pipeline": {
            "folds": 3,
            "max_levels": 2,
            "top_v": 3,
            "seed": 0,
            "kmeans": {"n_init": 2},
            "learners": [{"algorithm": "cart"}, {"algorithm": "knn", "k_neighbors": 3}],
        }
    },
    "T": {
        "description": "toy grades",
        "target": "grade",
        "drop_columns": ["G1"],
        "drop_unnamed_columns": True,
        "target_threshold": {"threshold": 10, "at_or_above": "PASS", "below": "FAIL"},
        "notes": ["synthetic data"],
    },
}


@pytest.fixture
def toy_config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(TOY_CONFIG), encoding="utf-8")
    return path


@pytest.fixture
def toy_csv_path(tmp_path):
    path = tmp_path / "grades.csv"
    toy_grades_frame().to_csv(path, index=False)
    return path
