# -*- coding: utf-8 -*-

import pandas as pd
import pytest
from pydantic import ValidationError

from robust_prediction.config.api import Config, Recipe, TargetThreshold
from robust_prediction.constants import LoopRuleEnum
from robust_prediction.exc import RecipeError
from robust_prediction.cli.recipes import (
    preprocess_frame,
    load_recipe_dataset,
    resolve_pipeline,
    run_recipe,
)
from robust_prediction.tests.conftest import TOY_CONFIG


def _frame(**columns) -> pd.DataFrame:
    return pd.DataFrame(columns, dtype=str)


def _recipe(**kwargs) -> Recipe:
    return Recipe(recipe_id="X", target="t", **kwargs)


class TestPreprocessFrame:
    def test_drop_columns(self):
        frame = _frame(a=["1"], b=["2"], t=["y"])
        out = preprocess_frame(frame, _recipe(drop_columns=("b", "gone")))
        assert list(out.columns) == ["a", "t"]

    def test_drop_unnamed_columns(self):
        frame = pd.DataFrame({"Unnamed: 0": ["0"], "a": ["1"], "t": ["y"]}, dtype=str)
        out = preprocess_frame(frame, _recipe(drop_unnamed_columns=True))
        assert list(out.columns) == ["a", "t"]

    def test_target_map_passes_unknown_values(self):
        frame = _frame(a=["1", "2", "3"], t=["1", "2", "x"])
        out = preprocess_frame(frame, _recipe(target_map={"1": "sick", "2": "well"}))
        assert out["t"].tolist() == ["sick", "well", "x"]

    def test_target_threshold(self):
        frame = _frame(a=["1", "2", "3", "4"], t=["9", "10", "15.5", "PASS"])
        rule = TargetThreshold(threshold=10, at_or_above="PASS", below="FAIL")
        out = preprocess_frame(frame, _recipe(target_threshold=rule))
        assert out["t"].tolist() == ["FAIL", "PASS", "PASS", "PASS"]

    def test_idempotent(self):
        frame = _frame(a=["1", "2"], b=["3", "4"], t=["5", "12"])
        recipe = _recipe(
            drop_columns=("b",),
            target_threshold=TargetThreshold(threshold=10, at_or_above="P", below="F"),
        )
        once = preprocess_frame(frame, recipe)
        twice = preprocess_frame(once, recipe)
        pd.testing.assert_frame_equal(once, twice)

    def test_input_frame_untouched(self):
        frame = _frame(a=["1"], t=["1"])
        preprocess_frame(frame, _recipe(target_map={"1": "one"}))
        assert frame["t"].tolist() == ["1"]

    def test_missing_target(self):
        with pytest.raises(RecipeError):
            preprocess_frame(_frame(a=["1"]), _recipe())

    def test_cannot_drop_target(self):
        with pytest.raises(RecipeError):
            preprocess_frame(_frame(a=["1"], t=["y"]), _recipe(drop_columns=("t",)))


class TestResolvePipeline:
    def test_overrides(self):
        recipe = _recipe(pipeline={"top_v": 6, "seed": 1})
        cfg = resolve_pipeline(
            recipe,
            {"top_v": None, "seed": 9, "loop_rule": LoopRuleEnum.paper_literal},
        )
        assert cfg.top_v == 6
        assert cfg.seed == 9
        assert cfg.loop_rule is LoopRuleEnum.paper_literal
        assert recipe.pipeline.seed == 1

    def test_invalid_override(self):
        with pytest.raises(ValidationError):
            resolve_pipeline(_recipe(), {"top_v": 0})


class TestLoadAndRun:
    def test_load_recipe_dataset(self, toy_csv_path):
        recipe = Config(data=TOY_CONFIG).get_recipe("T")
        d = load_recipe_dataset(recipe, toy_csv_path)
        assert d.classes == ("FAIL", "PASS")
        assert d.class_counts().tolist() == [30, 60]
        assert "G1" not in d.names
        assert "Unnamed: 0" not in d.names
        assert d.provenance == "D_un T"

    def test_missing_file(self, tmp_path):
        recipe = Config(data=TOY_CONFIG).get_recipe("T")
        with pytest.raises(RecipeError):
            load_recipe_dataset(recipe, tmp_path / "nope.csv")

    def test_run_recipe(self, toy_csv_path):
        recipe, d, cfg, result = run_recipe(
            "T",
            toy_csv_path,
            overrides={"max_levels": 1},
            config=Config(data=TOY_CONFIG),
        )
        assert recipe.recipe_id == "T"
        assert cfg.max_levels == 1
        assert cfg.folds == 3
        assert result.balanced_size == 120
        assert result.baseline is not None
        assert result.notes[0] == "synthetic data"

    def test_skip_baseline(self, toy_csv_path):
        *_, result = run_recipe(
            "T",
            toy_csv_path,
            overrides={"max_levels": 1},
            skip_baseline=True,
            config=Config(data=TOY_CONFIG),
        )
        assert result.baseline is None

    def test_unknown_recipe(self, toy_csv_path):
        with pytest.raises(RecipeError):
            run_recipe("nope", toy_csv_path, config=Config(data=TOY_CONFIG))


if __name__ == "__main__":
    from robust_prediction.tests import run_cov_test

    run_cov_test(
        __file__,
        "robust_prediction.cli.recipes",
        preview=False,
    )
