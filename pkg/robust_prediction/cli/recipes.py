# -*- coding: utf-8 -*-

"""
Dataset recipes: read a public dataset file, apply its preprocessing, and run
the pipeline plus the PCA baseline with the recipe's configuration.

Preprocessing is idempotent: a target that is already mapped or binarized
passes through unchanged, and columns already dropped are skipped.
"""

import typing as T
from pathlib import Path

import pandas as pd

from ..config.api import Config, Recipe, PipelineConfig
from ..data_model import Dataset, read_frame, read_arff_frame, dataset_from_frame
from ..exc import RecipeError
from ..logger import logger
from ..rpm_pipeline import PipelineResult, run_rpm

UNNAMED_PREFIX = "Unnamed: "


def preprocess_frame(frame: pd.DataFrame, recipe: Recipe) -> pd.DataFrame:
    """
    Drop the recipe's columns and rewrite its target column.
    """
    if recipe.target not in frame.columns:
        raise RecipeError(
            f"recipe {recipe.recipe_id!r} expects target column {recipe.target!r}, "
            f"file has {list(frame.columns)}"
        )
    drop = [c for c in recipe.drop_columns if c in frame.columns]
    absent = [c for c in recipe.drop_columns if c not in frame.columns]
    if absent:
        logger.info(f"columns {absent} already absent, nothing to drop")
    if recipe.drop_unnamed_columns:
        drop += [c for c in frame.columns if str(c).startswith(UNNAMED_PREFIX)]
    if recipe.target in drop:
        raise RecipeError(f"recipe {recipe.recipe_id!r} would drop its own target")
    frame = frame.drop(columns=drop)

    target = frame[recipe.target].astype(str).str.strip()
    if recipe.target_map:
        target = target.map(lambda v: recipe.target_map.get(v, v))
    if recipe.target_threshold is not None:
        rule = recipe.target_threshold
        numbers = pd.to_numeric(target, errors="coerce")
        target = target.where(
            numbers.isna(),
            numbers.map(lambda v: rule.at_or_above if v >= rule.threshold else rule.below),
        )
    frame = frame.copy()
    frame[recipe.target] = target
    return frame


def load_recipe_dataset(recipe: Recipe, path: Path | str) -> Dataset:
    path = Path(path)
    if not path.exists():
        raise RecipeError(f"data file not found: {path}")
    nominal = list(recipe.nominal_columns)
    if recipe.file_format == "arff":
        frame, declared = read_arff_frame(path, missing_token=recipe.missing_token)
        nominal += declared
    else:
        frame = read_frame(path, delimiter=recipe.delimiter)
    frame = preprocess_frame(frame, recipe)
    nominal = [c for c in dict.fromkeys(nominal) if c in frame.columns and c != recipe.target]
    return dataset_from_frame(
        frame,
        target=recipe.target,
        missing_token=recipe.missing_token,
        nominal_columns=nominal,
        provenance=f"D_un {recipe.recipe_id}",
    )


def resolve_pipeline(recipe: Recipe, overrides: T.Mapping[str, T.Any] | None = None) -> PipelineConfig:
    """
    Recipe pipeline settings with the non-``None`` ``overrides`` applied,
    re-validated.
    """
    update = {k: v for k, v in (overrides or {}).items() if v is not None}
    data = recipe.pipeline.model_dump()
    data.update(update)
    return PipelineConfig.model_validate(data)


def run_recipe(
    recipe_id: str,
    data_path: Path | str,
    overrides: T.Mapping[str, T.Any] | None = None,
    skip_baseline: bool = False,
    config: Config | None = None,
) -> tuple[Recipe, Dataset, PipelineConfig, PipelineResult]:
    """
    Load, preprocess and run one recipe. Writing the report is left to
    :func:`~robust_prediction.cli.report.emit_report`.
    """
    if config is None:
        config = Config.load()
    recipe = config.get_recipe(recipe_id)
    cfg = resolve_pipeline(recipe, overrides)
    d = load_recipe_dataset(recipe, data_path)
    counts = dict(zip(d.classes, d.class_counts().tolist()))
    logger.info(f"recipe {recipe_id}: {d.n_instances} instances, classes {counts}")
    for note in recipe.notes:
        logger.warning(note)
    result = run_rpm(d, cfg, notes=recipe.notes, include_baseline=not skip_baseline)
    return recipe, d, cfg, result
