# -*- coding: utf-8 -*-

"""
Main configuration module: dataset recipes and the layered ``config.json`` loader.

The json file (comments allowed) has one section per recipe id plus a
``_defaults`` section whose ``"*.<field>"`` keys fill that field in every
recipe that does not set it. Pipeline fields a recipe leaves out take the
:class:`~robust_prediction.config.config_01_pipeline.PipelineConfig` defaults.
"""

import typing as T
import os
import copy
import dataclasses
from pathlib import Path
from functools import cached_property

from pydantic import BaseModel, ConfigDict, Field
from configcraft.api import DEFAULTS, apply_inheritance
from aws_config.vendor.jsonutils import json_loads

from ..paths import path_enum
from ..exc import RecipeError
from ..constants import MISSING_TOKEN
from .config_01_pipeline import PipelineConfig

ENV_VAR_CONFIG = "RPM_CONFIG"


class TargetThreshold(BaseModel):
    """
    Binarize a numeric target column: ``value >= threshold`` becomes
    :attr:`at_or_above`, anything else numeric becomes :attr:`below`.
    Cells that are not numbers pass through unchanged.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    threshold: float
    at_or_above: str
    below: str


class Recipe(BaseModel):
    """
    How to read and preprocess one public dataset, plus its pipeline defaults.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    recipe_id: str
    description: str = ""
    file_format: T.Literal["csv", "arff"] = "csv"
    delimiter: str = ","
    missing_token: str = MISSING_TOKEN
    target: str
    drop_columns: tuple[str, ...] = ()
    drop_unnamed_columns: bool = False
    target_map: dict[str, str] = Field(default_factory=dict)
    target_threshold: TargetThreshold | None = None
    nominal_columns: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)


def apply_defaults(data: dict) -> dict[str, dict]:
    """
    Resolve the ``_defaults`` section into every recipe section with
    configcraft shared values: ``"*.<field>"`` sets ``field`` in each recipe
    that does not define it. Other key shapes raise :class:`RecipeError`.
    ``data`` is left untouched.
    """
    data = copy.deepcopy(data)
    for key in data.get(DEFAULTS, {}):
        if not (key.startswith("*.") and key.count(".") == 1):
            raise RecipeError(f"'{DEFAULTS}' keys must look like '*.<field>', got {key!r}")
    if DEFAULTS in data:
        apply_inheritance(data)
        data.pop(DEFAULTS, None)
    resolved = {}
    for recipe_id, section in data.items():
        section.setdefault("recipe_id", recipe_id)
        resolved[recipe_id] = section
    return resolved


@dataclasses.dataclass
class Config:
    """
    Recipe registry loaded from ``config.json``.
    """

    data: dict = dataclasses.field(default_factory=dict)

    @classmethod
    def load(cls, path: Path | str | None = None) -> "Config":
        """
        Read the config file. ``path`` wins over the ``RPM_CONFIG`` environment
        variable, which wins over the project's ``config/config.json``.
        """
        if path is None:
            path = os.environ.get(ENV_VAR_CONFIG, path_enum.path_config_json)
        path = Path(path)
        try:
            data = json_loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise RecipeError(f"config file not found: {path}") from e
        return cls(data=data)

    @cached_property
    def recipes(self) -> dict[str, Recipe]:
        return {
            recipe_id: Recipe.model_validate(section)
            for recipe_id, section in apply_defaults(self.data).items()
        }

    @property
    def recipe_ids(self) -> list[str]:
        return list(self.recipes)

    def get_recipe(self, recipe_id: str) -> Recipe:
        try:
            return self.recipes[recipe_id]
        except KeyError:
            raise RecipeError(
                f"unknown recipe {recipe_id!r}, choose one of {self.recipe_ids}"
            ) from None


def load_config(path: Path | str | None = None) -> Config:
    return Config.load(path)
