# -*- coding: utf-8 -*-

from .config_00_main import Config
from .config_00_main import Recipe
from .config_00_main import TargetThreshold
from .config_00_main import load_config
from .config_01_pipeline import KMeansSettings
from .config_01_pipeline import PipelineConfig
from .config_02_learners import LearnerSpec
from .config_02_learners import default_ensemble
