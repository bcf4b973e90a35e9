# -*- coding: utf-8 -*-

"""
Centralized absolute path management.

This module provides a unified entry point for all project paths using absolute path references,
eliminating current directory dependencies so that recipes, tests and the command line
resolve the same config file and data directory no matter where they are launched from.
"""

from pathlib import Path

_dir_here = Path(__file__).absolute().parent
PACKAGE_NAME = _dir_here.name


class PathEnum:
    """
    Centralized enumeration of all project paths with absolute path references.
    """

    dir_project_root = _dir_here.parent

    # Source Code
    dir_package = _dir_here

    # Test
    dir_htmlcov = dir_project_root / "htmlcov"
    dir_unit_test = dir_project_root / "tests"
    dir_int_test = dir_project_root / "tests_int"

    # Datasets, one file per recipe, see tests_int/test_int_recipes.py
    dir_data = dir_project_root / "data"

    # Configuration
    dir_config = dir_project_root / "config"
    path_config_json = dir_config / "config.json"


path_enum = PathEnum()
"""
Single entry point for all project paths with absolute path references.
"""
