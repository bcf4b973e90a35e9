# -*- coding: utf-8 -*-

"""
Run one test script (or the test folder around it) with pytest, optionally
with a coverage report limited to the module under test.

Usage, at the bottom of a test file::

    if __name__ == "__main__":
        from robust_prediction.tests import run_cov_test

        run_cov_test(__file__, "robust_prediction.sampling", preview=False)
"""

import sys
import subprocess
import webbrowser
from pathlib import Path


def _pytest_bin() -> list[str]:
    return [sys.executable, "-m", "pytest"]


def run_unit_test(
    script: str,
    root_dir: str,
):
    """
    Run the tests of ``script`` from ``root_dir``.
    """
    args = _pytest_bin() + ["-s", "--tb=native", f"--rootdir={root_dir}", script]
    subprocess.run(args, cwd=root_dir, check=False)


def run_cov_test(
    script: str,
    module: str,
    root_dir: str,
    htmlcov_dir: str,
    preview: bool = False,
    is_folder: bool = False,
):
    """
    Run the tests of ``script`` (or of its whole folder when ``is_folder``)
    measuring the coverage of ``module`` only.

    :param module: dotted module or package path, e.g. ``robust_prediction.learners``.
    :param preview: open the html report in a browser afterwards.
    """
    target = str(Path(script).parent) if is_folder else script
    args = _pytest_bin() + [
        "-s",
        "--tb=native",
        f"--rootdir={root_dir}",
        f"--cov={module}",
        "--cov-report",
        "term-missing",
        "--cov-report",
        f"html:{htmlcov_dir}",
        target,
    ]
    subprocess.run(args, cwd=root_dir, check=False)
    if preview:
        webbrowser.open(Path(htmlcov_dir).joinpath("index.html").as_uri())
