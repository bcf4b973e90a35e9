# -*- coding: utf-8 -*-

import logging

from vislog import VisLog

from .paths import PACKAGE_NAME

logger = VisLog(
    name=PACKAGE_NAME,
    log_format="%(message)s",
)
"""
Project level logger. Level progress, cluster sizes and recipe notes go here;
reports are written to stdout or ``--out`` and never through the logger.
"""


def set_quiet(quiet: bool = True) -> None:
    """
    Keep only warnings (``rpm run --quiet``), or restore info level output.
    """
    level = logging.WARNING if quiet else logging.INFO
    logging.getLogger(PACKAGE_NAME).setLevel(level)
