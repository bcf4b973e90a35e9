# -*- coding: utf-8 -*-

import enum


class AttributeKindEnum(str, enum.Enum):
    numeric = "numeric"
    nominal = "nominal"


class AttributeRoleEnum(str, enum.Enum):
    regular = "regular"
    target = "target"


class AlgorithmEnum(str, enum.Enum):
    """
    Base learner identifiers accepted by :class:`~robust_prediction.config.api.LearnerSpec`.
    """

    cart = "cart"
    random_tree = "random_tree"
    random_forest = "random_forest"
    knn = "knn"
    kstar = "kstar"


class LoopRuleEnum(str, enum.Enum):
    """
    How the level loop decides whether to iterate again.

    - ``improvement``: keep going while mean accuracy strictly improves,
      finish with the best level.
    - ``paper_literal``: keep going while mean accuracy drops (literal reading
      of the published algorithm), finish with the level before the stop.
    """

    improvement = "improvement"
    paper_literal = "paper_literal"


class ReportFormatEnum(str, enum.Enum):
    text = "text"
    json = "json"


# Default missing-cell token of the CSV/ARFF readers. Empty cells are always missing.
MISSING_TOKEN = "?"

# Tolerances shared by the numeric invariants.
EPS = 1e-9
