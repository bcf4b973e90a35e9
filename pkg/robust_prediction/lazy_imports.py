# -*- coding: utf-8 -*-

from soft_deps.api import MissingDependency

try:
    from scipy.io import arff
except ImportError as e:  # pragma: no cover
    arff = MissingDependency(
        name="scipy",
        error_message=f"please do 'pip install robust_prediction[arff]'",
    )
