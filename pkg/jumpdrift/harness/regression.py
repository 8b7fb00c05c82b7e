"""
Least-squares rate fits in log-log coordinates.
"""

from collections.abc import Sequence

import numpy as np

from jumpdrift.errors import DegenerateFitError
from .experiment import RateFit


def fit_rate(xs: Sequence[float], ys: Sequence[float]) -> RateFit:
    """Fit ``y = slope·x + intercept`` by ordinary least squares.

    :param Sequence[float] xs: The abscissae, typically log resolutions.
    :param Sequence[float] ys: The ordinates, typically log errors.
    :raises DegenerateFitError: If there are fewer than 3 points, a value is
                                not finite, or all ``xs`` are equal.
    :returns RateFit: The slope, the intercept and r².
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 3:
        raise DegenerateFitError('A rate fit needs at least 3 paired points.')
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DegenerateFitError('A rate fit needs finite points.')

    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateFitError('All abscissae are equal.')

    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    residual = y - (slope * x + intercept)
    ss_res = float(residual @ residual)
    dy = y - y.mean()
    ss_tot = float(dy @ dy)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RateFit(slope, intercept, r2)
