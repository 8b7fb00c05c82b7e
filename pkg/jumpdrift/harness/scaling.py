"""
Monte Carlo check that increments of the adaptive approximation scale like ``√Δ``.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from jumpdrift.brownian import BrownianPath
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import ProblemError
from jumpdrift.schemes import run_transformed_adaptive
from jumpdrift.transform import TransformParams
from .experiment import RateFit
from .regression import fit_rate


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


@dataclass(frozen=True)
class ScalingResult:
    """Root-mean-square increments per lag and their log-log fit."""
    lags: tuple[float, ...]
    rms: tuple[float, ...]
    fit: RateFit


def increment_scaling(problem: SdeProblem, delta: float, paths: int,
                      lags: Sequence[float], t0: float = 0.5, seed: int = 0,
                      mode: str | None = None, nu: float | None = None) -> ScalingResult:
    """Estimate ``E[|X̂_{t0+Δ} - X̂_{t0}|²]^{1/2}`` for each lag Δ.

    :param SdeProblem problem: The problem.
    :param float delta: The resolution of the transformed adaptive scheme.
    :param int paths: The number of Monte Carlo paths.
    :param Sequence[float] lags: The lags Δ, at least three.
    :param float t0: The start of every increment.
    :param int seed: The master seed.
    :param str|None mode: The controller mode.
    :param float|None nu: The bump half-width.
    :raises ProblemError: If an increment would end after time 1.
    :returns ScalingResult: The estimates; the fitted slope should be near 1/2.
    """
    if t0 < 0.0 or t0 + max(lags) > 1.0:
        raise ProblemError('Every increment must lie within [0, 1].')

    params = TransformParams.for_problem(problem, nu)
    squares = np.zeros(len(lags))
    for index in range(paths):
        run = run_transformed_adaptive(problem, delta, BrownianPath(seed, index, 0), mode,
                                       params=params)
        start = run.x_at(t0)
        squares += np.array([(run.x_at(t0 + lag) - start) ** 2 for lag in lags])

    rms = np.sqrt(squares / paths)
    fit = fit_rate([math.log(lag) for lag in lags], np.log(rms).tolist())
    LOGGER.info("Increment scaling slope %.3f over %d paths.", fit.slope, paths)
    return ScalingResult(tuple(float(lag) for lag in lags), tuple(rms.tolist()), fit)
