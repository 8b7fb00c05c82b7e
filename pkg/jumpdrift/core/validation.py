"""
Sample-based checks of the standing assumptions on an SDE problem.

Only two checks are hard: σ must not vanish on Θ, and ε₀ must respect the
spacing of Θ.  The Lipschitz conditions on the pieces of μ, σ and their
derivatives can only be estimated from samples, so they are reported as
estimates and a failure there is a warning, not a rejection.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from jumpdrift.config import get_float, get_int
from jumpdrift.core.piecewise import Piece, PiecewiseFn, evaluate
from jumpdrift.core.problem import SdeProblem


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


LIMIT_OFFSET: float = 1e-8
"""How far from a breakpoint the adjacent piece is sampled to check a one-sided limit."""


LIMIT_TOLERANCE: float = 1e-6
"""Allowed gap between a configured one-sided limit and the sampled piece."""


FD_STEP: float = 1e-6
"""Step of the central differences used to check supplied derivatives."""


FD_TOLERANCE: float = 1e-4
"""Relative tolerance of the derivative check."""


@dataclass(frozen=True)
class AssumptionCheck:
    """The outcome of one assumption check."""
    name: str
    passed: bool
    hard: bool
    detail: str
    estimates: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ValidationReport:
    """Every assumption check run against a problem."""
    checks: tuple[AssumptionCheck, ...]

    @property
    def passed(self) -> bool:
        """``True`` when every hard check passed."""
        return all(check.passed for check in self.checks if check.hard)

    @property
    def failures(self) -> list[AssumptionCheck]:
        """The hard checks that failed."""
        return [check for check in self.checks if check.hard and not check.passed]

    @property
    def warnings(self) -> list[AssumptionCheck]:
        """The soft checks that failed."""
        return [check for check in self.checks if not check.hard and not check.passed]

    def check(self, name: str) -> AssumptionCheck:
        """Return the check with the given name.

        :param str name: The check name, for example ``'(sigma1)'``.
        :raises KeyError: If no check has that name.
        :returns AssumptionCheck: The check.
        """
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)


def _piece_interval(f: PiecewiseFn, i: int, centre: float, window: float) -> tuple[float, float]:
    """Return the sampling interval for piece ``i``; unbounded ends are cut at ``window``."""
    bps = f.breakpoints
    if not bps:
        return centre - window, centre + window
    lo = bps[i - 1] if i > 0 else bps[0] - window
    hi = bps[i] if i < len(bps) else bps[-1] + window
    return lo, hi


def _lipschitz(values: np.ndarray, xs: np.ndarray) -> float:
    """Return the largest difference quotient between consecutive samples."""
    if len(xs) < 2:
        return 0.0
    with np.errstate(invalid='ignore', over='ignore'):
        quotients = np.abs(np.diff(values) / np.diff(xs))
    if not np.all(np.isfinite(quotients)):
        return math.inf
    return float(np.max(quotients))


def _sample(piece: Piece, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sample a piece's value and derivative on a grid."""
    values = np.array([piece.value(float(x)) for x in xs])
    slopes = np.array([piece.derivative(float(x)) for x in xs])
    return values, slopes


def lipschitz_estimates(f: PiecewiseFn, samples: int, window: float,
                        centre: float = 0.0) -> tuple[list[float], list[float]]:
    """Estimate per-piece Lipschitz constants of ``f`` and of its derivative.

    :param PiecewiseFn f: The function.
    :param int samples: Grid points per piece.
    :param float window: How far unbounded pieces are sampled.
    :param float centre: The centre of the window when ``f`` has no breakpoints.
    :returns: The constants for ``f`` and for ``f'``, one per piece.
    :rtype: tuple[list[float], list[float]]
    """
    value_constants: list[float] = []
    slope_constants: list[float] = []
    for i, piece in enumerate(f.pieces):
        lo, hi = _piece_interval(f, i, centre, window)
        xs = np.linspace(lo, hi, samples + 2)[1:-1]
        values, slopes = _sample(piece, xs)
        value_constants.append(_lipschitz(values, xs))
        slope_constants.append(_lipschitz(slopes, xs))
    return value_constants, slope_constants


def _lipschitz_check(name: str, label: str, constants: list[float]) -> AssumptionCheck:
    estimates = {f"{label} piece {i}": value for i, value in enumerate(constants)}
    passed = all(math.isfinite(value) for value in constants)
    detail = ('finite sampled Lipschitz constants' if passed
              else 'a sampled Lipschitz constant is not finite')
    return AssumptionCheck(name, passed, False, detail, estimates)


def _limits_check(label: str, f: PiecewiseFn) -> AssumptionCheck:
    worst = 0.0
    for i, xi in enumerate(f.breakpoints):
        left, right = f.one_sided_limits[i]
        worst = max(worst,
                    abs(left - f.pieces[i].value(xi - LIMIT_OFFSET)),
                    abs(right - f.pieces[i + 1].value(xi + LIMIT_OFFSET)))
    passed = worst <= LIMIT_TOLERANCE
    return AssumptionCheck(f"{label} limits", passed, False,
                           f"largest one-sided limit mismatch {worst:.3e}",
                           {f"{label} limit mismatch": worst})


def _derivative_check(label: str, f: PiecewiseFn, samples: int, window: float,
                      centre: float) -> AssumptionCheck:
    worst = 0.0
    count = max(2, samples // 10)
    for i, piece in enumerate(f.pieces):
        lo, hi = _piece_interval(f, i, centre, window)
        inner = 10 * FD_STEP
        if hi - lo <= 2 * inner:
            continue
        for x in np.linspace(lo + inner, hi - inner, count):
            x = float(x)
            central = (piece.value(x + FD_STEP) - piece.value(x - FD_STEP)) / (2 * FD_STEP)
            supplied = piece.derivative(x)
            worst = max(worst, abs(central - supplied) / max(1.0, abs(supplied)))
    passed = worst <= FD_TOLERANCE
    return AssumptionCheck(f"{label} derivatives", passed, False,
                           f"largest relative finite-difference mismatch {worst:.3e}",
                           {f"{label} derivative mismatch": worst})


def validate_problem(p: SdeProblem, samples: int | None = None,
                     window: float | None = None) -> ValidationReport:
    """Check a problem against the standing assumptions.

    :param SdeProblem p: The problem.
    :param int|None samples: Grid points per piece for the Lipschitz estimates.
                             Defaults to ``LIPSCHITZ_SAMPLES``.
    :param float|None window: How far unbounded pieces are sampled.
                              Defaults to ``SAMPLE_WINDOW``.
    :returns ValidationReport: One entry per assumption.
    """
    if samples is None:
        samples = get_int('LIPSCHITZ_SAMPLES')
    if window is None:
        window = get_float('SAMPLE_WINDOW')

    checks: list[AssumptionCheck] = []

    checks.append(AssumptionCheck('eps0', 0.0 < p.eps0 <= 1.0, True,
                                  f"eps0 = {p.eps0} must lie in (0, 1]"))

    if len(p.theta) >= 2:
        half_gap = 0.5 * min(b - a for a, b in zip(p.theta, p.theta[1:]))
        checks.append(AssumptionCheck('gap', p.eps0 <= half_gap, True,
                                      f"eps0 = {p.eps0} against half the smallest gap "
                                      f"{half_gap}", {'half gap': half_gap}))
    else:
        checks.append(AssumptionCheck('gap', True, True, 'fewer than two discontinuities'))

    zeros = [xi for xi in p.theta if evaluate(p.sigma, xi) == 0.0]
    checks.append(AssumptionCheck('(sigma1)', not zeros, True,
                                  'sigma vanishes at ' + ', '.join(map(repr, zeros)) if zeros
                                  else 'sigma is non-zero on theta'))

    mu_values, mu_slopes = lipschitz_estimates(p.mu, samples, window, p.x0)
    sigma_values, sigma_slopes = lipschitz_estimates(p.sigma, samples, window, p.x0)
    checks.append(_lipschitz_check('(mu1)', 'mu', mu_values))
    checks.append(_lipschitz_check('(mu2)', 'mu\'', mu_slopes))

    sigma_lipschitz = _lipschitz_check('(sigma1) lipschitz', 'sigma', sigma_values)
    if not p.sigma.is_continuous:
        sigma_lipschitz = AssumptionCheck(sigma_lipschitz.name, False, False,
                                          'sigma jumps at a breakpoint',
                                          sigma_lipschitz.estimates)
    checks.append(sigma_lipschitz)
    checks.append(_lipschitz_check('(sigma2)', 'sigma\'', sigma_slopes))

    outside = [p.mu.breakpoints[i] for i in range(len(p.mu.breakpoints))
               if not p.mu.is_continuous_at(i) and p.mu.breakpoints[i] not in p.theta]
    checks.append(AssumptionCheck('theta', not outside, False,
                                  'drift jumps outside theta at ' + ', '.join(map(repr, outside))
                                  if outside else 'every drift jump lies in theta'))

    checks.append(_limits_check('mu', p.mu))
    checks.append(_limits_check('sigma', p.sigma))
    checks.append(_derivative_check('mu', p.mu, samples, window, p.x0))
    checks.append(_derivative_check('sigma', p.sigma, samples, window, p.x0))

    report = ValidationReport(tuple(checks))
    for check in report.warnings:
        LOGGER.warning("Assumption check %s failed: %s", check.name, check.detail)
    return report
