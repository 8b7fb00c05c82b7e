"""
The scalar SDE problem ``dX = μ(X) dt + σ(X) dW``, ``X_0 = x0``.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from jumpdrift.core.piecewise import PiecewiseFn, evaluate, evaluate_d
from jumpdrift.errors import ProblemError


class LocalCoefficients(NamedTuple):
    """The coefficients a quasi-Milstein step needs at the current state."""
    drift: float
    diffusion: float
    correction: float
    """``σ·d_σ`` at the state."""


@dataclass(frozen=True)
class SdeProblem:
    """An SDE with piecewise-smooth coefficients.

    ``theta`` is the set of drift discontinuities the step controller
    refines around; it defaults to the drift's breakpoints.  ``document``
    optionally carries the configuration the problem was built from, which
    lets worker processes rebuild it.
    """
    x0: float
    mu: PiecewiseFn
    sigma: PiecewiseFn
    theta: tuple[float, ...] = ()
    eps0: float = 1.0
    name: str = ''
    document: dict[str, Any] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.x0):
            raise ProblemError('x0 must be finite.')
        if any(b <= a for a, b in zip(self.theta, self.theta[1:])):
            raise ProblemError('theta must be strictly increasing.')

    @classmethod
    def create(cls, x0: float, mu: PiecewiseFn, sigma: PiecewiseFn,
               theta: Sequence[float] | None = None, eps0: float = 1.0, name: str = '',
               document: dict[str, Any] | None = None) -> 'SdeProblem':
        """Create a problem, taking Θ from the drift's breakpoints unless given.

        :param float x0: The initial value.
        :param PiecewiseFn mu: The drift coefficient.
        :param PiecewiseFn sigma: The diffusion coefficient.
        :param Sequence[float]|None theta: The discontinuity set, if it differs from
                                           the drift's breakpoints.
        :param float eps0: The controller constant ε₀ in (0, 1].
        :param str name: A label for reports.
        :param dict|None document: The configuration the problem came from.
        :returns SdeProblem: The problem.
        """
        points = mu.breakpoints if theta is None else tuple(sorted(float(t) for t in theta))
        return cls(float(x0), mu, sigma, points, float(eps0), name, document)

    @property
    def drift_is_continuous(self) -> bool:
        """``True`` when μ has no jumps."""
        return self.mu.is_continuous

    def coefficients(self, x: float) -> LocalCoefficients:
        """Return ``(μ(x), σ(x), σ·d_σ(x))``.

        :param float x: The state.
        :returns LocalCoefficients: The coefficients at ``x``.
        """
        sig = evaluate(self.sigma, x)
        return LocalCoefficients(evaluate(self.mu, x), sig, sig * evaluate_d(self.sigma, x))
