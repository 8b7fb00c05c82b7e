"""
The transform family ``G(x) = x + Σ αᵢ (x - zᵢ)|x - zᵢ| φ((x - zᵢ)/ν)`` and its derivatives.

Each term is supported on ``[zᵢ - ν, zᵢ + ν]``.  Because ``ν`` stays below half
the smallest gap between the ``zᵢ``, the supports are disjoint and at most one
term is active at any point.  ``G`` fixes every ``zᵢ``, is the identity away
from the supports, and adds a quadratic kink of curvature ``∓2αᵢ`` at ``zᵢ``.
"""

import math
from bisect import bisect_left
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from jumpdrift.config import get_float, get_int
from jumpdrift.core.piecewise import evaluate, one_sided_limits
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import AssumptionError, ProblemError
from .bump import bump, bump_third


Side = Literal['left', 'right', 'extended']
"""Which value of a second (or third) derivative to return at a kink."""


@dataclass(frozen=True)
class TransformParams:
    """The parameters ``(z, α, ν)`` of one transform, with its admissibility bound ``ρ``."""
    z: tuple[float, ...]
    alpha: tuple[float, ...]
    nu: float
    rho: float
    inverse_tol: float = 1e-12
    inverse_max_iter: int = 100

    def __post_init__(self) -> None:
        if len(self.z) != len(self.alpha):
            raise ProblemError('z and alpha must have the same length.')
        if any(b <= a for a, b in zip(self.z, self.z[1:])):
            raise ProblemError('z must be strictly increasing.')
        if not 0.0 < self.nu < self.rho:
            raise ProblemError(f"nu = {self.nu} must lie in (0, rho = {self.rho}).")
        if self.inverse_tol <= 0.0 or self.inverse_max_iter < 1:
            raise ProblemError('Inverse tolerance and iteration limit must be positive.')

    @classmethod
    def for_problem(cls, p: SdeProblem, nu: float | None = None) -> 'TransformParams':
        """Build the transform that removes the drift jumps of a problem.

        :param SdeProblem p: The problem; Θ becomes ``z``.
        :param float|None nu: The bump half-width; defaults to ``ρ/2``
                              (or 1 when ``ρ`` is infinite).
        :returns TransformParams: The parameters.
        """
        alpha = compute_alpha(p)
        rho = compute_rho(p.theta, alpha)
        if nu is None:
            nu = rho / 2.0 if math.isfinite(rho) else 1.0
        return cls(tuple(p.theta), tuple(alpha), float(nu), rho,
                   get_float('INVERSE_TOL'), get_int('INVERSE_MAX_ITER'))

    @property
    def is_identity(self) -> bool:
        """``True`` when every ``αᵢ`` is zero, so that ``G`` is the identity."""
        return all(a == 0.0 for a in self.alpha)

    def active_term(self, x: float) -> int | None:
        """Return the index of the term whose open support contains ``x``, if any.

        :param float x: The point.
        :returns int|None: The term index.
        """
        i = bisect_left(self.z, x)
        for j in (i - 1, i):
            if 0 <= j < len(self.z) and abs(x - self.z[j]) < self.nu and self.alpha[j] != 0.0:
                return j
        return None


def compute_alpha(p: SdeProblem) -> list[float]:
    """Compute ``αᵢ = (μ(ξᵢ-) - μ(ξᵢ+)) / (2σ²(ξᵢ))`` for every ``ξᵢ`` in Θ.

    :param SdeProblem p: The problem.
    :raises AssumptionError: If σ vanishes at some ``ξᵢ``.
    :returns list[float]: One coefficient per discontinuity.
    """
    alpha: list[float] = []
    for xi in p.theta:
        left, right = one_sided_limits(p.mu, xi)
        sig = evaluate(p.sigma, xi)
        if sig == 0.0:
            raise AssumptionError(f"sigma vanishes at {xi!r}")
        alpha.append((left - right) / (2.0 * sig * sig))
    return alpha


def compute_rho(z: Sequence[float], alpha: Sequence[float]) -> float:
    """Compute the admissibility bound ``ρ`` on ``ν``.

    :param Sequence[float] z: The sorted kink locations.
    :param Sequence[float] alpha: The kink strengths.
    :raises ProblemError: If the lengths differ.
    :returns float: ``min({1/(8|αᵢ|)} ∪ {(zᵢ - zᵢ₋₁)/2})`` with ``1/0 = ∞``.
    """
    if len(z) != len(alpha):
        raise ProblemError('z and alpha must have the same length.')
    candidates = [math.inf if a == 0.0 else 1.0 / (8.0 * abs(a)) for a in alpha]
    candidates.extend((b - a) / 2.0 for a, b in zip(z, z[1:]))
    return min(candidates, default=math.inf)


def _term(tp: TransformParams, x: float, side: Side) -> tuple[float, float, float, float]:
    """Return the active term of ``G - id`` and its first three derivatives at ``x``."""
    j = tp.active_term(x)
    if j is None:
        return 0.0, 0.0, 0.0, 0.0

    a, nu = tp.alpha[j], tp.nu
    s = x - tp.z[j]
    sign = math.copysign(1.0, s) if s != 0.0 else (-1.0 if side == 'left' else 1.0)
    abs_s = abs(s)
    phi, dphi, d2phi = bump(s / nu)
    d3phi = bump_third(s / nu)

    q, q1, q2 = s * abs_s, 2.0 * abs_s, 2.0 * sign
    return (a * q * phi,
            a * (q1 * phi + q * dphi / nu),
            a * (q2 * phi + 2.0 * q1 * dphi / nu + q * d2phi / (nu * nu)),
            a * (3.0 * q2 * dphi / nu + 3.0 * q1 * d2phi / (nu * nu)
                 + q * d3phi / (nu * nu * nu)))


def g_eval(tp: TransformParams, x: float) -> float:
    """Evaluate ``G``.

    :param TransformParams tp: The transform.
    :param float x: The point.
    :returns float: ``G(x)``; exactly ``x`` at every ``zᵢ`` and outside the supports.
    """
    return x + _term(tp, x, 'right')[0]


def g_prime(tp: TransformParams, x: float) -> float:
    """Evaluate ``G'``, which is continuous and bounded below by a positive constant.

    :param TransformParams tp: The transform.
    :param float x: The point.
    :returns float: ``G'(x)``.
    """
    return 1.0 + _term(tp, x, 'right')[1]


def g_second(tp: TransformParams, x: float, side: Side = 'right',
             problem: SdeProblem | None = None) -> float:
    """Evaluate ``G''``.

    Away from the ``zᵢ`` both sides agree.  At ``zᵢ``, ``'left'`` and
    ``'right'`` give the one-sided limits ``-2αᵢ`` and ``2αᵢ``, and
    ``'extended'`` gives ``2αᵢ + 2(μ(ξᵢ+) - μ(ξᵢ))/σ²(ξᵢ)``, which makes the
    transformed drift continuous.

    :param TransformParams tp: The transform.
    :param float x: The point.
    :param Side side: Which value to return at a kink.
    :param SdeProblem|None problem: The problem the transform was built for;
                                    required for ``'extended'``.
    :raises ProblemError: If ``'extended'`` is asked for away from the ``zᵢ``
                          or without a problem.
    :returns float: ``G''(x)``.
    """
    if side == 'extended':
        i = bisect_left(tp.z, x)
        if i == len(tp.z) or tp.z[i] != x:
            raise ProblemError(f"The extended second derivative exists only at z, not {x!r}.")
        if problem is None:
            raise ProblemError('The extended second derivative needs the problem.')
        _, right = one_sided_limits(problem.mu, x)
        sig = evaluate(problem.sigma, x)
        if sig == 0.0:
            raise AssumptionError(f"sigma vanishes at {x!r}")
        return 2.0 * tp.alpha[i] + 2.0 * (right - evaluate(problem.mu, x)) / (sig * sig)
    return _term(tp, x, side)[2]


def g_third(tp: TransformParams, x: float, side: Side = 'right') -> float:
    """Evaluate ``G'''`` on the pieces between the ``zᵢ``.

    :param TransformParams tp: The transform.
    :param float x: The point.
    :param Side side: Which one-sided value to return at a kink.
    :returns float: ``G'''(x)``.
    """
    return _term(tp, x, side)[3]
