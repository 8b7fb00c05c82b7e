"""
The step-size controller ``h^δ``.

Far from the discontinuity set Θ the step is δ.  Inside the ε₁-neighbourhood
it shrinks quadratically with the distance to Θ, and inside the
ε₂-neighbourhood it stays at its floor.  Logarithms are natural.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

from jumpdrift.config import VALID_MODES, get_float
from jumpdrift.core.piecewise import dist_to_theta
from jumpdrift.errors import ImproperConfigurationError, StepControllerError


_SMALLEST_LOG = -700.0
"""Lower end of the bisection for δ₀, in log δ; ``exp`` of it is still a normal float."""


def _eps1(delta: float) -> float:
    return math.sqrt(delta) * math.log(1.0 / delta) ** 2


def _log_cap() -> float:
    cap = get_float('CLAMPED_LOG_CAP')
    if not cap > 0.0:
        raise ImproperConfigurationError(f"CLAMPED_LOG_CAP must be positive, not {cap}.")
    return cap


def largest_admissible_delta(eps0: float) -> float:
    """Return the largest δ with ``√δ·log²(1/δ) <= ε₀/2``.

    The map ``δ ↦ √δ·log²(1/δ)`` increases on ``(0, e⁻⁴]``, so the bound is
    found by bisection there (in ``log δ``).  Any δ at or below the result
    also satisfies ``δ·log⁴(1/δ) <= √δ·log²(1/δ)``.

    :param float eps0: The controller constant ε₀ in (0, 1].
    :raises StepControllerError: If ε₀ is outside (0, 1].
    :returns float: δ₀.
    """
    if not 0.0 < eps0 <= 1.0:
        raise StepControllerError(f"eps0 = {eps0} must lie in (0, 1].")

    target = eps0 / 2.0
    lo, hi = _SMALLEST_LOG, -4.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _eps1(math.exp(mid)) <= target:
            lo = mid
        else:
            hi = mid
    return math.exp(lo)


@dataclass(frozen=True)
class StepController:
    """The step-size function ``h^δ`` for one δ, ε₀ and Θ.

    Build controllers with :meth:`build`, which derives ε₁ and ε₂ for the
    chosen mode.  ``theory`` mode uses ``ε₁ = √δ·ℓ²`` and ``ε₂ = δ·ℓ⁴`` with
    ``ℓ² = log²(1/δ)`` and refuses any δ above δ₀.  ``clamped`` mode caps the
    factor instead, ``ℓ² = min(log²(1/δ), CLAMPED_LOG_CAP, ε₀/(2√δ))``, so
    that ``ε₂ <= ε₁ <= ε₀/2`` for every δ while ε₁, ε₂ and the floor
    ``δ·ε₂ = δ²ℓ⁴`` keep their powers of δ.  Both modes share the step
    formula, so ``h`` stays continuous and clamped mode coincides with theory
    mode whenever no cap applies.
    """
    delta: float
    eps0: float
    theta: tuple[float, ...]
    mode: str
    eps1: float
    eps2: float

    @classmethod
    def build(cls, delta: float, eps0: float, theta: Sequence[float],
              mode: str = 'theory') -> 'StepController':
        """Build a controller.

        :param float delta: The resolution δ in (0, 1).
        :param float eps0: The controller constant ε₀ in (0, 1].
        :param Sequence[float] theta: The sorted discontinuity set; may be empty.
        :param str mode: ``'theory'`` or ``'clamped'``.
        :raises StepControllerError: If δ, ε₀ or the mode is invalid, or if
                                     theory mode is asked for a δ above δ₀.
        :returns StepController: The controller.
        """
        if not 0.0 < delta < 1.0:
            raise StepControllerError(f"delta = {delta} must lie in (0, 1).")
        if not 0.0 < eps0 <= 1.0:
            raise StepControllerError(f"eps0 = {eps0} must lie in (0, 1].")
        if mode not in VALID_MODES:
            raise StepControllerError(f"Unknown step-controller mode {mode!r}.")

        eps1 = _eps1(delta)
        if mode == 'theory':
            delta0 = largest_admissible_delta(eps0)
            eps2 = delta * math.log(1.0 / delta) ** 4
            if delta > delta0 or not eps2 <= eps1 <= eps0 / 2.0:
                raise StepControllerError(
                    f"delta = {delta} is not admissible in theory mode for eps0 = {eps0}; "
                    f"the largest admissible delta is {delta0:.6g}.")
        else:
            log_sq = min(math.log(1.0 / delta) ** 2, _log_cap(), eps0 / (2.0 * math.sqrt(delta)))
            eps1 = math.sqrt(delta) * log_sq
            eps2 = delta * log_sq * log_sq
        return cls(delta, eps0, tuple(sorted(theta)), mode, eps1, eps2)

    @property
    def h_min(self) -> float:
        """The floor of ``h``, taken inside the ε₂-neighbourhood of Θ."""
        if not self.theta:
            return self.delta
        return self.delta * self.eps2

    @property
    def max_steps(self) -> int:
        """An upper bound on the number of steps to reach time 1."""
        # One step of slack for rounding in the accumulated grid.
        return math.ceil(1.0 / self.h_min) + 1

    def branch(self, x: float) -> int:
        """Return which zone of ``h`` applies at ``x``.

        :param float x: The state.
        :returns int: 1 away from Θ, 2 in the annulus, 3 in the core.
        """
        if not self.theta:
            return 1
        d = dist_to_theta(x, self.theta)
        if d >= self.eps1:
            return 1
        if d >= self.eps2:
            return 2
        return 3

    def step_size(self, x: float) -> float:
        """Evaluate ``h^δ(x)``.

        :param float x: The state.
        :returns float: The step, between :attr:`h_min` and δ.
        """
        if not self.theta:
            return self.delta
        d = dist_to_theta(x, self.theta)
        if d >= self.eps1:
            return self.delta
        if d >= self.eps2:
            r = d / self.eps1
            return self.delta * r * r
        return self.h_min
