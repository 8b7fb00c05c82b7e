"""
Experiment descriptions and result tables.
"""

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from jumpdrift.config import VALID_MODES, get_int
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import ImproperConfigurationError, ProblemError


class Method(StrEnum):
    """The schemes an experiment can measure."""
    ADAPTIVE_TRANSFORMED = 'adaptive_transformed'
    ADAPTIVE_QM = 'adaptive_qm'
    EQUIDISTANT_EM = 'equidistant_em'
    EQUIDISTANT_QM = 'equidistant_qm'
    TRANSFORMED_EQUIDISTANT_QM = 'transformed_equidistant_qm'

    @property
    def is_equidistant(self) -> bool:
        """``True`` for methods on the grid ``i/n`` with ``n = 1/δ``."""
        return self in (Method.EQUIDISTANT_EM, Method.EQUIDISTANT_QM,
                        Method.TRANSFORMED_EQUIDISTANT_QM)


class ErrorKind(StrEnum):
    """Where the pathwise error is measured."""
    FINAL_TIME = 'final_time'
    SUP_ON_GRID = 'sup_on_grid'


@dataclass(frozen=True)
class ExperimentSpec:
    """A Monte Carlo experiment: one method on one problem over a grid of resolutions.

    ``grid`` holds the resolutions δ; equidistant methods run ``n = round(1/δ)``
    steps.  ``baselines`` are further methods measured against the same
    reference run on the same paths.  ``document`` is the configuration the
    experiment was read from, which worker processes use to rebuild it.
    """
    problem: SdeProblem
    method: Method
    grid: tuple[float, ...]
    paths: int
    p: float = 2.0
    error_kind: ErrorKind = ErrorKind.FINAL_TIME
    sup_points: int = 64
    delta_ref: float | None = None
    master_seed: int = 0
    mode: str = 'theory'
    nu: float | None = None
    baselines: tuple[Method, ...] = ()
    document: dict[str, Any] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.grid:
            raise ProblemError('An experiment needs at least one resolution.')
        if any(not 0.0 < delta < 1.0 for delta in self.grid):
            raise ProblemError('Every resolution must lie in (0, 1).')
        if len(set(self.grid)) != len(self.grid):
            raise ProblemError('Resolutions must be distinct.')
        if self.paths < 2:
            raise ProblemError(f"An experiment needs at least 2 paths, not {self.paths}.")
        if not self.p >= 1.0:
            raise ProblemError(f"The error order p = {self.p} must be at least 1.")
        if self.sup_points < 1:
            raise ProblemError('The sup grid needs at least one point.')
        if self.master_seed < 0:
            raise ProblemError('The master seed must be non-negative.')
        if self.mode not in VALID_MODES:
            raise ProblemError(f"Unknown step-controller mode {self.mode!r}.")
        if len(set(self.methods)) != len(self.methods):
            raise ProblemError('Baselines must differ from each other and from the method.')
        if self.delta_ref is not None and not 0.0 < self.delta_ref <= min(self.grid) / 32.0:
            raise ProblemError(f"delta_ref = {self.delta_ref} must lie in "
                               f"(0, min(grid)/32 = {min(self.grid) / 32.0}].")

    @property
    def methods(self) -> tuple[Method, ...]:
        """The method followed by the baselines."""
        return (self.method, *self.baselines)

    @property
    def reference_delta(self) -> float:
        """δ_ref, defaulting to ``min(grid) / REFERENCE_DIVISOR``.

        :raises ImproperConfigurationError: If the divisor is below 32, which
                                            would put δ_ref above ``min(grid)/32``.
        """
        if self.delta_ref is not None:
            return self.delta_ref
        divisor = get_int('REFERENCE_DIVISOR')
        if divisor < 32:
            raise ImproperConfigurationError(
                f"REFERENCE_DIVISOR must be at least 32, not {divisor}.")
        return min(self.grid) / divisor

    @property
    def times(self) -> list[float]:
        """The times at which the pathwise error is measured."""
        if self.error_kind is ErrorKind.FINAL_TIME:
            return [1.0]
        return [i / self.sup_points for i in range(1, self.sup_points + 1)]

    def steps_for(self, delta: float) -> int:
        """Return the equidistant step count for a resolution.

        :param float delta: The resolution.
        :returns int: ``round(1/δ)``, at least 1.
        """
        return max(1, round(1.0 / delta))

    def echo(self) -> dict[str, Any]:
        """Describe the experiment as plain JSON data.

        :returns dict: Every setting, with δ_ref resolved.
        """
        return {
            'method': str(self.method),
            'grid': list(self.grid),
            'paths': self.paths,
            'p': self.p,
            'error_kind': str(self.error_kind),
            'sup_points': self.sup_points,
            'delta_ref': self.reference_delta,
            'master_seed': self.master_seed,
            'mode': self.mode,
            'nu': self.nu,
            'baselines': [str(method) for method in self.baselines],
        }


@dataclass(frozen=True)
class RateRow:
    """The Monte Carlo estimates at one resolution."""
    resolution: float
    mean_cost: float
    mean_cost_stderr: float
    error_lp: float
    error_stderr: float
    slope_partial: float | None
    """The slope of log error against log δ from the previous row, if any."""
    branch_fractions: tuple[float, float, float] = (1.0, 0.0, 0.0)
    errors: tuple[float, ...] = field(default=(), compare=False, repr=False)
    costs: tuple[int, ...] = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class RateFit:
    """An ordinary least-squares line ``y = slope·x + intercept``."""
    slope: float
    intercept: float
    r2: float


@dataclass(frozen=True)
class RateTable:
    """Error and cost estimates over a grid, with fitted rates.

    ``fit_delta`` regresses log error on log δ and ``fit_cost`` on log mean
    cost; either is ``None`` when the fit was skipped.
    """
    rows: tuple[RateRow, ...]
    fit_delta: RateFit | None
    fit_cost: RateFit | None


@dataclass(frozen=True)
class CostRow:
    """The cost statistics at one resolution."""
    delta: float
    mean_cost: float
    max_cost: int
    branch_fractions: tuple[float, float, float]

    @property
    def cost_times_delta(self) -> float:
        """``E[N]·δ``, bounded in δ when the cost is ``O(1/δ)``."""
        return self.mean_cost * self.delta


@dataclass(frozen=True)
class CostTable:
    """Cost statistics over a grid."""
    rows: tuple[CostRow, ...]

    @property
    def spread(self) -> float:
        """The ratio of the largest to the smallest ``E[N]·δ``."""
        values = [row.cost_times_delta for row in self.rows]
        return max(values) / min(values) if min(values) > 0.0 else math.inf
