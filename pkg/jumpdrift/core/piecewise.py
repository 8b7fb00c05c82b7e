"""
Piecewise-smooth scalar functions with finitely many breakpoints.

A :class:`PiecewiseFn` stores ``k`` sorted breakpoints and ``k + 1`` smooth
pieces, each given as a (value, derivative) pair of callables.  At a
breakpoint the function takes a configured value and reports configured
one-sided limits; derivatives follow the almost-everywhere convention, so
the derivative is 0 wherever the function is not differentiable.
"""

import math
from bisect import bisect_left
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from jumpdrift.core.expressions import compile_expression
from jumpdrift.errors import NoDiscontinuitiesError, ProblemError


ScalarMap = Callable[[float], float]
"""A smooth scalar map, either a piece value or a piece derivative."""


@dataclass(frozen=True)
class Piece:
    """One smooth piece of a piecewise function.

    ``source`` keeps the expression text for pieces built from configuration
    so they can be written back out unchanged.
    """
    value: ScalarMap
    derivative: ScalarMap
    source: tuple[str, str] | None = field(default=None, compare=False)

    @classmethod
    def from_expressions(cls, value: str, derivative: str) -> 'Piece':
        """Build a piece from expression text.

        :param str value: The expression for the piece value, in ``x``.
        :param str derivative: The expression for its derivative, in ``x``.
        :returns Piece: The compiled piece.
        """
        return cls(compile_expression(value), compile_expression(derivative), (value, derivative))

    @classmethod
    def constant(cls, c: float) -> 'Piece':
        """Build a constant piece.

        :param float c: The constant value.
        :returns Piece: A piece with value ``c`` and derivative 0.
        """
        return cls.from_expressions(repr(float(c)), '0')


@dataclass(frozen=True)
class PiecewiseFn:
    """A scalar function given by smooth pieces between sorted breakpoints."""
    breakpoints: tuple[float, ...]
    pieces: tuple[Piece, ...]
    values_at_breakpoints: tuple[float, ...]
    one_sided_limits: tuple[tuple[float, float], ...]
    one_sided_derivatives: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        k = len(self.breakpoints)
        if any(not math.isfinite(xi) for xi in self.breakpoints):
            raise ProblemError('Breakpoints must be finite.')
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ProblemError('Breakpoints must be strictly increasing.')
        if len(self.pieces) != k + 1:
            raise ProblemError(f"{k} breakpoints need {k + 1} pieces, got {len(self.pieces)}.")
        if len(self.values_at_breakpoints) != k:
            raise ProblemError(f"Expected {k} values at breakpoints, "
                               f"got {len(self.values_at_breakpoints)}.")
        if len(self.one_sided_limits) != k or len(self.one_sided_derivatives) != k:
            raise ProblemError('One-sided limits must be given for every breakpoint.')

    @classmethod
    def build(cls, breakpoints: Sequence[float], pieces: Sequence[Piece],
              values_at_breakpoints: Sequence[float | None] | None = None,
              one_sided_limits: Sequence[tuple[float, float]] | None = None,
              one_sided_derivatives: Sequence[tuple[float, float]] | None = None
              ) -> 'PiecewiseFn':
        """Build a piecewise function, filling in anything not given from the pieces.

        One-sided limits default to the adjacent pieces evaluated at the
        breakpoint itself; the value at a breakpoint defaults to the right limit.

        :param Sequence[float] breakpoints: The strictly increasing breakpoints.
        :param Sequence[Piece] pieces: One more piece than there are breakpoints.
        :param values_at_breakpoints: Values at the breakpoints; ``None`` entries
                                      take the right limit.
        :param one_sided_limits: ``(f(ξ-), f(ξ+))`` per breakpoint.
        :param one_sided_derivatives: ``(f'(ξ-), f'(ξ+))`` per breakpoint.
        :returns PiecewiseFn: The function.
        """
        bps = tuple(float(xi) for xi in breakpoints)
        pcs = tuple(pieces)
        if len(pcs) != len(bps) + 1:
            raise ProblemError(f"{len(bps)} breakpoints need {len(bps) + 1} pieces, "
                               f"got {len(pcs)}.")

        if one_sided_limits is None:
            limits = tuple((pcs[i].value(xi), pcs[i + 1].value(xi)) for i, xi in enumerate(bps))
        else:
            limits = tuple((float(lo), float(hi)) for lo, hi in one_sided_limits)

        if one_sided_derivatives is None:
            derivs = tuple((pcs[i].derivative(xi), pcs[i + 1].derivative(xi))
                           for i, xi in enumerate(bps))
        else:
            derivs = tuple((float(lo), float(hi)) for lo, hi in one_sided_derivatives)

        if values_at_breakpoints is None:
            values_at_breakpoints = [None] * len(bps)
        if len(values_at_breakpoints) != len(bps):
            raise ProblemError(f"Expected {len(bps)} values at breakpoints, "
                               f"got {len(values_at_breakpoints)}.")
        values = tuple(limits[i][1] if val is None else float(val)
                       for i, val in enumerate(values_at_breakpoints))

        return cls(bps, pcs, values, limits, derivs)

    @classmethod
    def smooth(cls, piece: Piece) -> 'PiecewiseFn':
        """Build a function with a single piece and no breakpoints.

        :param Piece piece: The piece.
        :returns PiecewiseFn: The function.
        """
        return cls((), (piece,), (), (), ())

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def breakpoint_index(self, x: float) -> int | None:
        """Return the index of ``x`` among the breakpoints, or ``None`` if it is not one.

        :param float x: The point.
        :returns int|None: The breakpoint index.
        """
        i = bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return i
        return None

    def piece_index(self, x: float) -> int:
        """Return the index of the piece whose open interval contains ``x``.

        For a breakpoint this is the piece to its left.

        :param float x: The point.
        :returns int: The piece index.
        """
        return bisect_left(self.breakpoints, x)

    def is_continuous_at(self, i: int, tol: float = 1e-9) -> bool:
        """Tell whether the function is continuous at breakpoint ``i``.

        :param int i: The breakpoint index.
        :param float tol: Absolute and relative tolerance for the comparison.
        :returns bool: ``True`` if both one-sided limits equal the value there.
        """
        left, right = self.one_sided_limits[i]
        value = self.values_at_breakpoints[i]
        return (math.isclose(left, right, rel_tol=tol, abs_tol=tol)
                and math.isclose(value, right, rel_tol=tol, abs_tol=tol))

    @property
    def is_continuous(self) -> bool:
        """``True`` when the function is continuous at every breakpoint."""
        return all(self.is_continuous_at(i) for i in range(len(self.breakpoints)))


def evaluate(f: PiecewiseFn, x: float) -> float:
    """Evaluate a piecewise function.

    :param PiecewiseFn f: The function.
    :param float x: The (finite) point.
    :returns float: The piece value, or the configured value if ``x`` is a breakpoint.
    """
    i = bisect_left(f.breakpoints, x)
    if i < len(f.breakpoints) and f.breakpoints[i] == x:
        return f.values_at_breakpoints[i]
    return f.pieces[i].value(x)


def evaluate_d(f: PiecewiseFn, x: float) -> float:
    """Evaluate the almost-everywhere derivative ``d_f`` of a piecewise function.

    At a breakpoint the derivative exists only if the function is continuous
    there and both one-sided derivatives agree; otherwise 0 is returned.

    :param PiecewiseFn f: The function.
    :param float x: The (finite) point.
    :returns float: ``f'(x)`` where it exists, else 0.
    """
    i = bisect_left(f.breakpoints, x)
    if i < len(f.breakpoints) and f.breakpoints[i] == x:
        left, right = f.one_sided_derivatives[i]
        if f.is_continuous_at(i) and math.isclose(left, right, rel_tol=1e-9, abs_tol=1e-12):
            return right
        return 0.0
    return f.pieces[i].derivative(x)


def one_sided_limits(f: PiecewiseFn, x: float) -> tuple[float, float]:
    """Return ``(f(x-), f(x+))``.

    :param PiecewiseFn f: The function.
    :param float x: The point.
    :returns: The left and right limits; equal away from breakpoints.
    :rtype: tuple[float, float]
    """
    i = f.breakpoint_index(x)
    if i is not None:
        return f.one_sided_limits[i]
    value = f.pieces[f.piece_index(x)].value(x)
    return value, value


def one_sided_derivatives(f: PiecewiseFn, x: float) -> tuple[float, float]:
    """Return ``(f'(x-), f'(x+))``.

    :param PiecewiseFn f: The function.
    :param float x: The point.
    :returns: The left and right derivatives; equal away from breakpoints.
    :rtype: tuple[float, float]
    """
    i = f.breakpoint_index(x)
    if i is not None:
        return f.one_sided_derivatives[i]
    slope = f.pieces[f.piece_index(x)].derivative(x)
    return slope, slope


def dist_to_theta(x: float, theta: Sequence[float]) -> float:
    """Return the distance from ``x`` to a sorted set of points.

    :param float x: The point.
    :param Sequence[float] theta: The sorted, non-empty point set.
    :raises NoDiscontinuitiesError: If ``theta`` is empty.
    :returns float: ``min_i |x - theta_i|``.
    """
    if not theta:
        raise NoDiscontinuitiesError('no discontinuities')

    i = bisect_left(theta, x)
    if i == 0:
        return abs(theta[0] - x)
    if i == len(theta):
        return abs(x - theta[-1])
    return min(theta[i] - x, x - theta[i - 1])
