"""
The smooth bump ``φ(x) = (1 - x²)⁴`` on ``[-1, 1]``, zero outside, and its derivatives.
"""

from typing import NamedTuple


class BumpValue(NamedTuple):
    """The bump and its first two derivatives at a point."""
    phi: float
    dphi: float
    d2phi: float


_ZERO = BumpValue(0.0, 0.0, 0.0)


def bump(x: float) -> BumpValue:
    """Evaluate the bump and its first two derivatives.

    :param float x: The point.
    :returns BumpValue: ``(φ, φ', φ'')``; all zero for ``|x| >= 1``.
    """
    if abs(x) >= 1.0:
        return _ZERO
    w = 1.0 - x * x
    w2 = w * w
    return BumpValue(w2 * w2, -8.0 * x * w2 * w, w2 * (56.0 * x * x - 8.0))


def bump_third(x: float) -> float:
    """Evaluate the third derivative of the bump.

    :param float x: The point.
    :returns float: ``φ'''(x)``; zero for ``|x| >= 1``.
    """
    if abs(x) >= 1.0:
        return 0.0
    w = 1.0 - x * x
    return x * w * (144.0 - 336.0 * x * x)
