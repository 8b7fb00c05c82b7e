"""
The numerical inverse of the transform.
"""

import math

from jumpdrift.errors import InversionError
from .gmap import TransformParams, g_eval, g_prime


def g_inverse(tp: TransformParams, y: float, guess: float | None = None) -> float:
    """Solve ``G(x) = y`` for ``x``.

    Each bump maps ``[zᵢ - ν, zᵢ + ν]`` onto itself and moves no point by more
    than ``|αᵢ|ν²``, so ``y`` outside every support is its own preimage and a
    ``y`` inside one has its preimage in a short bracket.  On that bracket a
    Newton iteration runs, falling back to bisection whenever a step would
    leave the bracket.

    :param TransformParams tp: The transform.
    :param float y: The value to invert.
    :param float|None guess: A starting point, such as the preimage of a nearby
                             value; ignored unless it lies inside the bracket.
    :raises InversionError: If ``|G(x) - y| <= inverse_tol`` is not reached
                            within ``inverse_max_iter`` iterations, or the
                            bracket shrinks to a few ulps without reaching it.
    :returns float: The preimage ``x``.
    """
    j = tp.active_term(y)
    if j is None:
        return y

    z, reach = tp.z[j], abs(tp.alpha[j]) * tp.nu * tp.nu
    lo = max(z - tp.nu, y - reach)
    hi = min(z + tp.nu, y + reach)

    x = guess if guess is not None and lo < guess < hi else y
    best, best_residual = x, math.inf
    for iteration in range(1, tp.inverse_max_iter + 1):
        fx = g_eval(tp, x) - y
        if abs(fx) < best_residual:
            best, best_residual = x, abs(fx)
        if best_residual <= tp.inverse_tol:
            return best

        if fx < 0.0:
            lo = x
        else:
            hi = x
        scale = math.ulp(max(abs(lo), abs(hi), 1.0))
        if hi - lo <= 4.0 * scale:
            # Nothing closer is representable; accept rounding-level residuals only.
            if best_residual <= 4.0 * scale:
                return best
            raise InversionError(y, best, best_residual, iteration)

        step = x - fx / g_prime(tp, x)
        x = step if lo < step < hi else 0.5 * (lo + hi)

    raise InversionError(y, best, best_residual, tp.inverse_max_iter)
