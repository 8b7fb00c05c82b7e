"""
Piecewise-smooth coefficients, the SDE problem container and assumption checks.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .piecewise import (Piece, PiecewiseFn, dist_to_theta, evaluate, evaluate_d,
                        one_sided_derivatives, one_sided_limits)
from .problem import LocalCoefficients, SdeProblem
from .validation import AssumptionCheck, ValidationReport, validate_problem
