"""
The discontinuity-removing transform ``G`` and the transformed SDE.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .bump import BumpValue, bump, bump_third
from .coefficients import TransformedProblem, transformed_problem
from .gmap import (Side, TransformParams, compute_alpha, compute_rho, g_eval, g_prime,
                   g_second, g_third)
from .inverse import g_inverse
