"""
The adaptive quasi-Milstein scheme, its transformed variant, and equidistant baselines.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .adaptive import run_adaptive_qm
from .controller import StepController, largest_admissible_delta
from .equidistant import SchemeKind, run_equidistant
from .trajectory import Trajectory, eval_trajectory, qm_step
from .transformed import TransformedRun, run_transformed_adaptive, run_transformed_equidistant
