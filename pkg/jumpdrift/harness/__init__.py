"""
Monte Carlo error, cost and increment experiments on coupled Brownian paths.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .cost import cost_profile
from .estimate import estimate_error, estimate_errors, lp_error, rate_table
from .experiment import (CostRow, CostTable, ErrorKind, ExperimentSpec, Method, RateFit,
                         RateRow, RateTable)
from .output import (cost_summary, rate_summary, write_cost_csv, write_rate_csv,
                     write_summary_json, write_trajectory_csv)
from .reference import reference_solution
from .regression import fit_rate
from .runner import path_for
from .scaling import ScalingResult, increment_scaling
