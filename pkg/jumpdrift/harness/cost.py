"""
Cost profiles: how many steps a method takes, and in which zone of ``h^δ``.
"""

import logging

import numpy as np

from .estimate import branch_fractions, warn_about
from .experiment import CostRow, CostTable, ExperimentSpec
from .runner import Rebuild, check_resolutions, cost_path, map_paths


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


def cost_profile(spec: ExperimentSpec, threads: int = 1,
                 rebuild: Rebuild | None = None) -> CostTable:
    """Estimate ``E[N]``, ``E[N]·δ``, ``max N`` and the zone occupancy at every resolution.

    :param ExperimentSpec spec: The experiment; no reference is run.
    :param int threads: The number of worker processes.
    :param Rebuild|None rebuild: Rebuilds the experiment from its document in workers.
    :raises StepControllerError: If a resolution is not admissible.
    :raises ExperimentError: If a path fails.
    :returns CostTable: One row per resolution.
    """
    check_resolutions(spec, reference=False)
    warn_about(spec)
    outcomes = [o[0] for o in map_paths(spec, cost_path, threads, rebuild)]

    rows: list[CostRow] = []
    for k, delta in enumerate(spec.grid):
        costs = np.array([o.costs[k] for o in outcomes])
        rows.append(CostRow(delta, float(costs.mean()), int(costs.max()),
                            branch_fractions(outcomes, k)))

    table = CostTable(tuple(rows))
    LOGGER.info("E[N]·delta spread over the grid: %.3f.", table.spread)
    return table
