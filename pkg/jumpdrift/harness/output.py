"""
Write experiment results as CSV tables and JSON summaries.
"""

import csv
import json
import logging
import os
from collections.abc import Sequence
from typing import Any

from .experiment import CostTable, ExperimentSpec, Method, RateFit, RateTable


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


RATE_HEADER = ('resolution', 'mean_cost', 'mean_cost_stderr', 'error_lp', 'error_stderr',
               'slope_partial')
"""The columns of a rate table CSV."""


COST_HEADER = ('delta', 'mean_cost', 'cost_times_delta', 'max_cost', 'branch1_fraction',
               'branch2_fraction', 'branch3_fraction')
"""The columns of a cost table CSV."""


def write_rate_csv(table: RateTable, file: str | os.PathLike) -> None:
    """Write a rate table, one row per resolution.

    :param RateTable table: The table.
    :param str|os.PathLike file: The destination.
    """
    with open(file, 'w', newline='', encoding='utf-8') as out:
        writer = csv.writer(out)
        writer.writerow(RATE_HEADER)
        for row in table.rows:
            writer.writerow((row.resolution, row.mean_cost, row.mean_cost_stderr, row.error_lp,
                             row.error_stderr,
                             '' if row.slope_partial is None else row.slope_partial))
    LOGGER.info("Wrote %d rows to %s.", len(table.rows), file)


def write_cost_csv(table: CostTable, file: str | os.PathLike) -> None:
    """Write a cost table, one row per resolution.

    :param CostTable table: The table.
    :param str|os.PathLike file: The destination.
    """
    with open(file, 'w', newline='', encoding='utf-8') as out:
        writer = csv.writer(out)
        writer.writerow(COST_HEADER)
        for row in table.rows:
            writer.writerow((row.delta, row.mean_cost, row.cost_times_delta, row.max_cost,
                             *row.branch_fractions))
    LOGGER.info("Wrote %d rows to %s.", len(table.rows), file)


def write_trajectory_csv(times: Sequence[float], values: Sequence[float],
                         file: str | os.PathLike) -> None:
    """Write the nodes of a run as ``t,x,i`` rows without a header.

    ``i`` counts the steps taken to reach the node, so the last row carries
    the cost ``N`` of the run.

    :param Sequence[float] times: The grid.
    :param Sequence[float] values: The states on it.
    :param str|os.PathLike file: The destination.
    """
    with open(file, 'w', newline='', encoding='utf-8') as out:
        csv.writer(out).writerows((t, x, i) for i, (t, x) in enumerate(zip(times, values)))


def _fit(fit: RateFit | None) -> dict[str, float] | None:
    if fit is None:
        return None
    return {'slope': fit.slope, 'intercept': fit.intercept, 'r2': fit.r2}


def rate_summary(spec: ExperimentSpec, table: RateTable,
                 method: Method | None = None) -> dict[str, Any]:
    """Summarise a rate table with the experiment echoed for provenance.

    :param ExperimentSpec spec: The experiment.
    :param RateTable table: Its results.
    :param Method|None method: The method the table belongs to; defaults to the primary one.
    :returns dict: The summary.
    """
    return {
        'problem': spec.problem.document,
        'experiment': spec.echo(),
        'method': str(method or spec.method),
        'fit_delta': _fit(table.fit_delta),
        'fit_cost': _fit(table.fit_cost),
        'branch_fractions': [list(row.branch_fractions) for row in table.rows],
    }


def cost_summary(spec: ExperimentSpec, table: CostTable) -> dict[str, Any]:
    """Summarise a cost table with the experiment echoed for provenance.

    :param ExperimentSpec spec: The experiment.
    :param CostTable table: Its results.
    :returns dict: The summary.
    """
    return {
        'problem': spec.problem.document,
        'experiment': spec.echo(),
        'cost_times_delta_spread': table.spread,
        'max_cost': [row.max_cost for row in table.rows],
    }


def write_summary_json(summary: dict[str, Any], file: str | os.PathLike) -> None:
    """Write a summary document.

    :param dict summary: The summary.
    :param str|os.PathLike file: The destination.
    """
    with open(file, 'w', encoding='utf-8') as out:
        json.dump(summary, out, indent=2)
        out.write('\n')
