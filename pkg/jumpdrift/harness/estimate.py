"""
Monte Carlo estimation of strong errors and mean costs over a grid of resolutions.
"""

import logging
import math

import numpy as np

from jumpdrift.errors import DegenerateFitError
from .experiment import ExperimentSpec, Method, RateFit, RateRow, RateTable
from .regression import fit_rate
from .runner import PathOutcome, Rebuild, check_resolutions, error_path, map_paths


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


def warn_about(spec: ExperimentSpec) -> None:
    """Log the warnings an experiment's settings call for.

    :param ExperimentSpec spec: The experiment.
    """
    if spec.mode == 'clamped':
        LOGGER.warning("Clamped step control: results do not carry the convergence "
                       "guarantees of theory mode.")
    if Method.ADAPTIVE_QM in spec.methods and not spec.problem.drift_is_continuous:
        LOGGER.warning("Running the untransformed adaptive scheme on a discontinuous drift; "
                       "this has no convergence guarantee.")


def branch_fractions(outcomes: list[PathOutcome], k: int) -> tuple[float, float, float]:
    """Return the share of all steps at resolution ``k`` taken in each zone.

    :param list[PathOutcome] outcomes: The per-path outcomes.
    :param int k: The resolution index.
    :returns: The fractions for zones 1, 2 and 3.
    :rtype: tuple[float, float, float]
    """
    totals = np.sum([o.branches[k] for o in outcomes], axis=0, dtype=float)
    steps = float(totals.sum())
    if steps == 0.0:
        return 1.0, 0.0, 0.0
    return float(totals[0] / steps), float(totals[1] / steps), float(totals[2] / steps)


def lp_error(errors: np.ndarray, p: float) -> tuple[float, float]:
    """Estimate ``E[|e|^p]^{1/p}`` and its standard error.

    The standard error of the mean of ``|e|^p`` is carried through the
    ``1/p``-th root by the delta method.

    :param np.ndarray errors: Pathwise errors.
    :param float p: The order.
    :returns: The estimate and its standard error.
    :rtype: tuple[float, float]
    """
    powers = np.abs(errors) ** p
    mean = float(powers.mean())
    if mean == 0.0:
        return 0.0, 0.0
    stderr = float(powers.std(ddof=1)) / math.sqrt(len(powers))
    return mean ** (1.0 / p), mean ** (1.0 / p - 1.0) * stderr / p


def _fit(xs: list[float], ys: list[float], label: str) -> RateFit | None:
    try:
        return fit_rate(xs, ys)
    except DegenerateFitError as exc:
        LOGGER.warning("Skipping the rate fit against %s: %s", label, exc)
        return None


def rate_table(spec: ExperimentSpec, outcomes: list[PathOutcome]) -> RateTable:
    """Reduce per-path outcomes to a rate table.

    :param ExperimentSpec spec: The experiment.
    :param list[PathOutcome] outcomes: One outcome per path, in index order.
    :returns RateTable: The estimates and, where possible, the fitted rates.
    """
    rows: list[RateRow] = []
    for k, delta in enumerate(spec.grid):
        errors = np.array([o.errors[k] for o in outcomes])
        costs = np.array([o.costs[k] for o in outcomes], dtype=float)
        error, error_stderr = lp_error(errors, spec.p)

        local: float | None = None
        if rows and rows[-1].error_lp > 0.0 and error > 0.0:
            local = ((math.log(error) - math.log(rows[-1].error_lp))
                     / (math.log(delta) - math.log(rows[-1].resolution)))

        rows.append(RateRow(delta, float(costs.mean()),
                            float(costs.std(ddof=1)) / math.sqrt(len(costs)),
                            error, error_stderr, local, branch_fractions(outcomes, k),
                            tuple(float(e) for e in errors), tuple(int(c) for c in costs)))

    fit_delta = fit_cost = None
    if len(rows) < 3:
        LOGGER.info("Fewer than 3 resolutions; no rates fitted.")
    elif any(row.error_lp <= 0.0 for row in rows):
        LOGGER.warning("An estimated error is zero; no rates fitted.")
    else:
        log_errors = [math.log(row.error_lp) for row in rows]
        fit_delta = _fit([math.log(row.resolution) for row in rows], log_errors, 'delta')
        fit_cost = _fit([math.log(row.mean_cost) for row in rows], log_errors, 'mean cost')
    return RateTable(tuple(rows), fit_delta, fit_cost)


def estimate_errors(spec: ExperimentSpec, threads: int = 1,
                    rebuild: Rebuild | None = None) -> dict[Method, RateTable]:
    """Estimate the strong ``L_p`` error and mean cost of the method and every baseline.

    Each path runs the reference once, then every method at every
    resolution on its own fork of the reference-populated path, so all
    methods are measured against the same reference values.

    :param ExperimentSpec spec: The experiment.
    :param int threads: The number of worker processes.
    :param Rebuild|None rebuild: Rebuilds the experiment from its document in workers.
    :raises StepControllerError: If a resolution is not admissible.
    :raises ExperimentError: If a path fails.
    :returns dict[Method, RateTable]: One table per method, the primary method first.
    """
    check_resolutions(spec)
    warn_about(spec)
    outcomes = map_paths(spec, error_path, threads, rebuild)
    tables: dict[Method, RateTable] = {}
    for m, method in enumerate(spec.methods):
        table = rate_table(spec, [o[m] for o in outcomes])
        if table.fit_delta is not None:
            LOGGER.info("Fitted rate %.3f in delta for %s.", table.fit_delta.slope, method)
        tables[method] = table
    return tables


def estimate_error(spec: ExperimentSpec, threads: int = 1,
                   rebuild: Rebuild | None = None) -> RateTable:
    """Estimate the strong ``L_p`` error and mean cost of the experiment's method.

    Baselines, if any, are run too; use :func:`estimate_errors` to keep them.

    :param ExperimentSpec spec: The experiment.
    :param int threads: The number of worker processes.
    :param Rebuild|None rebuild: Rebuilds the experiment from its document in workers.
    :raises StepControllerError: If a resolution is not admissible.
    :raises ExperimentError: If a path fails.
    :returns RateTable: The estimates.
    """
    return estimate_errors(spec, threads, rebuild)[spec.method]
