"""
Run one method on many Monte Carlo paths, serially or on a process pool.

Every path is identified by its index; its Brownian stream depends only on
``(master_seed, index)``, and results are collected in index order, so the
outcome does not depend on the number of workers or on scheduling.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Any

from jumpdrift.brownian import BrownianPath
from jumpdrift.errors import ExperimentError, NumericsError, ProblemError
from jumpdrift.schemes import (SchemeKind, StepController, eval_trajectory, run_adaptive_qm,
                               run_equidistant, run_transformed_adaptive,
                               run_transformed_equidistant)
from jumpdrift.transform import TransformParams
from .experiment import ExperimentSpec, Method
from .reference import reference_solution


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


Rebuild = Callable[[dict[str, Any]], ExperimentSpec]
"""Rebuilds an experiment from its configuration document inside a worker."""


@dataclass
class PathOutcome:
    """Per-resolution results of one method on one Monte Carlo path."""
    errors: list[float] = field(default_factory=list)
    costs: list[int] = field(default_factory=list)
    branches: list[list[int]] = field(default_factory=list)


@dataclass(frozen=True)
class MethodRun:
    """A finished run of one method, readable at any time in ``[0, 1]``."""
    x_at: Callable[[float], float]
    cost: int
    branch_counts: list[int]


PathTask = Callable[[ExperimentSpec, TransformParams, int], list[PathOutcome]]
"""Computes the outcomes of one path, one per method measured."""


def path_for(spec: ExperimentSpec, index: int) -> BrownianPath:
    """Return the fresh Brownian path with the given index.

    :param ExperimentSpec spec: The experiment.
    :param int index: The path index.
    :returns BrownianPath: Stream 0 of path ``index``.
    """
    return BrownianPath(spec.master_seed, index, 0)


def run_method(spec: ExperimentSpec, method: Method, delta: float, path: BrownianPath,
               params: TransformParams) -> MethodRun:
    """Run one method of the experiment at one resolution.

    :param ExperimentSpec spec: The experiment.
    :param Method method: The method to run.
    :param float delta: The resolution.
    :param BrownianPath path: The driving path.
    :param TransformParams params: The transform built for the problem.
    :returns MethodRun: The run.
    """
    p = spec.problem
    match method:
        case Method.ADAPTIVE_TRANSFORMED:
            run = run_transformed_adaptive(p, delta, path, spec.mode, params=params)
            return MethodRun(run.x_at, run.cost, run.trajectory.branch_counts)
        case Method.TRANSFORMED_EQUIDISTANT_QM:
            run = run_transformed_equidistant(p, spec.steps_for(delta), path, params=params)
            return MethodRun(run.x_at, run.cost, run.trajectory.branch_counts)
        case Method.ADAPTIVE_QM:
            ctrl = StepController.build(delta, p.eps0, p.theta, spec.mode)
            tr = run_adaptive_qm(p, ctrl, path, warn=False)
        case Method.EQUIDISTANT_EM:
            tr = run_equidistant(p, spec.steps_for(delta), path, SchemeKind.EULER_MARUYAMA)
        case Method.EQUIDISTANT_QM:
            tr = run_equidistant(p, spec.steps_for(delta), path, SchemeKind.QUASI_MILSTEIN)
        case _:
            raise ProblemError(f"Unknown method {method!r}.")
    return MethodRun(partial(eval_trajectory, tr, path), tr.cost, tr.branch_counts)


def fork_stream(spec: ExperimentSpec, method_index: int, k: int) -> int:
    """Return the stream of the fork that method ``method_index`` refines at resolution ``k``.

    Stream 0 belongs to the reference; the primary method keeps streams
    ``1..len(grid)`` whatever baselines are added.

    :param ExperimentSpec spec: The experiment.
    :param int method_index: The position of the method in :attr:`ExperimentSpec.methods`.
    :param int k: The resolution index.
    :returns int: The stream.
    """
    return 1 + method_index * len(spec.grid) + k


def error_path(spec: ExperimentSpec, params: TransformParams, index: int) -> list[PathOutcome]:
    """Measure the pathwise error of every method and resolution against one reference.

    The reference runs once, first, on the fresh path; every method at
    every resolution then refines its own fork of it.

    :param ExperimentSpec spec: The experiment.
    :param TransformParams params: The transform built for the problem.
    :param int index: The path index.
    :returns list[PathOutcome]: Errors, costs and step zones, one outcome per method.
    """
    path = path_for(spec, index)
    times = spec.times
    ref = reference_solution(spec.problem, path, spec.reference_delta, times, spec.mode,
                             params=params)
    outcomes: list[PathOutcome] = []
    for m, method in enumerate(spec.methods):
        outcome = PathOutcome()
        for k, delta in enumerate(spec.grid):
            run = run_method(spec, method, delta, path.fork(fork_stream(spec, m, k)), params)
            outcome.errors.append(max(abs(run.x_at(t) - r) for t, r in zip(times, ref)))
            outcome.costs.append(run.cost)
            outcome.branches.append(list(run.branch_counts))
        outcomes.append(outcome)
    return outcomes


def cost_path(spec: ExperimentSpec, params: TransformParams, index: int) -> list[PathOutcome]:
    """Record the cost of the primary method at every resolution, without a reference.

    :param ExperimentSpec spec: The experiment.
    :param TransformParams params: The transform built for the problem.
    :param int index: The path index.
    :returns list[PathOutcome]: Costs and step zones of the primary method.
    """
    path = path_for(spec, index)
    outcome = PathOutcome()
    for k, delta in enumerate(spec.grid):
        run = run_method(spec, spec.method, delta, path.fork(fork_stream(spec, 0, k)), params)
        outcome.costs.append(run.cost)
        outcome.branches.append(list(run.branch_counts))
    return [outcome]


def _guarded(task: PathTask, spec: ExperimentSpec, params: TransformParams,
             index: int) -> list[PathOutcome]:
    try:
        return task(spec, params, index)
    except (NumericsError, ProblemError) as exc:
        raise ExperimentError(index, spec.master_seed, exc) from exc


_WORKER: tuple[ExperimentSpec, TransformParams] | None = None
"""The experiment rebuilt inside a worker process."""


def _init_worker(rebuild: Rebuild, document: dict[str, Any]) -> None:
    global _WORKER  # pylint: disable=global-statement
    spec = rebuild(document)
    _WORKER = (spec, TransformParams.for_problem(spec.problem, spec.nu))


def _work(task: PathTask, index: int) -> list[PathOutcome]:
    assert _WORKER is not None
    spec, params = _WORKER
    return _guarded(task, spec, params, index)


def check_resolutions(spec: ExperimentSpec, reference: bool = True) -> None:
    """Build every controller the experiment needs, so inadmissible δ fail up front.

    :param ExperimentSpec spec: The experiment.
    :param bool reference: Whether the reference run is part of the experiment.
    :raises StepControllerError: If a resolution is not admissible in the experiment's mode.
    """
    if reference:
        StepController.build(spec.reference_delta, spec.problem.eps0, spec.problem.theta,
                             spec.mode)
    if not all(method.is_equidistant for method in spec.methods):
        for delta in spec.grid:
            StepController.build(delta, spec.problem.eps0, spec.problem.theta, spec.mode)


def map_paths(spec: ExperimentSpec, task: PathTask, threads: int = 1,
              rebuild: Rebuild | None = None) -> list[list[PathOutcome]]:
    """Run a task on every path of the experiment.

    A pool is used only when more than one thread is asked for and the
    experiment can be rebuilt from its document; compiled coefficient
    functions cannot be sent to workers.

    :param ExperimentSpec spec: The experiment.
    :param PathTask task: The per-path computation.
    :param int threads: The number of worker processes.
    :param Rebuild|None rebuild: Rebuilds the experiment from ``spec.document``.
    :raises ExperimentError: If any path fails; it names the path and seed.
    :returns list[list[PathOutcome]]: The outcomes of each path, in index order.
    """
    if threads > 1 and rebuild is not None and spec.document is not None:
        chunk = max(1, spec.paths // (4 * threads))
        LOGGER.info("Running %d paths on %d workers.", spec.paths, threads)
        with Pool(threads, initializer=_init_worker, initargs=(rebuild, spec.document)) as pool:
            return list(pool.imap(partial(_work, task), range(spec.paths), chunksize=chunk))

    LOGGER.info("Running %d paths serially.", spec.paths)
    params = TransformParams.for_problem(spec.problem, spec.nu)
    return [_guarded(task, spec, params, index) for index in range(spec.paths)]
