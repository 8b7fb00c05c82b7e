"""
Provide the ``jumpdrift`` command line interface.

Exit codes: 0 on success, 1 when a hard assumption fails, 2 for a bad
configuration or an inadmissible resolution, 3 for any other numerical
failure.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.table import Table

from jumpdrift.brownian import BrownianPath, dump_path, restore_path
from jumpdrift.config import CONFIG, VALID_MODES, get_int, get_mode, get_threads
from jumpdrift.core import one_sided_limits, validate_problem
from jumpdrift.errors import (AssumptionError, ConfigFileError, ExperimentError,
                              ImproperConfigurationError, NumericsError, ProblemError,
                              StepControllerError)
from jumpdrift.harness import (ExperimentSpec, RateFit, cost_profile, cost_summary,
                               estimate_errors, rate_summary, write_cost_csv, write_rate_csv,
                               write_summary_json, write_trajectory_csv)
from jumpdrift.schemes import run_transformed_adaptive
from jumpdrift.transform import (TransformParams, g_eval, g_inverse, g_prime,
                                 transformed_problem)
from .configfile import RunConfig, experiment_from_document, load_config, with_overrides


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


EXIT_OK = 0
EXIT_ASSUMPTION = 1
EXIT_CONFIG = 2
EXIT_NUMERICS = 3


DEFAULT_SIMULATE_DELTA: float = 2.0 ** -10
"""The resolution ``simulate`` uses when neither ``--delta`` nor an experiment grid gives one."""


def _output_dir(config: RunConfig, out: str | None) -> Path:
    directory = Path(out or config.output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def _stem(config: RunConfig) -> str:
    return config.problem.name or 'run'


def _fit_text(fit: RateFit | None) -> str:
    if fit is None:
        return 'not fitted'
    return f"{fit.slope:.3f} (r² {fit.r2:.3f})"


def cmd_validate(config: RunConfig, console: Console) -> int:
    """Check the configured problem against the standing assumptions.

    :param RunConfig config: The configuration.
    :param Console console: Where the report is printed.
    :returns int: 0 if every hard check passed, otherwise 1.
    """
    report = validate_problem(config.problem)

    table = Table(title=f"Assumptions for {config.problem.name or 'problem'}")
    table.add_column('check')
    table.add_column('kind')
    table.add_column('result')
    table.add_column('detail')
    for check in report.checks:
        result = '[green]ok[/green]' if check.passed else (
            '[bold red]FAILED[/bold red]' if check.hard else '[yellow]warning[/yellow]')
        table.add_row(check.name, 'hard' if check.hard else 'soft', result, check.detail)
    console.print(table)

    if not report.passed:
        for check in report.failures:
            console.print(f"[bold red]Hard assumption {check.name} failed:[/bold red] "
                          f"{check.detail}")
        return EXIT_ASSUMPTION
    console.print('All hard assumptions hold.')
    return EXIT_OK


def cmd_transform(config: RunConfig, console: Console, grid: int) -> int:
    """Inspect the transform built for the configured problem.

    :param RunConfig config: The configuration.
    :param Console console: Where the report is printed.
    :param int grid: The number of sample points for ``G'`` and the round trip.
    :returns int: 0.
    """
    p = config.problem
    tp = TransformParams.for_problem(p, config.nu)
    if tp.is_identity:
        console.print('identity transform')
        return EXIT_OK

    lo, hi = tp.z[0] - 2.0 * tp.nu, tp.z[-1] + 2.0 * tp.nu
    xs = np.linspace(lo, hi, grid)
    slopes = np.array([g_prime(tp, float(x)) for x in xs])
    residuals = np.array([abs(g_inverse(tp, g_eval(tp, float(x))) - float(x)) for x in xs])

    q = transformed_problem(p, tp)
    table = Table(title=f"Transform for {p.name or 'problem'}")
    table.add_column('ξ')
    table.add_column('α')
    table.add_column('μ̃ jump')
    for xi, alpha in zip(tp.z, tp.alpha):
        left, right = one_sided_limits(q.mu, xi)
        table.add_row(repr(xi), f"{alpha:.6g}", f"{abs(right - left):.3e}")
    console.print(table)

    console.print(f"rho = {tp.rho:.6g}, nu = {tp.nu:.6g}")
    console.print(f"min sampled G' = {slopes.min():.6g} "
                  f"over {grid} points in [{lo:.4g}, {hi:.4g}]")
    console.print(f"max round-trip residual = {residuals.max():.3e}")
    return EXIT_OK


def cmd_simulate(config: RunConfig, console: Console, delta: float | None, seed: int | None,
                 mode: str | None, out: str | None, path_index: int = 0,
                 dump_file: str | None = None, replay_file: str | None = None) -> int:
    """Run the transformed adaptive scheme on one path and write its skeleton.

    :param RunConfig config: The configuration.
    :param Console console: Where progress is printed.
    :param float|None delta: The resolution; defaults to the finest in the experiment grid.
    :param int|None seed: The master seed.
    :param str|None mode: The controller mode.
    :param str|None out: The output directory.
    :param int path_index: Which Monte Carlo path of the seed to drive the run with.
    :param str|None dump_file: Where to write the driving path's samples after the run.
    :param str|None replay_file: A dump to drive the run with instead of a fresh path.
    :returns int: 0.
    """
    p, experiment = config.problem, config.experiment
    if delta is None:
        delta = min(experiment.grid) if experiment is not None else DEFAULT_SIMULATE_DELTA
    if seed is None:
        seed = experiment.master_seed if experiment is not None else get_int('DEFAULT_SEED')
    if mode is None:
        mode = experiment.mode if experiment is not None else get_mode()

    if replay_file is not None:
        path = restore_path(replay_file, seed, path_index)
        LOGGER.info("Replaying %d samples from %s.", len(path), replay_file)
    else:
        path = BrownianPath(seed, path_index)
    with console.status(f"[bold green]Simulating {p.name or 'problem'} at delta = {delta:g}"):
        run = run_transformed_adaptive(p, delta, path, mode, config.nu)
    tr = run.trajectory
    values = [p.x0] + [z if run.params.is_identity else g_inverse(run.params, z)
                       for z in tr.values[1:]]

    directory = _output_dir(config, out)
    stem = f"{_stem(config)}_trajectory"
    if 'csv' in config.formats:
        write_trajectory_csv(tr.times, values, directory / f"{stem}.csv")
    if 'json' in config.formats:
        write_summary_json({'problem': p.document, 'delta': delta, 'seed': seed,
                            'path_index': path_index, 'mode': mode, 'cost': tr.cost,
                            'branch_counts': list(tr.branch_counts), 'x_final': run.x_final},
                           directory / f"{stem}.json")
    if dump_file is not None:
        count = dump_path(path, dump_file)
        console.print(f"Wrote {count} path samples to {dump_file}.")
    console.print(f"{tr.cost} steps, X(1) = {run.x_final:.10g}; wrote {directory / stem}.*")
    return EXIT_OK


def _experiment(config: RunConfig) -> ExperimentSpec:
    if config.experiment is None:
        raise ConfigFileError('experiment', 'missing required section')
    return config.experiment


def cmd_convergence(config: RunConfig, console: Console, threads: int, out: str | None) -> int:
    """Estimate the strong error over the experiment grid and fit its rate.

    The method and every baseline share one reference run per path; each
    gets its own table and output files.

    :param RunConfig config: The configuration; it must have an experiment.
    :param Console console: Where the tables and slopes are printed.
    :param int threads: The number of worker processes.
    :param str|None out: The output directory.
    :returns int: 0.
    """
    spec = _experiment(config)
    names = ', '.join(str(method) for method in spec.methods)
    with console.status(f"[bold green]Running {spec.paths} paths of {names}"):
        tables = estimate_errors(spec, threads, experiment_from_document)

    directory = _output_dir(config, out)
    for method, table in tables.items():
        rows = Table(title=f"{method} on {config.problem.name or 'problem'}")
        for column in ('delta', 'E[N]', f"L{spec.p:g} error", 'stderr', 'local slope'):
            rows.add_column(column)
        for row in table.rows:
            rows.add_row(f"{row.resolution:.4g}", f"{row.mean_cost:.1f}",
                         f"{row.error_lp:.4e}", f"{row.error_stderr:.2e}",
                         '' if row.slope_partial is None else f"{row.slope_partial:.3f}")
        console.print(rows)
        console.print(f"{method} rate in delta: {_fit_text(table.fit_delta)}")
        console.print(f"{method} rate in cost: {_fit_text(table.fit_cost)}")

        stem = f"{_stem(config)}_{method}_convergence"
        if 'csv' in config.formats:
            write_rate_csv(table, directory / f"{stem}.csv")
        if 'json' in config.formats:
            write_summary_json(rate_summary(spec, table, method), directory / f"{stem}.json")
    return EXIT_OK


def cmd_cost(config: RunConfig, console: Console, threads: int, out: str | None) -> int:
    """Profile the cost of the configured method over the experiment grid.

    :param RunConfig config: The configuration; it must have an experiment.
    :param Console console: Where the table is printed.
    :param int threads: The number of worker processes.
    :param str|None out: The output directory.
    :returns int: 0.
    """
    spec = _experiment(config)
    with console.status(f"[bold green]Counting steps on {spec.paths} paths of {spec.method}"):
        table = cost_profile(spec, threads, experiment_from_document)

    rows = Table(title=f"Cost of {spec.method} on {config.problem.name or 'problem'}")
    for column in ('delta', 'E[N]', 'E[N]·delta', 'max N', 'zone 1', 'zone 2', 'zone 3'):
        rows.add_column(column)
    for row in table.rows:
        rows.add_row(f"{row.delta:.4g}", f"{row.mean_cost:.1f}", f"{row.cost_times_delta:.3f}",
                     str(row.max_cost), *(f"{f:.3f}" for f in row.branch_fractions))
    console.print(rows)
    console.print(f"E[N]·delta spread (max/min): {table.spread:.3f}")

    directory = _output_dir(config, out)
    stem = f"{_stem(config)}_{spec.method}_cost"
    if 'csv' in config.formats:
        write_cost_csv(table, directory / f"{stem}.csv")
    if 'json' in config.formats:
        write_summary_json(cost_summary(spec, table), directory / f"{stem}.json")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command.

    :returns argparse.ArgumentParser: The parser.
    """
    parser = argparse.ArgumentParser(
        prog='jumpdrift',
        description='Simulates scalar SDEs with discontinuous drift and measures convergence'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', action='store', required=True,
                        help='The JSON configuration file')

    commands.add_parser('validate', parents=[common],
                        help='Check the problem against the standing assumptions')

    transform = commands.add_parser('transform', parents=[common],
                                    help='Inspect the drift-smoothing transform')
    transform.add_argument('--grid', action='store', type=int, default=10 ** 5,
                           help='Number of sample points for the checks')

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', action='store', type=int, help='The master seed')
    seeded.add_argument('--mode', action='store', choices=VALID_MODES,
                        help='The step-controller mode')
    seeded.add_argument('-o', '--out', action='store', help='The output directory')

    simulate = commands.add_parser('simulate', parents=[common, seeded],
                                   help='Write one adaptive trajectory')
    simulate.add_argument('--delta', action='store', type=float,
                          help='The resolution of the step controller')
    simulate.add_argument('--path-index', action='store', type=int, default=0,
                          help='Which Monte Carlo path of the seed drives the run')
    replay = simulate.add_mutually_exclusive_group()
    replay.add_argument('--dump-path', action='store', metavar='FILE',
                        help='Write the samples of the driving path to FILE')
    replay.add_argument('--replay-path', action='store', metavar='FILE',
                        help='Drive the run with a path written by --dump-path')

    for name, text in (('convergence', 'Estimate the strong error and its rate'),
                       ('cost', 'Profile the number of steps')):
        sub = commands.add_parser(name, parents=[common, seeded], help=text)
        sub.add_argument('--threads', action='store', type=int,
                         help='Worker processes; defaults to DEFAULT_THREADS')
    return parser


def _dispatch(args: argparse.Namespace, console: Console) -> int:
    config = load_config(args.config)
    if args.command == 'validate':
        return cmd_validate(config, console)
    if args.command == 'transform':
        return cmd_transform(config, console, args.grid)

    if args.seed is not None and args.seed < 0:
        raise ConfigFileError('--seed', 'must be non-negative')
    if args.command == 'simulate':
        if args.path_index < 0:
            raise ConfigFileError('--path-index', 'must be non-negative')
        return cmd_simulate(config, console, args.delta, args.seed, args.mode, args.out,
                            args.path_index, args.dump_path, args.replay_path)

    config = with_overrides(config, args.seed, args.mode)
    threads = args.threads if args.threads is not None else get_threads()
    if args.command == 'convergence':
        return cmd_convergence(config, console, threads, args.out)
    return cmd_cost(config, console, threads, args.out)


def run(argv: Sequence[str] | None = None, console: Console | None = None) -> int:
    """Parse the command line, run the command and map failures to exit codes.

    :param Sequence[str]|None argv: The arguments; defaults to ``sys.argv[1:]``.
    :param Console|None console: Where output is printed.
    :returns int: The exit code.
    """
    console = console or Console()
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args, console)
    except AssumptionError as exc:
        console.print(f"[bold red]Assumption failed:[/bold red] {exc}")
        return EXIT_ASSUMPTION
    except (ConfigFileError, ImproperConfigurationError, ProblemError,
            StepControllerError) as exc:
        console.print(f"[bold red]Configuration error:[/bold red] {exc}")
        return EXIT_CONFIG
    except ExperimentError as exc:
        console.print(f"[bold red]Numerical failure:[/bold red] {exc}")
        console.print(f"Replay the reference run of this path with: jumpdrift simulate "
                      f"-c {args.config} --seed {exc.seed} --path-index {exc.path_index} "
                      f"--delta <delta_ref> --dump-path <file>")
        return EXIT_NUMERICS
    except NumericsError as exc:
        console.print(f"[bold red]Numerical failure:[/bold red] {exc}")
        return EXIT_NUMERICS


def main() -> None:
    """The entry point for the ``jumpdrift`` command."""
    logging.basicConfig(format='%(name)s: %(levelname)s: %(message)s',
                        level=CONFIG['LOG_LEVEL'])
    sys.exit(run())


if __name__ == "__main__":
    main()
