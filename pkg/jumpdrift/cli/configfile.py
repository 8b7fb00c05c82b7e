"""
Read and write the JSON run configuration.

A document has a ``problem`` section and optional ``transform``,
``experiment`` and ``output`` sections::

    {
      "name": "jump_drift",
      "problem": {
        "x0": 0.1,
        "eps0": 1.0,
        "mu": {"breakpoints": [0],
               "pieces": [{"value": "1", "derivative": "0"},
                          {"value": "-1", "derivative": "0"}],
               "values_at_breakpoints": [-1]},
        "sigma": {"pieces": [{"value": "1", "derivative": "0"}]}
      },
      "transform": {"nu": "auto"},
      "experiment": {"method": "adaptive_transformed", "grid": [0.001, 0.0005, 0.00025],
                     "paths": 100, "mode": "clamped"},
      "output": {"directory": "results", "formats": ["csv", "json"]}
    }

Every failure is reported as a :class:`ConfigFileError` naming the field.
"""

import copy
import json
import math
import os
from dataclasses import dataclass
from typing import Any

from jumpdrift.config import CONFIG, get_int, get_mode
from jumpdrift.core.piecewise import Piece, PiecewiseFn
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import ConfigFileError, ProblemError
from jumpdrift.harness.experiment import ErrorKind, ExperimentSpec, Method


OUTPUT_FORMATS: tuple[str, ...] = ('csv', 'json')
"""The result formats the CLI can write."""


@dataclass(frozen=True)
class RunConfig:
    """A parsed configuration document."""
    problem: SdeProblem
    nu: float | None
    experiment: ExperimentSpec | None
    output_dir: str
    formats: tuple[str, ...]
    document: dict[str, Any]


def _section(doc: dict[str, Any], key: str, where: str, required: bool = True) -> dict[str, Any]:
    path = f"{where}.{key}" if where else key
    if key not in doc:
        if required:
            raise ConfigFileError(path, 'missing required section')
        return {}
    value = doc[key]
    if not isinstance(value, dict):
        raise ConfigFileError(path, 'must be an object')
    return value


def _number(doc: dict[str, Any], key: str, where: str, default: float | None = None) -> float:
    path = f"{where}.{key}"
    if key not in doc or doc[key] is None:
        if default is None:
            raise ConfigFileError(path, 'missing required number')
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigFileError(path, f"must be a finite number, not {value!r}")
    return float(value)


def _integer(doc: dict[str, Any], key: str, where: str, default: int | None = None) -> int:
    path = f"{where}.{key}"
    if key not in doc or doc[key] is None:
        if default is None:
            raise ConfigFileError(path, 'missing required integer')
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigFileError(path, f"must be an integer, not {value!r}")
    return value


def _numbers(doc: dict[str, Any], key: str, where: str) -> list[float]:
    path = f"{where}.{key}"
    value = doc.get(key, [])
    if not isinstance(value, list):
        raise ConfigFileError(path, 'must be a list of numbers')
    return [_list_number(item, f"{path}[{i}]") for i, item in enumerate(value)]


def _list_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigFileError(path, f"must be a finite number, not {value!r}")
    return float(value)


def _pairs(doc: dict[str, Any], key: str, where: str) -> list[tuple[float, float]] | None:
    if key not in doc or doc[key] is None:
        return None
    path = f"{where}.{key}"
    value = doc[key]
    if not isinstance(value, list):
        raise ConfigFileError(path, 'must be a list of [left, right] pairs')
    pairs: list[tuple[float, float]] = []
    for i, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 2:
            raise ConfigFileError(f"{path}[{i}]", 'must be a [left, right] pair')
        pairs.append((_list_number(item[0], f"{path}[{i}][0]"),
                      _list_number(item[1], f"{path}[{i}][1]")))
    return pairs


def _piece(doc: Any, where: str) -> Piece:
    if not isinstance(doc, dict):
        raise ConfigFileError(where, 'must be an object with "value" and "derivative"')
    texts: list[str] = []
    for key in ('value', 'derivative'):
        text = doc.get(key)
        if not isinstance(text, str):
            raise ConfigFileError(f"{where}.{key}", 'missing expression string')
        texts.append(text)
    try:
        return Piece.from_expressions(texts[0], texts[1])
    except ProblemError as exc:
        raise ConfigFileError(where, str(exc)) from exc


def _piecewise(doc: dict[str, Any], where: str) -> PiecewiseFn:
    pieces_doc = doc.get('pieces')
    if not isinstance(pieces_doc, list) or not pieces_doc:
        raise ConfigFileError(f"{where}.pieces", 'must be a non-empty list of pieces')
    pieces = [_piece(item, f"{where}.pieces[{i}]") for i, item in enumerate(pieces_doc)]
    breakpoints = _numbers(doc, 'breakpoints', where)

    values: list[float | None] | None = None
    if doc.get('values_at_breakpoints') is not None:
        raw = doc['values_at_breakpoints']
        if not isinstance(raw, list):
            raise ConfigFileError(f"{where}.values_at_breakpoints", 'must be a list')
        values = [None if item is None
                  else _list_number(item, f"{where}.values_at_breakpoints[{i}]")
                  for i, item in enumerate(raw)]

    try:
        return PiecewiseFn.build(breakpoints, pieces, values,
                                 _pairs(doc, 'one_sided_limits', where),
                                 _pairs(doc, 'one_sided_derivatives', where))
    except ProblemError as exc:
        raise ConfigFileError(where, str(exc)) from exc


def problem_from_document(doc: dict[str, Any]) -> SdeProblem:
    """Build the problem described by a configuration document.

    :param dict doc: The whole document.
    :raises ConfigFileError: If the ``problem`` section is malformed.
    :returns SdeProblem: The problem, carrying its section as ``document``.
    """
    section = _section(doc, 'problem', '')
    mu = _piecewise(_section(section, 'mu', 'problem'), 'problem.mu')
    sigma = _piecewise(_section(section, 'sigma', 'problem'), 'problem.sigma')
    theta = _numbers(section, 'theta', 'problem') if 'theta' in section else None
    name = doc.get('name', '')
    if not isinstance(name, str):
        raise ConfigFileError('name', 'must be a string')
    try:
        return SdeProblem.create(_number(section, 'x0', 'problem'), mu, sigma, theta,
                                 _number(section, 'eps0', 'problem', 1.0), name,
                                 {'name': name, **section})
    except ProblemError as exc:
        raise ConfigFileError('problem', str(exc)) from exc


def nu_from_document(doc: dict[str, Any]) -> float | None:
    """Read the bump half-width, ``None`` meaning the default ``ρ/2``.

    :param dict doc: The whole document.
    :raises ConfigFileError: If ``transform.nu`` is neither ``"auto"`` nor a positive number.
    :returns float|None: ν.
    """
    section = _section(doc, 'transform', '', required=False)
    nu = section.get('nu', 'auto')
    if nu is None or nu == 'auto':
        return None
    value = _number(section, 'nu', 'transform')
    if value <= 0.0:
        raise ConfigFileError('transform.nu', 'must be positive or "auto"')
    return value


def _choice(section: dict[str, Any], key: str, choices: tuple[str, ...], default: str) -> str:
    value = section.get(key, default)
    if value not in choices:
        raise ConfigFileError(f"experiment.{key}",
                              f"must be one of {', '.join(choices)}, not {value!r}")
    return str(value)


def experiment_from_document(doc: dict[str, Any]) -> ExperimentSpec:
    """Build the experiment described by a configuration document.

    ``grid`` lists resolutions δ; ``n_grid`` may be given instead and lists
    step counts ``n``, read as ``δ = 1/n``.  ``baselines`` lists further
    methods to measure against the same reference.

    :param dict doc: The whole document.
    :raises ConfigFileError: If the ``experiment`` section is missing or malformed.
    :returns ExperimentSpec: The experiment, carrying the document.
    """
    problem = problem_from_document(doc)
    section = _section(doc, 'experiment', '')

    if 'n_grid' in section:
        steps = _numbers(section, 'n_grid', 'experiment')
        if any(n < 1 or n != int(n) for n in steps):
            raise ConfigFileError('experiment.n_grid', 'must list positive integers')
        grid = [1.0 / n for n in steps]
    else:
        grid = _numbers(section, 'grid', 'experiment')
    if not grid:
        raise ConfigFileError('experiment.grid', 'must list at least one resolution')

    baselines = section.get('baselines', [])
    if not isinstance(baselines, list) or any(b not in tuple(Method) for b in baselines):
        raise ConfigFileError('experiment.baselines',
                              f"must list methods from {tuple(str(m) for m in Method)}")

    delta_ref = section.get('delta_ref')
    try:
        return ExperimentSpec(
            problem=problem,
            method=Method(_choice(section, 'method', tuple(Method), 'adaptive_transformed')),
            grid=tuple(grid),
            paths=_integer(section, 'paths', 'experiment'),
            p=_number(section, 'p', 'experiment', 2.0),
            error_kind=ErrorKind(_choice(section, 'error_kind', tuple(ErrorKind), 'final_time')),
            sup_points=_integer(section, 'sup_points', 'experiment', get_int('SUP_POINTS')),
            delta_ref=None if delta_ref is None else _number(section, 'delta_ref', 'experiment'),
            master_seed=_integer(section, 'master_seed', 'experiment', get_int('DEFAULT_SEED')),
            mode=_choice(section, 'mode', ('theory', 'clamped'), get_mode()),
            nu=nu_from_document(doc),
            baselines=tuple(Method(b) for b in baselines),
            document=doc,
        )
    except ProblemError as exc:
        raise ConfigFileError('experiment', str(exc)) from exc


def parse_document(doc: Any) -> RunConfig:
    """Build a run configuration from a decoded document.

    :param Any doc: The decoded JSON.
    :raises ConfigFileError: If anything is malformed.
    :returns RunConfig: The configuration.
    """
    if not isinstance(doc, dict):
        raise ConfigFileError('document', 'must be a JSON object')
    problem = problem_from_document(doc)
    experiment = experiment_from_document(doc) if 'experiment' in doc else None

    output = _section(doc, 'output', '', required=False)
    directory = output.get('directory', CONFIG['OUTPUT_DIR'])
    if not isinstance(directory, str) or not directory:
        raise ConfigFileError('output.directory', 'must be a non-empty string')
    formats = output.get('formats', list(OUTPUT_FORMATS))
    if not isinstance(formats, list) or any(f not in OUTPUT_FORMATS for f in formats):
        raise ConfigFileError('output.formats', f"must list formats from {OUTPUT_FORMATS}")

    return RunConfig(problem, nu_from_document(doc), experiment, directory, tuple(formats), doc)


def load_config(file: str | os.PathLike) -> RunConfig:
    """Read a configuration file.

    :param str|os.PathLike file: The JSON file.
    :raises ConfigFileError: If the file cannot be read, decoded or parsed.
    :returns RunConfig: The configuration.
    """
    try:
        with open(file, encoding='utf-8') as src:
            doc = json.load(src)
    except json.JSONDecodeError as exc:
        raise ConfigFileError.from_decode_error(exc) from exc
    except OSError as exc:
        raise ConfigFileError(str(file), exc.strerror or str(exc)) from exc
    return parse_document(doc)


def with_overrides(config: RunConfig, seed: int | None = None,
                   mode: str | None = None) -> RunConfig:
    """Apply command-line overrides to the experiment section.

    The document itself is updated so worker processes see the same settings.

    :param RunConfig config: The configuration.
    :param int|None seed: A master seed to use instead of the configured one.
    :param str|None mode: A controller mode to use instead of the configured one.
    :returns RunConfig: The updated configuration.
    """
    if (seed is None and mode is None) or 'experiment' not in config.document:
        return config
    doc = copy.deepcopy(config.document)
    experiment = doc['experiment']
    if seed is not None:
        experiment['master_seed'] = seed
    if mode is not None:
        experiment['mode'] = mode
    return parse_document(doc)


def _piece_document(piece: Piece) -> dict[str, str]:
    if piece.source is None:
        raise ConfigFileError('problem', 'a piece without expression text cannot be written')
    return {'value': piece.source[0], 'derivative': piece.source[1]}


def _piecewise_document(f: PiecewiseFn) -> dict[str, Any]:
    return {
        'breakpoints': list(f.breakpoints),
        'pieces': [_piece_document(piece) for piece in f.pieces],
        'values_at_breakpoints': list(f.values_at_breakpoints),
        'one_sided_limits': [list(pair) for pair in f.one_sided_limits],
        'one_sided_derivatives': [list(pair) for pair in f.one_sided_derivatives],
    }


def dump_config(config: RunConfig) -> dict[str, Any]:
    """Write a configuration back out as a document, with every default resolved.

    :param RunConfig config: The configuration.
    :returns dict: A document that parses to an equivalent configuration.
    """
    p = config.problem
    doc: dict[str, Any] = {
        'name': p.name,
        'problem': {
            'x0': p.x0,
            'eps0': p.eps0,
            'theta': list(p.theta),
            'mu': _piecewise_document(p.mu),
            'sigma': _piecewise_document(p.sigma),
        },
        'transform': {'nu': 'auto' if config.nu is None else config.nu},
        'output': {'directory': config.output_dir, 'formats': list(config.formats)},
    }
    if config.experiment is not None:
        echo = config.experiment.echo()
        echo['delta_ref'] = config.experiment.delta_ref
        echo.pop('nu')
        doc['experiment'] = echo
    return doc
