"""
Load the environment configuration for jumpdrift.

Run-specific settings (the problem, the experiment) live in the JSON
configuration documents read by :mod:`jumpdrift.cli.configfile`; this module
only holds the knobs that apply to every run on a given machine.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

import os

from dotenv import dotenv_values

from jumpdrift.errors.config import ImproperConfigurationError


DEFAULTS: dict[str, str] = {
    'LOG_LEVEL': 'INFO',
    'DEFAULT_MODE': 'theory',
    'DEFAULT_SEED': '0',
    'DEFAULT_THREADS': '0',
    'OUTPUT_DIR': 'results',
    'INVERSE_TOL': '1e-12',
    'INVERSE_MAX_ITER': '100',
    'LIPSCHITZ_SAMPLES': '1000',
    'SAMPLE_WINDOW': '10',
    'REFERENCE_DIVISOR': '64',
    'CLAMPED_LOG_CAP': '4',
    'SUP_POINTS': '64',
}
"""The defaults for configuration variables not set in the .env file."""


VALID_VARS: set[str] = set(DEFAULTS)
"""Valid configuration variables that could be in the environment."""


VALID_MODES: tuple[str, ...] = ('theory', 'clamped')
"""Step-controller modes understood by :mod:`jumpdrift.schemes`."""


_RAW: dict[str, str | None] = dotenv_values()
"""The configuration variables from the .env file."""


_PROCESSED: dict[str, str] = {key: val or '' for key, val in _RAW.items() if key in VALID_VARS}
"""Configuration variables from the .env file, with Nones replaced with an empty string."""


_ENVIRON: dict[str, str] = {key: val or '' for key, val in os.environ.items() if key in VALID_VARS}
"""Configuration variables pulled from the environment, as specified in ``VALID_VARS``."""


CONFIG: dict[str, str] = {
    **DEFAULTS,
    **_PROCESSED,
    **_ENVIRON
}
"""The loaded configuration variables."""


if CONFIG['DEFAULT_MODE'] not in VALID_MODES:
    raise ImproperConfigurationError('DEFAULT_MODE must be set to either "theory" or "clamped".')


def get_float(key: str) -> float:
    """Return a configuration value as a float.

    :param str key: The configuration key.
    :raises ImproperConfigurationError: If the value is not a number.
    :returns float: The parsed value.
    """
    try:
        return float(CONFIG[key])
    except ValueError as exc:
        raise ImproperConfigurationError(f"{key} must be a number, not {CONFIG[key]!r}.") from exc


def get_int(key: str) -> int:
    """Return a configuration value as an integer.

    :param str key: The configuration key.
    :raises ImproperConfigurationError: If the value is not an integer.
    :returns int: The parsed value.
    """
    try:
        return int(CONFIG[key])
    except ValueError as exc:
        raise ImproperConfigurationError(f"{key} must be an integer, not {CONFIG[key]!r}.") from exc


def get_mode() -> str:
    """Return the default step-controller mode."""
    return CONFIG['DEFAULT_MODE']


def get_threads() -> int:
    """Return the number of worker processes to use, resolving ``0`` to the core count."""
    threads = get_int('DEFAULT_THREADS')
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads
