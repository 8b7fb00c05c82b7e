"""
Example configuration documents shipped with jumpdrift.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from importlib.resources import files
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Return the path of a bundled configuration document.

    :param str name: The file name, for example ``'jump_drift.json'``.
    :returns Path: The path to the file.
    """
    return Path(str(files(__name__).joinpath(name)))
