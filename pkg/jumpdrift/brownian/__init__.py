"""
Replayable Brownian paths refined by bridge sampling.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .dump import dump_path, restore_path
from .path import BrownianPath
