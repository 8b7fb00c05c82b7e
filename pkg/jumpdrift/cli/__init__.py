"""
The ``jumpdrift`` command line interface and its JSON configuration files.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .configfile import (RunConfig, dump_config, experiment_from_document, load_config,
                         parse_document, problem_from_document, with_overrides)
