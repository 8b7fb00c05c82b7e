"""
Contains the jumpdrift project: adaptive strong approximation of scalar SDEs
whose drift may jump.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."
