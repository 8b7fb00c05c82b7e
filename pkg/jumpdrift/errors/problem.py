"""
Defines error classes for malformed SDE problems and coefficient functions.
"""


class ProblemError(ValueError):
    """Represents a structurally invalid coefficient function or problem."""


class NoDiscontinuitiesError(ProblemError):
    """Raised when a distance to the discontinuity set is requested but the set is empty."""


class AssumptionError(ProblemError):
    """Raised when an operation's standing assumption is breached, such as σ(ξ) = 0."""
