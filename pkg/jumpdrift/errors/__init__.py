"""
Defines the errors possibly raised by jumpdrift.
"""

__copyright__ = "© 2026 The jumpdrift authors.  MIT license."

from .config import ConfigFileError, ImproperConfigurationError
from .numerics import (DegenerateFitError, ExperimentError, InversionError, NumericsError,
                       PathError, StepCapExceededError, StepControllerError)
from .problem import AssumptionError, NoDiscontinuitiesError, ProblemError
