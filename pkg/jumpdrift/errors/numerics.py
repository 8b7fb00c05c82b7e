"""
Defines error classes for numerical failures at run time.
"""


class NumericsError(Exception):
    """Represents a general numerical failure."""


class InversionError(NumericsError):
    """Raised when the numerical inverse of the transform does not converge."""
    def __init__(self, target: float, best: float, residual: float, iterations: int):
        """Create an inversion error.

        :param float target: The value whose preimage was sought.
        :param float best: The best iterate found.
        :param float residual: ``|G(best) - target|``.
        :param int iterations: The number of iterations spent.
        """
        super().__init__(f"Inverse of {target!r} did not converge after {iterations} iterations "
                         f"(best {best!r}, residual {residual:.3e})")
        self.target = target
        self.best = best
        self.residual = residual
        self.iterations = iterations

    def __reduce__(self) -> tuple:
        return (type(self), (self.target, self.best, self.residual, self.iterations))


class StepControllerError(NumericsError):
    """Raised when a step-size controller cannot be built for the requested δ."""


class StepCapExceededError(NumericsError):
    """Raised when a scheme takes more steps than its controller allows."""


class PathError(NumericsError):
    """Raised for an invalid query against a Brownian path."""


class DegenerateFitError(NumericsError):
    """Raised when a rate regression has no spread in its abscissae."""


class ExperimentError(NumericsError):
    """Raised when a single Monte Carlo path fails; carries what is needed to replay it."""
    def __init__(self, path_index: int, seed: int, cause: Exception):
        """Create an experiment error.

        :param int path_index: The index of the failed path.
        :param int seed: The experiment's master seed.
        :param Exception cause: The underlying failure.
        """
        super().__init__(f"Path {path_index} (seed {seed}) failed: {cause}")
        self.path_index = path_index
        self.seed = seed
        self.cause = cause

    def __reduce__(self) -> tuple:
        return (type(self), (self.path_index, self.seed, self.cause))
