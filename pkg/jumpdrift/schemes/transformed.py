"""
Schemes run on the transformed SDE ``Z = G(X)`` and mapped back with ``G⁻¹``.
"""

from dataclasses import dataclass

from jumpdrift.brownian import BrownianPath
from jumpdrift.config import get_mode
from jumpdrift.core.problem import SdeProblem
from jumpdrift.transform import TransformParams, g_inverse, transformed_problem
from .adaptive import run_adaptive_qm
from .controller import StepController
from .equidistant import SchemeKind, run_equidistant
from .trajectory import Trajectory, eval_trajectory


@dataclass
class TransformedRun:
    """A run in Z-space together with what is needed to read it in X-space."""
    trajectory: Trajectory
    params: TransformParams
    problem: SdeProblem
    path: BrownianPath
    x_final: float = 0.0

    def __post_init__(self) -> None:
        self.x_final = self.x_at(1.0)

    @property
    def cost(self) -> int:
        """The cost ``N``, shared by the Z-space and X-space runs."""
        return self.trajectory.cost

    def z_at(self, t: float) -> float:
        """Evaluate the Z-space continuous extension.

        :param float t: The time, in ``[0, τ_N]``.
        :returns float: ``Ẑ_t``.
        """
        return eval_trajectory(self.trajectory, self.path, t)

    def x_at(self, t: float) -> float:
        """Evaluate the X-space approximation ``X̂_t = G⁻¹(Ẑ_t)``.

        :param float t: The time, in ``[0, τ_N]``.
        :returns float: ``X̂_t``.
        """
        z = self.z_at(t)
        return z if self.params.is_identity else g_inverse(self.params, z)


def run_transformed_adaptive(p: SdeProblem, delta: float, path: BrownianPath,
                             mode: str | None = None, nu: float | None = None,
                             params: TransformParams | None = None) -> TransformedRun:
    """Run the adaptive scheme on the transformed problem.

    The controller uses the original Θ, which ``G`` leaves fixed.

    :param SdeProblem p: The original problem; its drift may jump on Θ.
    :param float delta: The resolution δ.
    :param BrownianPath path: The driving path.
    :param str|None mode: The controller mode; defaults to ``DEFAULT_MODE``.
    :param float|None nu: The bump half-width; defaults to ``ρ/2``.
    :param TransformParams|None params: A transform already built for ``p``.
    :returns TransformedRun: The run.
    """
    tp = params if params is not None else TransformParams.for_problem(p, nu)
    q = transformed_problem(p, tp)
    ctrl = StepController.build(delta, p.eps0, p.theta, mode or get_mode())
    return TransformedRun(run_adaptive_qm(q, ctrl, path), tp, q, path)


def run_transformed_equidistant(p: SdeProblem, n: int, path: BrownianPath,
                                nu: float | None = None,
                                params: TransformParams | None = None) -> TransformedRun:
    """Run the equidistant quasi-Milstein scheme on the transformed problem.

    :param SdeProblem p: The original problem.
    :param int n: The number of steps.
    :param BrownianPath path: The driving path.
    :param float|None nu: The bump half-width; defaults to ``ρ/2``.
    :param TransformParams|None params: A transform already built for ``p``.
    :returns TransformedRun: The run.
    """
    tp = params if params is not None else TransformParams.for_problem(p, nu)
    q = transformed_problem(p, tp)
    return TransformedRun(run_equidistant(q, n, path, SchemeKind.QUASI_MILSTEIN), tp, q, path)
