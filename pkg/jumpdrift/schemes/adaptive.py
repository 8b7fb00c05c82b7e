"""
The adaptive quasi-Milstein scheme ``τᵢ₊₁ = τᵢ + h^δ(X̂ᵢ)``.
"""

import logging

from jumpdrift.brownian import BrownianPath
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import StepCapExceededError
from .controller import StepController
from .trajectory import Trajectory, qm_step


LOGGER = logging.getLogger(__name__)
"""The logging object for this module."""


def run_adaptive_qm(p: SdeProblem, ctrl: StepController, path: BrownianPath,
                    warn: bool = True) -> Trajectory:
    """Run the adaptive quasi-Milstein scheme up to the first grid time at or past 1.

    The scheme assumes a continuous drift.  On a drift with jumps it still
    runs, for comparison, after logging a warning.

    :param SdeProblem p: The problem.
    :param StepController ctrl: The step-size controller.
    :param BrownianPath path: The driving path, queried in time order.
    :param bool warn: Whether to warn about a discontinuous drift.
    :raises StepCapExceededError: If the run takes more than ``ctrl.max_steps`` steps.
    :returns Trajectory: The run; evaluate it at 1 with :func:`eval_trajectory`.
    """
    if warn and not p.drift_is_continuous:
        LOGGER.warning("Running the adaptive scheme on %s, whose drift is discontinuous.",
                       p.name or 'a problem')

    cap = ctrl.max_steps
    tr = Trajectory.start(p.x0)
    t, x = 0.0, p.x0
    while t < 1.0:
        if tr.cost >= cap:
            raise StepCapExceededError(f"More than {cap} steps at delta = {ctrl.delta} "
                                       f"(reached t = {t!r}).")
        coefficients = p.coefficients(x)
        branch = ctrl.branch(x)
        t_next = t + ctrl.step_size(x)
        dw = path.increment(t, t_next)
        x = qm_step(x, coefficients.drift, coefficients.diffusion, coefficients.correction,
                    t_next - t, dw)
        tr.append(coefficients, branch, t_next, x)
        t = t_next
    return tr
