"""
Equidistant Euler-Maruyama and quasi-Milstein baselines on the grid ``τᵢ = i/n``.
"""

from enum import StrEnum

from jumpdrift.brownian import BrownianPath
from jumpdrift.core.problem import SdeProblem
from jumpdrift.errors import ProblemError
from .trajectory import Trajectory, qm_step


class SchemeKind(StrEnum):
    """The update used by an equidistant run."""
    EULER_MARUYAMA = 'euler_maruyama'
    QUASI_MILSTEIN = 'quasi_milstein'


def run_equidistant(p: SdeProblem, n: int, path: BrownianPath,
                    kind: SchemeKind | str = SchemeKind.QUASI_MILSTEIN) -> Trajectory:
    """Run an equidistant scheme with ``n`` steps.

    :param SdeProblem p: The problem.
    :param int n: The number of steps, at least 1.
    :param BrownianPath path: The driving path.
    :param SchemeKind|str kind: Euler-Maruyama drops the Milstein correction.
    :raises ProblemError: If ``n < 1`` or ``kind`` is unknown.
    :returns Trajectory: The run, with ``τ_n = 1`` exactly.
    """
    if n < 1:
        raise ProblemError(f"An equidistant run needs at least one step, not {n}.")
    try:
        kind = SchemeKind(kind)
    except ValueError as exc:
        raise ProblemError(f"Unknown scheme kind {kind!r}.") from exc

    tr = Trajectory.start(p.x0)
    x = p.x0
    for i in range(n):
        t, t_next = i / n, (i + 1) / n
        coefficients = p.coefficients(x)
        if kind is SchemeKind.EULER_MARUYAMA:
            coefficients = coefficients._replace(correction=0.0)
        x = qm_step(x, coefficients.drift, coefficients.diffusion, coefficients.correction,
                    t_next - t, path.increment(t, t_next))
        tr.append(coefficients, 1, t_next, x)
    return tr
