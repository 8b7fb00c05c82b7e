"""
The coupled reference solution that stands in for the unknown exact solution.
"""

from collections.abc import Sequence

from jumpdrift.brownian import BrownianPath
from jumpdrift.core.problem import SdeProblem
from jumpdrift.schemes import run_transformed_adaptive
from jumpdrift.transform import TransformParams


def reference_solution(p: SdeProblem, path: BrownianPath, delta_ref: float,
                       grid: Sequence[float], mode: str | None = None,
                       nu: float | None = None,
                       params: TransformParams | None = None) -> list[float]:
    """Run the transformed adaptive scheme at ``delta_ref`` and read it on a grid.

    This must be the first run on ``path``: it fixes the canonical query
    schedule that coarser runs then only refine.

    :param SdeProblem p: The problem.
    :param BrownianPath path: A fresh path.
    :param float delta_ref: The reference resolution.
    :param Sequence[float] grid: Times in ``[0, 1]``.
    :param str|None mode: The controller mode.
    :param float|None nu: The bump half-width.
    :param TransformParams|None params: A transform already built for ``p``.
    :returns list[float]: ``X̂_t`` at each grid time.
    """
    run = run_transformed_adaptive(p, delta_ref, path, mode, nu, params)
    return [run.x_at(t) for t in grid]
