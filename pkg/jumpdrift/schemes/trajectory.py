"""
Scheme output: the time grid, the states on it, and the continuous extension.
"""

from bisect import bisect_left
from dataclasses import dataclass, field

from jumpdrift.brownian import BrownianPath
from jumpdrift.core.problem import LocalCoefficients
from jumpdrift.errors import PathError


def qm_step(x: float, mu: float, sigma: float, sig_dsig: float, dt: float, dw: float) -> float:
    """Take one quasi-Milstein step.

    :param float x: The current state.
    :param float mu: The drift at ``x``.
    :param float sigma: The diffusion at ``x``.
    :param float sig_dsig: ``σ·d_σ`` at ``x``; 0 gives an Euler-Maruyama step.
    :param float dt: The time step, at least 0.
    :param float dw: The Brownian increment over the step.
    :returns float: ``x + μ dt + σ dW + ½ σ d_σ (dW² - dt)``.
    """
    return x + mu * dt + sigma * dw + 0.5 * sig_dsig * (dw * dw - dt)


@dataclass
class Trajectory:
    """The nodes ``(τᵢ, X̂ᵢ)`` of one scheme run.

    ``drift``, ``diffusion`` and ``correction`` hold the coefficients used
    for the step leaving each node, so they have one entry fewer than
    ``times``.  ``branch_counts[b]`` counts the steps taken in zone ``b + 1``
    of the step-size function.
    """
    times: list[float]
    values: list[float]
    drift: list[float] = field(default_factory=list)
    diffusion: list[float] = field(default_factory=list)
    correction: list[float] = field(default_factory=list)
    branch_counts: list[int] = field(default_factory=lambda: [0, 0, 0])

    @classmethod
    def start(cls, x0: float) -> 'Trajectory':
        """Begin a run at ``(0, x0)``.

        :param float x0: The initial state.
        :returns Trajectory: A run with a single node.
        """
        return cls([0.0], [x0])

    @property
    def cost(self) -> int:
        """The number of steps ``N``, the first index with ``τ_N >= 1``."""
        return len(self.times) - 1

    def append(self, coefficients: LocalCoefficients, branch: int, t: float, x: float) -> None:
        """Record one step: the coefficients it used and the node it reached.

        :param LocalCoefficients coefficients: The coefficients at the previous node.
        :param int branch: The step-size zone the step was taken in.
        :param float t: The new grid time.
        :param float x: The new state.
        """
        self.drift.append(coefficients.drift)
        self.diffusion.append(coefficients.diffusion)
        self.correction.append(coefficients.correction)
        self.branch_counts[branch - 1] += 1
        self.times.append(t)
        self.values.append(x)


def eval_trajectory(tr: Trajectory, path: BrownianPath, t: float) -> float:
    """Evaluate the continuous extension of a scheme run at ``t``.

    Between nodes the last step is replayed over ``(τᵢ, t]`` with the
    Brownian increment bridged from the path.

    :param Trajectory tr: The run.
    :param BrownianPath path: The path the run was driven by.
    :param float t: The time, in ``[0, τ_N]``.
    :raises PathError: If ``t`` is outside the grid.
    :returns float: ``X̂_t``; the node value when ``t`` is a node.
    """
    if not 0.0 <= t <= tr.times[-1]:
        raise PathError(f"t = {t!r} lies outside [0, {tr.times[-1]!r}].")

    i = bisect_left(tr.times, t)
    if tr.times[i] == t:
        return tr.values[i]

    k = i - 1
    tau = tr.times[k]
    return qm_step(tr.values[k], tr.drift[k], tr.diffusion[k], tr.correction[k],
                   t - tau, path.increment(tau, t))
