"""
The coefficients of the transformed SDE ``dZ = μ̃(Z) dt + σ̃(Z) dW`` with ``Z = G(X)``.

``μ̃ = (G'μ + ½G''σ²)∘G⁻¹`` and ``σ̃ = (G'σ)∘G⁻¹``.  Their derivatives follow
from the chain rule, for example ``σ̃'(y) = (G''σ + G'σ')(x) / G'(x)`` with
``x = G⁻¹(y)``.  The values at the images of the drift discontinuities use
the extended ``G''``, which is what makes ``μ̃`` continuous there.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from jumpdrift.core.piecewise import Piece, PiecewiseFn, evaluate, evaluate_d
from jumpdrift.core.problem import LocalCoefficients, SdeProblem
from .gmap import Side, TransformParams, g_eval, g_prime, g_second, g_third
from .inverse import g_inverse


@dataclass(frozen=True, kw_only=True)
class TransformedProblem(SdeProblem):
    """An SDE problem obtained by transforming another one with ``G``.

    ``last_inverse`` remembers the latest ``(y, G⁻¹(y))`` solved for the
    schemes, whose successive nodes are close, so each inversion starts
    from the previous one.
    """
    base: SdeProblem
    params: TransformParams
    last_inverse: list[float] = field(default_factory=lambda: [math.nan, math.nan],
                                      compare=False, repr=False)

    def coefficients(self, x: float) -> LocalCoefficients:
        """Return ``(μ̃, σ̃, σ̃·d_σ̃)`` at ``x``, inverting ``G`` once.

        :param float x: The transformed state.
        :returns LocalCoefficients: The coefficients at ``x``.
        """
        if (self.mu.breakpoint_index(x) is not None
                or self.sigma.breakpoint_index(x) is not None):
            return super().coefficients(x)

        tp, base = self.params, self.base
        last_y, last_x = self.last_inverse
        guess = last_x + (x - last_y) if math.isfinite(last_x) else None
        orig = g_inverse(tp, x, guess)
        self.last_inverse[:] = [x, orig]
        g1, g2 = g_prime(tp, orig), g_second(tp, orig)
        sig = evaluate(base.sigma, orig)
        return LocalCoefficients(g1 * evaluate(base.mu, orig) + 0.5 * g2 * sig * sig,
                                 g1 * sig,
                                 sig * (g2 * sig + g1 * evaluate_d(base.sigma, orig)))


def _side(x: float, upper: float | None) -> Side:
    """Return which one-sided derivative of ``G`` belongs to a piece at ``x``."""
    return 'left' if upper is not None and x == upper else 'right'


def _drift_piece(tp: TransformParams, mu: Piece, sigma: Piece, upper: float | None) -> Piece:
    def value(y: float) -> float:
        x = g_inverse(tp, y)
        side = _side(x, upper)
        sig = sigma.value(x)
        return g_prime(tp, x) * mu.value(x) + 0.5 * g_second(tp, x, side) * sig * sig

    def derivative(y: float) -> float:
        x = g_inverse(tp, y)
        side = _side(x, upper)
        g1, g2, g3 = g_prime(tp, x), g_second(tp, x, side), g_third(tp, x, side)
        m, dm = mu.value(x), mu.derivative(x)
        s, ds = sigma.value(x), sigma.derivative(x)
        return (g2 * m + g1 * dm + 0.5 * g3 * s * s + g2 * s * ds) / g1

    return Piece(value, derivative)


def _diffusion_piece(tp: TransformParams, sigma: Piece, upper: float | None) -> Piece:
    def value(y: float) -> float:
        x = g_inverse(tp, y)
        return g_prime(tp, x) * sigma.value(x)

    def derivative(y: float) -> float:
        x = g_inverse(tp, y)
        g1 = g_prime(tp, x)
        g2 = g_second(tp, x, _side(x, upper))
        return (g2 * sigma.value(x) + g1 * sigma.derivative(x)) / g1

    return Piece(value, derivative)


def transformed_problem(p: SdeProblem, tp: TransformParams) -> SdeProblem:
    """Build the problem satisfied by ``Z = G(X)``.

    The transformed coefficients break at the images ``G(c)`` of every
    breakpoint ``c`` of Θ, μ and σ; since ``G`` fixes the ``zᵢ``, the
    transformed Θ equals Θ.  An identity transform returns ``p`` itself.

    :param SdeProblem p: The original problem.
    :param TransformParams tp: The transform, built from ``p``.
    :returns SdeProblem: The transformed problem, evaluated lazily through
                         :func:`g_inverse`.
    """
    if tp.is_identity:
        return p

    cuts = sorted(set(p.theta) | set(p.mu.breakpoints) | set(p.sigma.breakpoints))
    bounds: list[float | None] = [None, *cuts, None]

    drift_pieces: list[Piece] = []
    diffusion_pieces: list[Piece] = []
    for i in range(len(cuts) + 1):
        lower, upper = bounds[i], bounds[i + 1]
        anchor = lower if lower is not None else -float('inf')
        mu_piece = p.mu.pieces[bisect_right(p.mu.breakpoints, anchor)]
        sigma_piece = p.sigma.pieces[bisect_right(p.sigma.breakpoints, anchor)]
        drift_pieces.append(_drift_piece(tp, mu_piece, sigma_piece, upper))
        diffusion_pieces.append(_diffusion_piece(tp, sigma_piece, upper))

    drift_values: list[float | None] = []
    diffusion_values: list[float | None] = []
    for c in cuts:
        side: Side = 'extended' if c in tp.z else 'right'
        g1 = g_prime(tp, c)
        sig = evaluate(p.sigma, c)
        drift_values.append(g1 * evaluate(p.mu, c)
                            + 0.5 * g_second(tp, c, side, p) * sig * sig)
        diffusion_values.append(g1 * sig)

    images = [g_eval(tp, c) for c in cuts]
    mu = PiecewiseFn.build(images, drift_pieces, drift_values)
    sigma = PiecewiseFn.build(images, diffusion_pieces, diffusion_values)
    theta = tuple(g_eval(tp, xi) for xi in p.theta)
    return TransformedProblem(x0=g_eval(tp, p.x0), mu=mu, sigma=sigma, theta=theta,
                              eps0=p.eps0, name=f"{p.name} (transformed)".strip(),
                              base=p, params=tp)
