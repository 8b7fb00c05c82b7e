"""
Test the coefficients of the transformed problem.
"""

import unittest

from jumpdrift.core import evaluate, evaluate_d, one_sided_limits, validate_problem
from jumpdrift.transform import TransformParams, TransformedProblem, transformed_problem
from tests.problems import jump_problem, smooth_problem


class TransformedProblemTest(unittest.TestCase):
    """Test transformed_problem."""
    def setUp(self) -> None:
        """Transform the fixture problem."""
        self.p = jump_problem()
        self.tp = TransformParams.for_problem(self.p)
        self.q = transformed_problem(self.p, self.tp)

    def test_drift_is_continuous(self) -> None:
        """The transformed drift has no jump at the kink, and is 0 there."""
        left, right = one_sided_limits(self.q.mu, 0.0)
        self.assertAlmostEqual(left, 0.0, delta=1e-12)
        self.assertAlmostEqual(right, 0.0, delta=1e-12)
        self.assertAlmostEqual(evaluate(self.q.mu, 0.0), 0.0, delta=1e-12)
        self.assertTrue(self.q.drift_is_continuous)

    def test_drift_near_kink(self) -> None:
        """μ̃ barely moves across the kink."""
        self.assertLessEqual(abs(evaluate(self.q.mu, -1e-7) - evaluate(self.q.mu, 1e-7)), 1e-5)

    def test_diffusion_outside_support(self) -> None:
        """σ̃ = 1 where G is the identity."""
        self.assertEqual(evaluate(self.q.sigma, 0.5), 1.0)
        self.assertEqual(evaluate_d(self.q.sigma, 0.5), 0.0)

    def test_structure(self) -> None:
        """Θ and the start value are carried through G."""
        self.assertIsInstance(self.q, TransformedProblem)
        self.assertEqual(self.q.theta, (0.0,))
        self.assertEqual(self.q.x0, 0.1)
        self.assertEqual(self.q.mu.breakpoints, (0.0,))

    def test_coefficients_match_pieces(self) -> None:
        """The cached coefficients agree with the piecewise functions."""
        for y in (-0.05, -0.01, 0.0, 0.02, 0.3):
            coefficients = self.q.coefficients(y)
            sigma = evaluate(self.q.sigma, y)
            self.assertAlmostEqual(coefficients.drift, evaluate(self.q.mu, y), delta=1e-12)
            self.assertAlmostEqual(coefficients.diffusion, sigma, delta=1e-12)
            self.assertAlmostEqual(coefficients.correction,
                                   sigma * evaluate_d(self.q.sigma, y), delta=1e-10)

    def test_drift_derivative(self) -> None:
        """The drift pieces carry their chain-rule derivatives."""
        piece = self.q.mu.pieces[1]
        h = 1e-5
        for y in (0.01, 0.03, 0.05):
            central = (piece.value(y + h) - piece.value(y - h)) / (2 * h)
            self.assertAlmostEqual(piece.derivative(y), central, delta=1e-3)

    def test_assumptions_hold(self) -> None:
        """The transformed problem passes the hard assumption checks."""
        self.assertTrue(validate_problem(self.q, samples=100).passed)

    def test_identity(self) -> None:
        """A continuous drift needs no transform."""
        p = smooth_problem('-x', '-1', '1', '0')
        tp = TransformParams.for_problem(p)
        self.assertTrue(tp.is_identity)
        self.assertIs(transformed_problem(p, tp), p)
