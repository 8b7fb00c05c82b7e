"""
Test the SDE problem container and the assumption checks.
"""

import unittest

from jumpdrift.core import Piece, PiecewiseFn, SdeProblem, validate_problem
from jumpdrift.errors import ProblemError
from tests.problems import jump_problem


class ProblemTest(unittest.TestCase):
    """Test SdeProblem."""
    def test_theta_from_drift(self) -> None:
        """Θ defaults to the drift breakpoints."""
        p = jump_problem()
        self.assertEqual(p.theta, (0.0,))
        self.assertFalse(p.drift_is_continuous)

    def test_explicit_theta_is_sorted(self) -> None:
        """An explicit Θ is sorted."""
        p = SdeProblem.create(0.0, PiecewiseFn.smooth(Piece.constant(0.0)),
                              PiecewiseFn.smooth(Piece.constant(1.0)), theta=[0.5, -0.5])
        self.assertEqual(p.theta, (-0.5, 0.5))

    def test_non_finite_start(self) -> None:
        """x0 must be finite."""
        with self.assertRaises(ProblemError):
            SdeProblem.create(float('nan'), PiecewiseFn.smooth(Piece.constant(0.0)),
                              PiecewiseFn.smooth(Piece.constant(1.0)))

    def test_coefficients(self) -> None:
        """coefficients returns μ, σ and σ·σ'."""
        p = SdeProblem.create(0.0, PiecewiseFn.smooth(Piece.from_expressions('x', '1')),
                              PiecewiseFn.smooth(Piece.from_expressions('2*x', '2')))
        coefficients = p.coefficients(1.5)
        self.assertEqual(coefficients.drift, 1.5)
        self.assertEqual(coefficients.diffusion, 3.0)
        self.assertEqual(coefficients.correction, 6.0)


class ValidationTest(unittest.TestCase):
    """Test validate_problem."""
    def test_fixture_passes(self) -> None:
        """The fixture problem passes every check."""
        report = validate_problem(jump_problem(eps0=0.4), samples=200)
        self.assertTrue(report.passed)
        self.assertEqual(report.warnings, [], 'No soft check should fail on the fixture')
        self.assertIn('mu piece 0', report.check('(mu1)').estimates)

    def test_hard_checks(self) -> None:
        """Only eps0, gap and (sigma1) are hard; the sampled estimates are soft."""
        report = validate_problem(jump_problem(eps0=0.4), samples=200)
        hard = {check.name for check in report.checks if check.hard}
        self.assertEqual(hard, {'eps0', 'gap', '(sigma1)'})
        for name in ('(mu1)', '(mu2)', '(sigma1) lipschitz', '(sigma2)', 'theta'):
            self.assertFalse(report.check(name).hard, f"{name} should be soft")

    def test_sigma_vanishes(self) -> None:
        """σ(ξ) = 0 fails the hard (sigma1) check."""
        mu = PiecewiseFn.build([0.0], [Piece.constant(1.0), Piece.constant(-1.0)])
        sigma = PiecewiseFn.smooth(Piece.from_expressions('x', '1'))
        report = validate_problem(SdeProblem.create(0.1, mu, sigma), samples=200)
        self.assertFalse(report.passed)
        self.assertEqual([check.name for check in report.failures], ['(sigma1)'])

    def test_gap_condition(self) -> None:
        """ε₀ = 0.3 is too large for breakpoints 0.5 apart."""
        mu = PiecewiseFn.build([0.0, 0.5], [Piece.constant(1.0), Piece.constant(-1.0),
                                            Piece.constant(1.0)])
        sigma = PiecewiseFn.smooth(Piece.constant(1.0))
        report = validate_problem(SdeProblem.create(0.1, mu, sigma, eps0=0.3), samples=200)
        self.assertFalse(report.check('gap').passed)
        self.assertEqual(report.check('gap').estimates['half gap'], 0.25)

    def test_eps0_range(self) -> None:
        """ε₀ must lie in (0, 1]."""
        p = jump_problem(eps0=1.5)
        self.assertFalse(validate_problem(p, samples=200).check('eps0').passed)

    def test_wrong_derivative_is_soft(self) -> None:
        """A derivative that disagrees with the value is only a warning."""
        mu = PiecewiseFn.smooth(Piece.from_expressions('x**2', 'x'))
        sigma = PiecewiseFn.smooth(Piece.constant(1.0))
        with self.assertLogs('jumpdrift.core.validation', 'WARNING'):
            report = validate_problem(SdeProblem.create(0.0, mu, sigma), samples=200)
        self.assertTrue(report.passed)
        self.assertFalse(report.check('mu derivatives').passed)
