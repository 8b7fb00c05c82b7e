"""
Test the increment scaling estimate.
"""

import unittest

from jumpdrift.errors import ProblemError
from jumpdrift.harness import increment_scaling
from tests.problems import jump_problem


class IncrementScalingTest(unittest.TestCase):
    """Test increment_scaling."""
    def test_square_root_scaling(self) -> None:
        """Increments of the jump problem scale like the square root of the lag."""
        lags = (2.0 ** -2, 2.0 ** -3, 2.0 ** -4, 2.0 ** -5)
        result = increment_scaling(jump_problem(), 2.0 ** -8, 100, lags, mode='clamped')
        self.assertEqual(result.lags, lags)
        self.assertEqual(len(result.rms), 4)
        self.assertGreater(result.fit.slope, 0.3)
        self.assertLess(result.fit.slope, 0.7)

    def test_lag_past_the_end(self) -> None:
        """Increments must end by time 1."""
        with self.assertRaises(ProblemError):
            increment_scaling(jump_problem(), 2.0 ** -6, 2, (0.25, 0.5, 0.75), t0=0.5)
