"""
Full-scale statistical checks of the Brownian path and of increment scaling.

These take minutes; set RUN_ACCEPTANCE_TESTS to run them.
"""

import os
import unittest

import numpy as np

from jumpdrift.brownian import BrownianPath
from jumpdrift.harness import increment_scaling
from tests.problems import jump_problem


@unittest.skipUnless(os.getenv("RUN_ACCEPTANCE_TESTS"), "slow Monte Carlo run")
class BrownianStatisticsTest(unittest.TestCase):
    """Law of W₁ and of the bridge midpoint over 10⁵ paths."""
    def test_endpoint_and_midpoint(self) -> None:
        """Var(W₁) ≈ 1 and the bridge residual at 1/2 has variance ≈ 1/4."""
        ends, residuals = [], []
        for index in range(100_000):
            path = BrownianPath(11, index)
            w1 = path.sample_at(1.0)
            ends.append(w1)
            residuals.append(path.sample_at(0.5) - w1 / 2.0)
        self.assertTrue(0.98 <= np.var(ends) <= 1.02)
        self.assertTrue(0.245 <= np.var(residuals) <= 0.255)

    def test_replay(self) -> None:
        """A fixed seed replays bit for bit."""
        def draws(index: int) -> list[float]:
            path = BrownianPath(11, index)
            return [path.sample_at(t) for t in (1.0, 0.5, 0.25, 0.75, 0.1)]
        for index in range(1000):
            self.assertEqual(draws(index), draws(index))


@unittest.skipUnless(os.getenv("RUN_ACCEPTANCE_TESTS"), "slow Monte Carlo run")
class IncrementScalingTest(unittest.TestCase):
    """Increments of the transformed adaptive scheme over 10³ paths."""
    def test_square_root_scaling(self) -> None:
        """The log-log slope of the RMS increment against the lag is 1/2 ± 0.1."""
        lags = [2.0 ** -k for k in range(4, 11)]
        result = increment_scaling(jump_problem(), 2.0 ** -12, 1000, lags, mode='clamped')
        self.assertAlmostEqual(result.fit.slope, 0.5, delta=0.1)
