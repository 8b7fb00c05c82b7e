"""
Test the typed accessors of the environment configuration.
"""

import os
import unittest
from unittest.mock import patch

from jumpdrift.config import CONFIG, get_float, get_int, get_threads
from jumpdrift.errors import ImproperConfigurationError


class AccessorTest(unittest.TestCase):
    """Test get_float, get_int and get_threads."""
    def test_parses(self) -> None:
        """Values are read as numbers."""
        with patch.dict(CONFIG, {'INVERSE_TOL': '1e-10', 'INVERSE_MAX_ITER': '50'}):
            self.assertEqual(get_float('INVERSE_TOL'), 1e-10)
            self.assertEqual(get_int('INVERSE_MAX_ITER'), 50)

    def test_rejects(self) -> None:
        """Values that do not parse are configuration errors."""
        with patch.dict(CONFIG, {'INVERSE_TOL': 'tiny', 'SUP_POINTS': '6.5'}):
            with self.assertRaises(ImproperConfigurationError):
                get_float('INVERSE_TOL')
            with self.assertRaises(ImproperConfigurationError):
                get_int('SUP_POINTS')

    def test_threads(self) -> None:
        """Zero threads means one per core."""
        with patch.dict(CONFIG, {'DEFAULT_THREADS': '0'}):
            self.assertEqual(get_threads(), os.cpu_count() or 1)
        with patch.dict(CONFIG, {'DEFAULT_THREADS': '3'}):
            self.assertEqual(get_threads(), 3)
