"""
Test the CSV and JSON result writers.
"""

import csv
import json
import os
import tempfile
import unittest

from jumpdrift.harness import (CostRow, CostTable, ExperimentSpec, Method, RateFit, RateRow,
                               RateTable, cost_summary, rate_summary, write_cost_csv,
                               write_rate_csv, write_summary_json, write_trajectory_csv)
from jumpdrift.harness.output import COST_HEADER, RATE_HEADER
from tests.problems import jump_problem


def _read(file: str) -> list[list[str]]:
    with open(file, newline='', encoding='utf-8') as data:
        return list(csv.reader(data))


class OutputTest(unittest.TestCase):
    """Test the result writers."""
    def setUp(self) -> None:
        self.dir = tempfile.TemporaryDirectory()  # pylint: disable=consider-using-with
        self.spec = ExperimentSpec(jump_problem(), Method.ADAPTIVE_TRANSFORMED, (0.1, 0.05), 10,
                                   mode='clamped')

    def tearDown(self) -> None:
        self.dir.cleanup()

    def _file(self, name: str) -> str:
        return os.path.join(self.dir.name, name)

    def test_rate_csv(self) -> None:
        """A rate table has a header and one row per resolution."""
        table = RateTable((RateRow(0.1, 12.0, 0.5, 0.2, 0.01, None),
                           RateRow(0.05, 25.0, 0.7, 0.1, 0.01, 1.0)), None, None)
        write_rate_csv(table, self._file('rate.csv'))
        rows = _read(self._file('rate.csv'))
        self.assertEqual(tuple(rows[0]), RATE_HEADER)
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[1][-1], '')
        self.assertEqual(float(rows[2][-1]), 1.0)

    def test_cost_csv(self) -> None:
        """A cost table has a header and one row per resolution."""
        table = CostTable((CostRow(0.125, 8.0, 8, (1.0, 0.0, 0.0)),))
        write_cost_csv(table, self._file('cost.csv'))
        rows = _read(self._file('cost.csv'))
        self.assertEqual(tuple(rows[0]), COST_HEADER)
        self.assertEqual([float(v) for v in rows[1]], [0.125, 8.0, 1.0, 8.0, 1.0, 0.0, 0.0])

    def test_trajectory_csv(self) -> None:
        """A trajectory is written as bare t,x rows numbered by step."""
        write_trajectory_csv([0.0, 0.5, 1.0], [0.1, 0.2, 0.3], self._file('path.csv'))
        rows = _read(self._file('path.csv'))
        self.assertEqual(rows, [['0.0', '0.1', '0'], ['0.5', '0.2', '1'], ['1.0', '0.3', '2']])

    def test_rate_summary(self) -> None:
        """The summary echoes the experiment and the fits."""
        table = RateTable((), RateFit(0.5, -1.0, 0.99), None)
        file = self._file('rate.json')
        write_summary_json(rate_summary(self.spec, table), file)
        with open(file, encoding='utf-8') as data:
            summary = json.load(data)
        self.assertEqual(summary['experiment']['method'], 'adaptive_transformed')
        self.assertEqual(summary['fit_delta'], {'slope': 0.5, 'intercept': -1.0, 'r2': 0.99})
        self.assertIsNone(summary['fit_cost'])
        self.assertEqual(summary['branch_fractions'], [])

    def test_cost_summary(self) -> None:
        """The cost summary carries the spread and the maximal costs."""
        table = CostTable((CostRow(0.125, 8.0, 8, (1.0, 0.0, 0.0)),
                           CostRow(0.0625, 32.0, 40, (0.5, 0.5, 0.0))))
        summary = cost_summary(self.spec, table)
        self.assertEqual(summary['cost_times_delta_spread'], 2.0)
        self.assertEqual(summary['max_cost'], [8, 40])
