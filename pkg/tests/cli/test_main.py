"""
Test the jumpdrift command line.
"""

import csv
import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from rich.console import Console

from jumpdrift.cli.main import EXIT_ASSUMPTION, EXIT_CONFIG, EXIT_NUMERICS, EXIT_OK, run
from jumpdrift.errors import PathError
from jumpdrift.fixtures import fixture_path
from tests.cli.setup_files import setup_json, write_json


JUMP = str(fixture_path('jump_drift.json'))
BROWNIAN = str(fixture_path('brownian.json'))


class CommandTest(unittest.TestCase):
    """Run each command against the bundled documents."""
    def setUp(self) -> None:
        self.dir = tempfile.TemporaryDirectory()  # pylint: disable=consider-using-with
        self.buffer = io.StringIO()
        self.console = Console(file=self.buffer, width=200)

    def tearDown(self) -> None:
        self.dir.cleanup()

    def _run(self, *argv: str) -> int:
        return run(list(argv), console=self.console)

    def _read(self, name: str) -> list[list[str]]:
        with open(os.path.join(self.dir.name, name), newline='', encoding='UTF-8') as data:
            return list(csv.reader(data))

    def test_validate(self) -> None:
        """The jump problem satisfies every hard assumption."""
        self.assertEqual(self._run('validate', '-c', JUMP), EXIT_OK)
        self.assertIn('All hard assumptions hold.', self.buffer.getvalue())

    def test_validate_degenerate(self) -> None:
        """A diffusion vanishing on Θ fails validation."""
        config = write_json(setup_json('degenerate_sigma.json'), self.dir.name)
        self.assertEqual(self._run('validate', '-c', config), EXIT_ASSUMPTION)
        self.assertIn('Hard assumption (sigma1) failed', self.buffer.getvalue())

    def test_missing_field(self) -> None:
        """A malformed document exits with the configuration code."""
        doc = setup_json('degenerate_sigma.json')
        del doc['problem']['mu']
        config = write_json(doc, self.dir.name)
        self.assertEqual(self._run('validate', '-c', config), EXIT_CONFIG)
        self.assertIn('problem.mu', self.buffer.getvalue())

    def test_transform(self) -> None:
        """The jump problem is smoothed with ρ = 1/8 and ν = ρ/2."""
        self.assertEqual(self._run('transform', '-c', JUMP, '--grid', '1000'), EXIT_OK)
        output = self.buffer.getvalue()
        self.assertIn('rho = 0.125, nu = 0.0625', output)
        self.assertIn("min sampled G'", output)

    def test_identity_transform(self) -> None:
        """A continuous drift needs no transform."""
        config = str(fixture_path('continuous_drift.json'))
        self.assertEqual(self._run('transform', '-c', config), EXIT_OK)
        self.assertIn('identity transform', self.buffer.getvalue())

    def test_simulate(self) -> None:
        """simulate writes a reproducible trajectory from x0 to time 1."""
        self.assertEqual(self._run('simulate', '-c', JUMP, '--delta', '0.001', '-o',
                                   self.dir.name), EXIT_OK)
        rows = self._read('jump_drift_trajectory.csv')
        self.assertEqual([float(v) for v in rows[0][:2]], [0.0, 0.1])
        self.assertEqual(rows[0][2], '0')
        self.assertGreaterEqual(float(rows[-1][0]), 1.0)
        self.assertEqual(int(rows[-1][2]), len(rows) - 1)
        with open(os.path.join(self.dir.name, 'jump_drift_trajectory.json'),
                  encoding='UTF-8') as data:
            summary = json.load(data)
        self.assertEqual(summary['cost'], int(rows[-1][2]))
        self.assertEqual(summary['mode'], 'clamped')

        self._run('simulate', '-c', JUMP, '--delta', '0.001', '-o', self.dir.name)
        self.assertEqual(self._read('jump_drift_trajectory.csv'), rows)

    def test_simulate_csv_only(self) -> None:
        """The cost is in the CSV when no JSON is written."""
        with open(JUMP, encoding='UTF-8') as data:
            doc = json.load(data)
        doc['output'] = {'directory': self.dir.name, 'formats': ['csv']}
        config = write_json(doc, self.dir.name)
        self.assertEqual(self._run('simulate', '-c', config, '--delta', '0.01'), EXIT_OK)
        self.assertFalse(os.path.exists(os.path.join(self.dir.name, 'jump_drift_trajectory.json')))
        rows = self._read('jump_drift_trajectory.csv')
        self.assertEqual([int(row[2]) for row in rows], list(range(len(rows))))
        self.assertIn(f"{len(rows) - 1} steps", self.buffer.getvalue())

    def test_dump_and_replay(self) -> None:
        """A dumped path replays the same trajectory whatever the seed."""
        dump = os.path.join(self.dir.name, 'path.bin')
        first = os.path.join(self.dir.name, 'first')
        second = os.path.join(self.dir.name, 'second')
        self.assertEqual(self._run('simulate', '-c', JUMP, '--delta', '0.01', '--path-index', '3',
                                   '--dump-path', dump, '-o', first), EXIT_OK)
        self.assertTrue(os.path.getsize(dump) > 8)
        self.assertEqual(self._run('simulate', '-c', JUMP, '--delta', '0.01', '--seed', '99',
                                   '--replay-path', dump, '-o', second), EXIT_OK)
        self.assertEqual(self._read('first/jump_drift_trajectory.csv'),
                         self._read('second/jump_drift_trajectory.csv'))

        self._run('simulate', '-c', JUMP, '--delta', '0.01', '-o', second)
        self.assertNotEqual(self._read('first/jump_drift_trajectory.csv'),
                            self._read('second/jump_drift_trajectory.csv'))

    def test_bad_replay(self) -> None:
        """A corrupt dump is a numerical failure, and the path index must be non-negative."""
        dump = os.path.join(self.dir.name, 'path.bin')
        with open(dump, 'wb') as out:
            out.write(b'\x01')
        self.assertEqual(self._run('simulate', '-c', JUMP, '--replay-path', dump, '-o',
                                   self.dir.name), EXIT_NUMERICS)
        self.assertEqual(self._run('simulate', '-c', JUMP, '--path-index', '-2', '-o',
                                   self.dir.name), EXIT_CONFIG)

    def test_inadmissible_delta(self) -> None:
        """Theory mode rejects a coarse resolution."""
        self.assertEqual(self._run('simulate', '-c', JUMP, '--delta', '0.5', '--mode', 'theory',
                                   '-o', self.dir.name), EXIT_CONFIG)

    def test_negative_seed(self) -> None:
        """Seeds must be non-negative."""
        self.assertEqual(self._run('simulate', '-c', JUMP, '--seed', '-1', '-o', self.dir.name),
                         EXIT_CONFIG)

    def test_convergence(self) -> None:
        """convergence writes one CSV row per resolution and a summary."""
        self.assertEqual(self._run('convergence', '-c', BROWNIAN, '--threads', '1', '-o',
                                   self.dir.name), EXIT_OK)
        rows = self._read('brownian_equidistant_em_convergence.csv')
        self.assertEqual(len(rows), 4)
        self.assertEqual(float(rows[1][0]), 0.125)
        with open(os.path.join(self.dir.name, 'brownian_equidistant_em_convergence.json'),
                  encoding='UTF-8') as data:
            summary = json.load(data)
        self.assertEqual(summary['experiment']['paths'], 20)

    def test_convergence_on_workers(self) -> None:
        """Worker processes give the same table as a serial run."""
        serial = os.path.join(self.dir.name, 'serial')
        pooled = os.path.join(self.dir.name, 'pooled')
        self._run('convergence', '-c', BROWNIAN, '--threads', '1', '-o', serial, '--seed', '4')
        self.assertEqual(self._run('convergence', '-c', BROWNIAN, '--threads', '2', '-o', pooled,
                                   '--seed', '4'), EXIT_OK)
        self.assertEqual(self._read('serial/brownian_equidistant_em_convergence.csv'),
                         self._read('pooled/brownian_equidistant_em_convergence.csv'))

    def test_convergence_with_baseline(self) -> None:
        """A baseline gets its own table and files from the same run."""
        with open(BROWNIAN, encoding='UTF-8') as data:
            doc = json.load(data)
        doc['experiment']['baselines'] = ['equidistant_qm']
        config = write_json(doc, self.dir.name)
        self.assertEqual(self._run('convergence', '-c', config, '--threads', '1', '-o',
                                   self.dir.name), EXIT_OK)
        for method in ('equidistant_em', 'equidistant_qm'):
            rows = self._read(f"brownian_{method}_convergence.csv")
            self.assertEqual(len(rows), 4)
            with open(os.path.join(self.dir.name, f"brownian_{method}_convergence.json"),
                      encoding='UTF-8') as data:
                self.assertEqual(json.load(data)['method'], method)

    def test_failed_path(self) -> None:
        """A failing path exits with the numerics code and says how to replay it."""
        with patch('jumpdrift.harness.runner.run_method', side_effect=PathError('bad query')):
            code = self._run('convergence', '-c', BROWNIAN, '--threads', '1', '-o',
                             self.dir.name)
        self.assertEqual(code, EXIT_NUMERICS)
        output = self.buffer.getvalue()
        self.assertIn('Path 0 (seed 0) failed', output)
        self.assertIn('Replay the reference run', output)

    def test_cost(self) -> None:
        """cost reports E[N]·δ for an equidistant method as exactly 1."""
        self.assertEqual(self._run('cost', '-c', BROWNIAN, '--threads', '1', '-o',
                                   self.dir.name), EXIT_OK)
        rows = self._read('brownian_equidistant_em_cost.csv')
        self.assertEqual(len(rows), 4)
        self.assertEqual([float(row[2]) for row in rows[1:]], [1.0, 1.0, 1.0])
        self.assertIn('spread (max/min): 1.000', self.buffer.getvalue())

    def test_no_experiment(self) -> None:
        """convergence needs an experiment section."""
        config = write_json(setup_json('degenerate_sigma.json'), self.dir.name)
        self.assertEqual(self._run('convergence', '-c', config, '-o', self.dir.name), EXIT_CONFIG)
