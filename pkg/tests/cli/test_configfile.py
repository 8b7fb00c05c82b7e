"""
Test reading and writing configuration documents.
"""

import copy
import os
import tempfile
import unittest

from jumpdrift.cli import (dump_config, experiment_from_document, load_config, parse_document,
                           with_overrides)
from jumpdrift.errors import ConfigFileError
from jumpdrift.fixtures import fixture_path
from jumpdrift.harness import ErrorKind, Method
from tests.cli.setup_files import setup_json


class LoadConfigTest(unittest.TestCase):
    """Test load_config on the bundled documents."""
    def test_jump_drift(self) -> None:
        """The jump fixture reads with every default filled in."""
        config = load_config(fixture_path('jump_drift.json'))
        p = config.problem
        self.assertEqual(p.name, 'jump_drift')
        self.assertEqual(p.x0, 0.1)
        self.assertEqual(p.theta, (0.0,))
        self.assertEqual(p.mu.values_at_breakpoints, (-1.0,))
        self.assertIsNone(config.nu)
        self.assertEqual(config.formats, ('csv', 'json'))

        spec = config.experiment
        self.assertEqual(spec.method, Method.ADAPTIVE_TRANSFORMED)
        self.assertEqual(spec.error_kind, ErrorKind.FINAL_TIME)
        self.assertEqual(spec.grid[-1], 2.0 ** -11)
        self.assertEqual(spec.mode, 'clamped')
        self.assertIs(spec.document, config.document)

    def test_continuous_drift(self) -> None:
        """A smooth problem has an empty discontinuity set."""
        config = load_config(fixture_path('continuous_drift.json'))
        self.assertEqual(config.problem.theta, ())
        self.assertTrue(config.problem.drift_is_continuous)

    def test_unreadable(self) -> None:
        """A missing file is a configuration error."""
        with self.assertRaises(ConfigFileError):
            load_config('/nonexistent/config.json')

    def test_bad_json(self) -> None:
        """A syntax error is located by line and column."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'broken.json')
            with open(path, 'w', encoding='UTF-8') as out:
                out.write('{\n  "problem": \n}\n')
            with self.assertRaises(ConfigFileError) as cm:
                load_config(path)
        self.assertTrue(cm.exception.field.startswith('line 3'))


class ParseDocumentTest(unittest.TestCase):
    """Test parse_document on malformed documents."""
    def setUp(self) -> None:
        self.doc = setup_json('degenerate_sigma.json')

    def _field(self, doc) -> str:
        with self.assertRaises(ConfigFileError) as cm:
            parse_document(doc)
        return cm.exception.field

    def test_missing_number(self) -> None:
        """A missing x0 is reported by its path."""
        del self.doc['problem']['x0']
        self.assertEqual(self._field(self.doc), 'problem.x0')

    def test_bad_expression(self) -> None:
        """An expression using an unknown name is reported at its piece."""
        self.doc['problem']['sigma']['pieces'][0]['value'] = 'y + 1'
        self.assertEqual(self._field(self.doc), 'problem.sigma.pieces[0]')

    def test_missing_derivative(self) -> None:
        """Every piece needs a derivative expression."""
        del self.doc['problem']['mu']['pieces'][1]['derivative']
        self.assertEqual(self._field(self.doc), 'problem.mu.pieces[1].derivative')

    def test_piece_count(self) -> None:
        """k breakpoints need k + 1 pieces."""
        self.doc['problem']['mu']['breakpoints'] = [0, 1]
        self.assertEqual(self._field(self.doc), 'problem.mu')

    def test_bad_nu(self) -> None:
        """ν must be positive or "auto"."""
        self.doc['transform'] = {'nu': -0.1}
        self.assertEqual(self._field(self.doc), 'transform.nu')
        self.doc['transform'] = {'nu': 0.05}
        self.assertEqual(parse_document(self.doc).nu, 0.05)

    def test_bad_format(self) -> None:
        """Only csv and json output is known."""
        self.doc['output'] = {'formats': ['xlsx']}
        self.assertEqual(self._field(self.doc), 'output.formats')

    def test_not_an_object(self) -> None:
        """The document must be an object."""
        self.assertEqual(self._field([1, 2]), 'document')


class ExperimentDocumentTest(unittest.TestCase):
    """Test the experiment section."""
    def setUp(self) -> None:
        self.doc = copy.deepcopy(load_config(fixture_path('brownian.json')).document)

    def test_defaults(self) -> None:
        """Unset settings take their defaults."""
        del self.doc['experiment']['master_seed']
        spec = experiment_from_document(self.doc)
        self.assertEqual(spec.p, 2.0)
        self.assertEqual(spec.master_seed, 0)
        self.assertIsNone(spec.delta_ref)

    def test_step_counts(self) -> None:
        """n_grid lists step counts."""
        del self.doc['experiment']['grid']
        self.doc['experiment']['n_grid'] = [4, 8, 16]
        self.assertEqual(experiment_from_document(self.doc).grid, (0.25, 0.125, 0.0625))

    def test_bad_method(self) -> None:
        """An unknown method is named in the error."""
        self.doc['experiment']['method'] = 'runge_kutta'
        with self.assertRaises(ConfigFileError) as cm:
            experiment_from_document(self.doc)
        self.assertEqual(cm.exception.field, 'experiment.method')

    def test_baselines(self) -> None:
        """Baselines are read as methods, and unknown or repeated ones are refused."""
        self.doc['experiment']['baselines'] = ['equidistant_qm']
        spec = experiment_from_document(self.doc)
        self.assertEqual(spec.methods, (Method.EQUIDISTANT_EM, Method.EQUIDISTANT_QM))
        self.doc['experiment']['baselines'] = ['runge_kutta']
        with self.assertRaises(ConfigFileError) as cm:
            experiment_from_document(self.doc)
        self.assertEqual(cm.exception.field, 'experiment.baselines')
        self.doc['experiment']['baselines'] = ['equidistant_em']
        with self.assertRaises(ConfigFileError) as cm:
            experiment_from_document(self.doc)
        self.assertEqual(cm.exception.field, 'experiment')

    def test_invalid_experiment(self) -> None:
        """Invalid settings are reported against the experiment section."""
        self.doc['experiment']['paths'] = 1
        with self.assertRaises(ConfigFileError) as cm:
            experiment_from_document(self.doc)
        self.assertEqual(cm.exception.field, 'experiment')


class DumpConfigTest(unittest.TestCase):
    """Test dump_config and with_overrides."""
    def test_round_trip(self) -> None:
        """A dumped document parses to the same problem and experiment."""
        config = load_config(fixture_path('jump_drift.json'))
        again = parse_document(dump_config(config))
        self.assertEqual(again.problem.theta, config.problem.theta)
        self.assertEqual(again.problem.mu.one_sided_limits, config.problem.mu.one_sided_limits)
        self.assertEqual(again.problem.sigma.breakpoints, ())
        self.assertEqual(again.experiment.echo(), config.experiment.echo())
        self.assertEqual(dump_config(again), dump_config(config))

    def test_overrides(self) -> None:
        """Overrides change the experiment and its document, not the original."""
        config = load_config(fixture_path('jump_drift.json'))
        changed = with_overrides(config, seed=5, mode='theory')
        self.assertEqual(changed.experiment.master_seed, 5)
        self.assertEqual(changed.experiment.mode, 'theory')
        self.assertEqual(changed.document['experiment']['master_seed'], 5)
        self.assertEqual(config.experiment.master_seed, 0)
        self.assertIs(with_overrides(config), config)
