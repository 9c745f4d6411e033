"""Tests for the command-line interface."""

import argparse
import contextlib
import io
import json
import pathlib
import tempfile
import unittest

from pklab.cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main, run
from pklab.parse import load_presentation
from .examples import catalog_presentation

KT_METRIC = 'I*w1^w1~ + w1^w2~ - w2^w1~'
ELECCION_FAMILY = 'I*(r*w1^w1~ + s*w4^w4~) + u*(w1^w2~ - w2^w1~) + v*(w1^w3~ - w3^w1~)' \
    ' - s*(w2^w3~ - w3^w2~)'


def run_main(*args: str):
    """Exit code, standard output and standard error of one invocation."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = main(list(args))
    return code, stdout.getvalue(), stderr.getvalue()


def run_json(*args: str):
    code, stdout, _ = run_main('--json', *args)
    return code, json.loads(stdout)


class Tests(unittest.TestCase):

    def test_validate(self):
        code, stdout, _ = run_main('validate', 'ecccus')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(stdout.startswith('ecccus: valid'))
        self.assertIn('d w3 = w1^w2~', stdout)

    def test_validate_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = pathlib.Path(directory, 'broken.eqs')
            path.write_text('dim 2\nd w2 = w1~^w2~\n', encoding='utf-8')
            code, stdout, _ = run_main('validate', str(path))
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertIn('INVALID', stdout)

    def test_errors(self):
        for args in (('validate', 'no-such-entry'),
                     ('pseudokahler', 'ecccus-t', '--assign', 't=0', '--locus', 'tbar=-t'),
                     ('pseudokahler', 'ecccus-t', '--assign', 's=1'),
                     ('cohomology', 'KT', '--theory', 'singular'),
                     ('decompose', 'KT')):
            with self.subTest(args=args):
                code, stdout, stderr = run_main(*args)
                self.assertEqual(code, EXIT_ERROR)
                self.assertFalse(stdout)
                self.assertIn('pklab {}:'.format(args[0]), stderr)

    def test_pseudokahler(self):
        code, report = run_json('pseudokahler', 'ecccus-t')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertEqual(report['exit_code'], EXIT_NEGATIVE)
        self.assertFalse(report['verdicts']['pseudoKahler'])
        self.assertEqual(report['certificates']['zero_polynomial']['family_dimension'], 4)
        self.assertIn('timing', report)
        code, report = run_json('pseudokahler', 'eleccion-t', '--locus', 'tbar=-t')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['verdicts']['pseudoKahler'])
        self.assertEqual(report['inputs']['locus'], ['tbar=-t'])

    def test_pseudokahler_h_plus(self):
        code, report = run_json('pseudokahler', 'iwasawa', '--h-plus')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertEqual(report['verdicts']['h_plus']['dimension'], 4)

    def test_symplectic(self):
        self.assertEqual(run_main('symplectic', 'iwasawa')[0], EXIT_OK)
        self.assertEqual(run_main('symplectic', 'h3-example')[0], EXIT_NEGATIVE)

    def test_classify(self):
        code, report = run_json('classify', 'eleccion')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['verdicts']['step'], 4)
        self.assertEqual(report['verdicts']['center'], 1)
        self.assertEqual(report['verdicts']['complex_structure'], 'strongly-non-nilpotent')

    def test_cohomology(self):
        code, report = run_json('cohomology', 'ecccus-t', '--assign', 't=0')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['verdicts']['dimension'], 6)
        code, report = run_json('cohomology', 'KT', '--theory', 'deRham', '--degree', '2')
        self.assertEqual(report['verdicts']['dimension'], 4)
        code, report = run_json('cohomology', 'ecccus-t', '--probe')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['verdicts']['probe']['ok'])
        code, report = run_json('cohomology', 'KT', '--duality')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['verdicts']['duality']['ok'])

    def test_delta(self):
        code, stdout, _ = run_main('delta', 'KT', '-k', '2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout, 'Delta^2 = 2\n')

    def test_curvature(self):
        code, report = run_json('curvature', 'KT', '--form', KT_METRIC)
        self.assertEqual(code, EXIT_OK)
        self.assertIn('neutralCalabiYau', report['verdicts']['tags'])
        self.assertEqual(report['verdicts']['signature'], [2, 2])
        self.assertTrue(report['verdicts']['ricci_flat'])
        self.assertTrue(report['certificates']['connection']['torsion_free'])
        code, report = run_json('curvature', 'KT', '--form', 'I*w1^w1~')
        self.assertEqual(code, EXIT_NEGATIVE)

    def test_deform(self):
        with tempfile.TemporaryDirectory() as directory:
            path = pathlib.Path(directory, 'deformed.eqs')
            code, stdout, _ = run_main(
                'deform', 'ecccus', '--sub', 'h3 = w3 + t*w3~', '--param', 't:complex',
                '--label', 'ecccus-t', '--compare', 'ecccus-t', '--emit', str(path))
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(load_presentation(path), catalog_presentation('ecccus-t'))
        self.assertIn('param t complex', stdout)
        code, report = run_json('deform', 'ecccus', '--sub', 'h3 = w3 + t*w3~',
                                '--param', 't:complex', '--compare', 'ecccus')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertIn('d w3', report['verdicts']['compare']['diff'])

    def test_decompose(self):
        code, report = run_json('decompose', 'h3-example', '--efv', '1')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['verdicts']['efv']['ok'])
        code, report = run_json('decompose', 'iwasawa', '--form', 'w1^w3 + w1~^w3~ + I*w2^w2~')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertFalse(report['verdicts']['nondegenerate_11'])

    def test_sweep(self):
        code, stdout, _ = run_main('sweep', 'ecccus-t', '--grid', 't=0,1/2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout, 't,bc\n0,6\n1/2,4\n')
        code, stdout, _ = run_main('sweep', 'ecccus-t', '--grid', 't=0,1/2', '--quantity', 'pk')
        self.assertEqual(stdout, 't,pk\n0,True\n1/2,False\n')

    def test_catalog(self):
        code, stdout, _ = run_main('catalog')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('eleccion', stdout)
        code, report = run_json('catalog', 'KT', 'torus-2', '--verify-catalog')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['verdicts']['ok'])
        self.assertEqual(sorted(report['verdicts']['verification']), ['KT', 'torus-2'])

    def test_run_unknown_command(self):
        with self.assertRaises(ValueError):
            run('integrate', argparse.Namespace())

    def test_json_after_command(self):
        code, stdout, _ = run_main('pseudokahler', 'ecccus-t', '--json')
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertFalse(json.loads(stdout)['verdicts']['pseudoKahler'])
        code, stdout, _ = run_main('cohomology', 'ecccus-t', '--theory', 'bc', '--bidegree', '1,1',
                                   '--assign', 't=0', '--json')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(stdout)['verdicts']['dimension'], 6)

    def test_bidegree(self):
        code, report = run_json('cohomology', 'ecccus', '--theory', 'Aeppli', '--bidegree', '2,0')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['verdicts']['dimension'], 3)
        code, _, stderr = run_main('cohomology', 'KT', '--bidegree', '1,x')
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn('pklab cohomology:', stderr)

    def test_witness(self):
        code, stdout, _ = run_main('pseudokahler', 'KT', '--witness')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('witness: {"im_x12": 1, "re_x12": 0, "x11": 0}', stdout)
        self.assertIn('witness_form: ', stdout)
        code, report = run_json('pseudokahler', 'KT')
        self.assertNotIn('witness', report['verdicts'])
        code, report = run_json('symplectic', 'iwasawa', '--witness')
        self.assertEqual(code, EXIT_OK)
        self.assertIsNotNone(report['verdicts']['witness_form'])

    def test_curvature_metric_at(self):
        code, report = run_json('curvature', 'eleccion', '--metric', ELECCION_FAMILY,
                                '--at', 'r=1,s=-1,u=0,v=0')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['verdicts']['signature'], [4, 4])
        self.assertIn('neutralCalabiYau', report['verdicts']['tags'])
        self.assertTrue(report['verdicts']['ricci_flat'])
        self.assertEqual(report['inputs']['at'], ['r=1,s=-1,u=0,v=0'])
        code, report = run_json('curvature', 'KT', '--metric', 'family',
                                '--at', 'x11=0,re_x12=0,im_x12=1')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['verdicts']['signature'], [2, 2])
        code, report = run_json('curvature', 'KT', '--metric', 'family', '--at', 'x11=1',
                                '--at', 're_x12=0,im_x12=0')
        self.assertEqual(code, EXIT_NEGATIVE)

    def test_sweep_parameter_grid(self):
        code, stdout, _ = run_main('sweep', 'ecccus-t', '--param', 't', '--grid', 're=0:1/2:1/2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout, 're,im,bc\n0,0,6\n1/2,0,4\n')
        code, report = run_json('sweep', 'ecccus-t', '--param', 't',
                                '--grid', 're=0:0:1,im=0:1/3:1/3')
        self.assertEqual([row['bc'] for row in report['verdicts']['points']], [6, 4])
        self.assertEqual([row['im'] for row in report['verdicts']['points']], ['0', '1/3'])
        for grid in ('re=0:1:0', 'x=0', 're=0:1'):
            with self.subTest(grid=grid):
                code, stdout, stderr = run_main('sweep', 'ecccus-t', '--param', 't',
                                                '--grid', grid)
                self.assertEqual(code, EXIT_ERROR)
                self.assertFalse(stdout)
                self.assertIn('pklab sweep:', stderr)
