import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

from cli import build_parser, main
from config import VerifierConfig
from oracle_suite import HeckeVerifier

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'sample_params')


def sample(name):
    return os.path.join(SAMPLES, name)


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        patcher = mock.patch.object(VerifierConfig, 'LOG_DIR', os.path.join(self.tmp.name, 'logs'))
        patcher.start()
        self.addCleanup(patcher.stop)

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(['-o', os.path.join(self.tmp.name, 'reports'), *argv])
        return code, out.getvalue()


class TestParser(unittest.TestCase):
    def test_central_arguments(self):
        args = build_parser().parse_args(['central', '1', '2', 'case1', '--k', '1', '--at', '0,0,3/5'])
        self.assertEqual((args.p, args.q, args.case, args.k, args.at), (1, 2, 'case1', 1, '0,0,3/5'))

    def test_symbolic_and_at_are_exclusive(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                build_parser().parse_args(['central', '1', '2', 'case1', '--symbolic', '--at', '0,0,0'])


class TestCheckParams(CliTestCase):
    def test_admissible(self):
        code, out = self.run_cli('check-params', sample('case_a.json'))
        self.assertEqual(code, 0)
        self.assertIn('Reports generated', out)

    def test_inadmissible(self):
        code, out = self.run_cli('check-params', '--json', sample('inadmissible.json'))
        self.assertEqual(code, 2)
        report = json.loads(out)
        self.assertEqual(report['status'], 'fail')
        self.assertFalse(report['results']['admissibility']['admissible'])

    def test_missing_file(self):
        code, _ = self.run_cli('check-params', sample('no_such_file.json'))
        self.assertEqual(code, 1)


class TestVerify(CliTestCase):
    def test_closed_form_and_induced_module(self):
        code, out = self.run_cli('verify', '--json', sample('equal_rank.json'))
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report['results']['closed_form']['dimension']['dimension'], 4)
        self.assertTrue(report['results']['induced_module']['relations']['passed'])
        self.assertNotIn('tensor_model', report['results'])

    def test_oracle(self):
        code, out = self.run_cli('verify', '--oracle', '--json', sample('case_a.json'))
        self.assertEqual(code, 0)
        results = json.loads(out)['results']
        self.assertEqual(results['tensor_model']['dimension'], 2)
        self.assertTrue(results['isomorphism']['invertible'])
        self.assertEqual(results['resolutions']['hecke_parameter_reading']['chosen'], 'long-root')

    def test_guardrail(self):
        code, _ = self.run_cli('verify', '--oracle', '--max-dim', '2', sample('case_a.json'))
        self.assertEqual(code, 3)

    def test_inadmissible(self):
        code, _ = self.run_cli('verify', sample('inadmissible.json'))
        self.assertEqual(code, 2)


class TestCentral(CliTestCase):
    def test_symbolic(self):
        code, out = self.run_cli('central', '1', '2', 'case2')
        self.assertEqual(code, 0)
        self.assertIn('y1^2 =', out)

    def test_at_point(self):
        code, out = self.run_cli('central', '1', '2', 'case1', '--at', '0,0,3/5', '--json')
        self.assertEqual(code, 0)
        data = json.loads(out)['results']['central_character']
        self.assertEqual(data['values']['y1_squared'], '9/100')
        self.assertEqual(data['expected_value'], '9/100')

    def test_constant_term_is_resolved(self):
        code, out = self.run_cli('central', '1', '2', 'case1', '--json')
        self.assertEqual(code, 0)
        resolutions = json.loads(out)['results']['resolutions']
        self.assertEqual(resolutions['ycc_constant_term']['chosen'], 'corrected')
        self.assertEqual(resolutions['ycc_constant_term']['status'], 'resolved')
        self.assertEqual(resolutions['hc_shift_order']['chosen'], 'shift-then-conjugate')

    def test_failed_identity_is_a_rejection(self):
        overrides = os.path.join(self.tmp.name, 'as_printed.yaml')
        with open(overrides, 'w', encoding='utf-8') as f:
            f.write('YCC_CONSTANT_TERM: as-printed\n')
        code, out = self.run_cli('-y', overrides, 'central', '1', '2', 'case1', '--json')
        self.assertEqual(code, 2)
        report = json.loads(out)
        self.assertEqual(report['status'], 'fail')
        self.assertEqual(report['discrepancies'][0]['check'], 'ycc_identity')
        self.assertEqual(report['results']['resolutions']['ycc_constant_term']['status'], 'fixed')

    def test_wrong_point_length(self):
        code, _ = self.run_cli('central', '1', '2', 'case1', '--at', '0,0')
        self.assertEqual(code, 1)

    def test_unsupported_shape(self):
        code, _ = self.run_cli('central', '1', '1', 'case2')
        self.assertEqual(code, 2)


class TestBatch(CliTestCase):
    def test_bad_entry_is_reported(self):
        grid = os.path.join(self.tmp.name, 'grid.json')
        with open(grid, 'w', encoding='utf-8') as f:
            json.dump([
                {'label': 'case-B', 'p': 1, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]},
                {'label': 'broken', 'p': 0, 'q': 2, 'n': 1, 'mu': '0', 'nvec': [0], 'xi': [-1]},
            ], f)
        code, out = self.run_cli('batch', '--grid', grid, '--json')
        self.assertEqual(code, 1)
        results = json.loads(out)['results']
        self.assertEqual(results['grid_passed'], 1)
        self.assertEqual([r['passed'] for r in results['grid']], [True, False])


class TestVerifierApi(CliTestCase):
    def test_summary_lines(self):
        verifier = HeckeVerifier({'REPORT_DIR': os.path.join(self.tmp.name, 'reports')})
        result = verifier.check_params(sample('case_a.json'))
        self.assertTrue(result['success'])
        self.assertTrue(os.path.isfile(result['reports']['html']))
        self.assertTrue(any('pass' in line.lower() for line in HeckeVerifier.summary(result['report'])))


if __name__ == '__main__':
    unittest.main()
