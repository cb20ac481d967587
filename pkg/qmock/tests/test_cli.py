import argparse
import io
import json
import os
import shutil
import tempfile
import unittest
import unittest.mock

import numpy as np
import pandas as pd
import yaml

import qmock.mock
import qmock.qcore
import qmock.ui.main
import qmock.ui.params
from qmock.qcore import QContext


np.random.seed(2014)


def run_cli(*argv):
    with unittest.mock.patch('sys.stdout', new_callable=io.StringIO) as stdout:
        with unittest.mock.patch('sys.stderr', new_callable=io.StringIO):
            code = qmock.ui.main.main(list(argv))
    return code, stdout.getvalue()


class cli_unittest(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_parse_complex(self):

        self.assertEqual(qmock.ui.params.parse_complex('1+2i'), 1 + 2j)
        self.assertEqual(qmock.ui.params.parse_complex('1-2j'), 1 - 2j)
        self.assertEqual(qmock.ui.params.parse_complex('0.3001e0'), 0.3001)
        self.assertEqual(qmock.ui.params.parse_complex('-1'), -1.)
        self.assertEqual(qmock.ui.params.parse_complex('i'), 1j)
        self.assertEqual(qmock.ui.params.parse_complex('2.5e-1i'), 0.25j)

        with self.assertRaises(argparse.ArgumentTypeError):
            qmock.ui.params.parse_complex('one')

        with self.assertRaises(argparse.ArgumentTypeError):
            qmock.ui.params.parse_nome('1.5')


    def test_eval_theta(self):

        code, output = run_cli('eval', 'theta', '--q', '0.3', '--x', '0.7', '--format', 'json')
        self.assertEqual(code, 0)

        record = json.loads(output.splitlines()[0])
        value = qmock.qcore.theta(0.7, QContext(0.3))

        self.assertEqual(record['re'], value.real)
        self.assertEqual(record['im'], value.imag)

        code, output = run_cli('eval', 'theta', '--q', '0.3', '--x', '-1', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)['re'], 0.)


    def test_eval_text_and_csv(self):

        code, output = run_cli('eval', 'g2', '--q', '0.2', '--x', '0.3')
        self.assertEqual(code, 0)
        self.assertIn('g2', output)

        code, output = run_cli('eval', 'qhyper', '--q', '0.3', '--numerators', '0.3', '--z', '0.3', '--order', '4', '--format', 'csv')
        self.assertEqual(code, 0)

        table = pd.read_csv(io.StringIO(output))
        self.assertEqual(list(table.columns), ['function', 'term', 're', 'im'])
        self.assertEqual(len(table.index), 6)
        self.assertAlmostEqual(table['re'].iloc[0], 1. / 0.7, places=12)


    def test_eval_pole(self):

        q = 0.2
        code, _ = run_cli('eval', 'mu', '--q', str(q), '--x', '0.3', '--y', str(q))
        self.assertEqual(code, 3)

        code, output = run_cli('eval', 'mu', '--q', '0.2', '--x', '0.3', '--y', '0.3001e0', '--format', 'json')
        self.assertEqual(code, 0)

        record = json.loads(output)
        value = qmock.mock.mu(qmock.mock.MuArgs(0.3, 0.3001), QContext(0.2))
        self.assertEqual(complex(record['re'], record['im']), value)


    def test_eval_qpoch_complex_order(self):

        code, output = run_cli('eval', 'qpoch', '--q', '0.3', '--x', '0.4', '--nu', '1+2i', '--format', 'json')
        self.assertEqual(code, 0)

        record = json.loads(output)
        ctx = QContext(0.3)
        value = qmock.qcore.qpoch_nu(0.4, 1 + 2j, ctx)

        self.assertEqual(complex(record['re'], record['im']), value)
        self.assertNotEqual(value, qmock.qcore.qpoch_nu(0.4, 1., ctx))
        self.assertNotEqual(record['im'], 0.)


    def test_eval_usage_errors(self):

        code, _ = run_cli('eval', 'mu', '--q', '0.2', '--x', '0.3')
        self.assertEqual(code, 2)

        code, _ = run_cli('eval', 'theta', '--q', '1.2', '--x', '0.3')
        self.assertEqual(code, 2)

        code, _ = run_cli('eval', 'bogus', '--q', '0.2')
        self.assertEqual(code, 2)


    def test_check(self):

        code, output = run_cli('check', 'kang_g2', '-n', '50', '--seed', '1', '--format', 'json')
        self.assertEqual(code, 0)

        report = json.loads(output)
        self.assertEqual(report['name'], 'kang_g2')
        self.assertTrue(report['pass'])
        self.assertLess(report['max_residual'], 1e-9)

        code, _ = run_cli('check', 'bogus')
        self.assertEqual(code, 2)

        code, _ = run_cli('check')
        self.assertEqual(code, 2)


    def test_check_deterministic(self):

        first = run_cli('check', 'corD_2', '-n', '5', '--seed', '1', '--format', 'json')
        second = run_cli('check', 'corD_2', '-n', '5', '--seed', '1', '--format', 'json')

        self.assertEqual(first, second)


    def test_check_timing(self):

        code, output = run_cli('check', 'theta_shift', '-n', '2', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertNotIn('wall_time_ms', json.loads(output))

        code, output = run_cli('check', 'theta_shift', '-n', '2', '--timing', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertGreaterEqual(json.loads(output)['wall_time_ms'], 0.)


    def test_check_config(self):

        config_filename = os.path.join(self.temp_dir, 'config.yaml')
        with open(config_filename, 'w') as f:
            yaml.dump({'n_samples': 3, 'output_format': 'csv'}, f)

        code, output = run_cli('check', 'theta_shift', '--config', config_filename)
        self.assertEqual(code, 0)

        table = pd.read_csv(io.StringIO(output))
        self.assertEqual(table['n_samples'].iloc[0], 3)


    def test_report(self):

        report_filename = os.path.join(self.temp_dir, 'reports.json')

        code, _ = run_cli('check', 'mu_shift', '-n', '3', '--format', 'json', '--output', report_filename)
        self.assertEqual(code, 0)

        code, output = run_cli('report', report_filename, '--format', 'csv')
        self.assertEqual(code, 0)

        table = pd.read_csv(io.StringIO(output))
        self.assertEqual(list(table['name']), ['mu_shift'])


    def test_list(self):

        code, output = run_cli('list', '--format', 'json')
        self.assertEqual(code, 0)

        names = [json.loads(line)['name'] for line in output.splitlines()]
        self.assertIn('np_diagram', names)


    def test_sweep(self):

        code, output = run_cli('sweep', 'g2', '--vary', 'x', '--from', '0.1', '--to', '0.6', '--steps', '6', '--q', '0.2', '--format', 'csv')
        self.assertEqual(code, 0)

        table = pd.read_csv(io.StringIO(output), keep_default_na=False)
        self.assertEqual(len(table.index), 6)

        ctx = QContext(0.2)
        for x, re, im, error in zip(table['x'], table['re'], table['im'], table['error']):
            if error != '':
                # x = q lies on the pole lattice
                self.assertAlmostEqual(x, 0.2, places=12)
                continue
            value = qmock.mock.g2_series(x, ctx)
            self.assertAlmostEqual(float(re), value.real, places=12)
            self.assertAlmostEqual(float(im), value.imag, places=12)

        code, output = run_cli('sweep', 'g2', '--vary', 'x', '--from', '0.15', '--to', '0.5', '--steps', '1', '--q', '0.2', '--format', 'json')
        self.assertEqual(code, 0)
        rows = [json.loads(line) for line in output.splitlines()]
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]['x'], 0.15)


    def test_sweep_pole_row(self):

        code, output = run_cli('sweep', 'g2', '--vary', 'x', '--from', '0.1', '--to', '0.3', '--steps', '3', '--q', '0.2', '--format', 'json')
        self.assertEqual(code, 0)

        rows = [json.loads(line) for line in output.splitlines()]
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[0]['error'], '')
        self.assertIn('PoleError', rows[1]['error'])
        self.assertIsNone(rows[1]['re'])


    def test_sweep_bad_range(self):

        code, _ = run_cli('sweep', 'g2', '--vary', 'x', '--from', '0.1', '--to', '0.3', '--steps', '0', '--q', '0.2')
        self.assertEqual(code, 2)

        code, _ = run_cli('sweep', 'g2', '--vary', 'm', '--from', '0.1', '--to', '0.3', '--steps', '3', '--q', '0.2')
        self.assertEqual(code, 2)


if __name__ == '__main__':
    unittest.main()
