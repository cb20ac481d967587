import unittest

import numpy as np

import qmock.mock
import qmock.qcore
import qmock.tests.unopt.qseries as qseries_unopt
import qmock.tests.utils
from qmock.mock import MuArgs
from qmock.qcore import QContext, theta


np.random.seed(2014)


def relative(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(a)), abs(complex(b)))


class mock_unittest(unittest.TestCase):

    def test_mu_brute_force(self):

        q = 0.2
        ctx = QContext(q)

        for x, y in ((0.3, 0.4), (0.5, 0.7), (0.25 + 0.1j, 0.6 - 0.2j)):
            qmock.tests.utils.assert_relative_close(
                qmock.mock.mu(MuArgs(x, y), ctx),
                qseries_unopt.mu_unopt(x, y, q), 1e-12)


    def test_mu_symmetry(self):

        ctx = QContext(0.2)

        value = qmock.mock.mu(MuArgs(0.3, 0.4), ctx)

        self.assertLess(relative(value, qmock.mock.mu(MuArgs(0.4, 0.3), ctx)), 1e-10)
        self.assertLess(relative(value, qmock.mock.mu(MuArgs(1. / 0.3, 1. / 0.4), ctx)), 1e-10)


    def test_mu_extended_truncation(self):

        ctx = QContext(0.2)

        value = qmock.mock.mu(MuArgs(0.3, 0.4), ctx)
        extended = qmock.mock.mu(MuArgs(0.3, 0.4), ctx.replace(min_terms=40))

        self.assertLess(relative(value, extended), 1e-12)


    def test_mu_base(self):

        q = 0.3
        ctx = QContext(q)

        with_base = qmock.mock.mu(MuArgs(0.3, 0.4, q ** 2), ctx)
        direct = qmock.mock.mu(MuArgs(0.3, 0.4), ctx.with_base(q ** 2))

        self.assertEqual(with_base, direct)


    def test_mu_vectorized(self):

        q = 0.25
        ctx = QContext(q)

        x = qmock.tests.utils.band_values(q, 10)
        y = qmock.tests.utils.band_values(q, 10)

        values = qmock.mock.mu(MuArgs(x, y), ctx)
        expected = np.array([qmock.mock.mu(MuArgs(a, b), ctx) for a, b in zip(x, y)])

        qmock.tests.utils.assert_relative_close(values, expected, 1e-13)


    def test_mu_pole(self):

        q = 0.2
        ctx = QContext(q)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.mock.mu(MuArgs(q ** 2, 0.4), ctx)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.mock.mu(MuArgs(0.3, q), ctx)


    def test_mu_shift(self):

        for q, x, y in ((0.2, 0.3, 0.4), (0.3, 0.5, 0.7)):
            ctx = QContext(q)

            lhs = qmock.mock.mu(MuArgs(x * q, y), ctx)
            rhs = qmock.mock.mu_shift_rhs(MuArgs(x, y), ctx)

            self.assertLess(relative(lhs, rhs), 1e-10)


    def test_mu_translation(self):

        q = 0.2
        ctx = QContext(q)
        x, y = 0.3, 0.4

        self.assertEqual(qmock.mock.mu_translation_rhs(x, y, 1., ctx), qmock.mock.mu(MuArgs(x, y), ctx))

        z = 0.6
        lhs = qmock.mock.mu(MuArgs(x * z, y * z), ctx)
        rhs = qmock.mock.mu_translation_rhs(x, y, z, ctx)

        self.assertLess(relative(lhs, rhs), 1e-9)


    def test_appell_lerch_brute_force(self):

        q = 0.3
        ctx = QContext(q)

        for level in (1, 2, 3):
            for x, y in ((0.4, 0.6), (0.55 + 0.1j, -0.5)):
                qmock.tests.utils.assert_relative_close(
                    qmock.mock.appell_lerch_sum(x, y, level, ctx),
                    qseries_unopt.appell_lerch_unopt(x, y, level, q), 1e-12)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.mock.appell_lerch_sum(0.4, 0., 1, ctx)


    def test_a1_mu(self):

        q = 0.2
        ctx = QContext(q)
        x, y = 0.3, 0.4

        lhs = qmock.mock.appell_A(1, x, y, ctx)
        rhs = -1j * q ** 0.125 * theta(-y, ctx) / np.sqrt(y) * qmock.mock.mu(MuArgs(x, y), ctx)

        self.assertLess(relative(lhs, rhs), 1e-10)
        self.assertLess(relative(lhs, qmock.mock.a1_mu_rhs(x, y, ctx)), 1e-10)


    def test_zwegers_level_one(self):

        ctx = QContext(0.2)
        x, y = 0.3, 0.4

        self.assertLess(relative(qmock.mock.zwegers_rhs(1, x, y, ctx), qmock.mock.a1_mu_rhs(x, y, ctx)), 1e-10)


    def test_zwegers(self):

        q = 0.25
        ctx = QContext(q)
        x, y = 0.45, 0.55

        for m in (1, 2, 3):
            lhs = qmock.mock.appell_A(m, x, (-1.) ** (m - 1) * y, ctx)
            self.assertLess(relative(lhs, qmock.mock.zwegers_rhs(m, x, y, ctx)), 1e-9)
            self.assertLess(relative(qmock.mock.appell_G(m, x, y, ctx), qmock.mock.gm_mu_rhs(m, x, y, ctx)), 1e-9)


    def test_appell_level_check(self):

        ctx = QContext(0.3)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.mock.appell_A(0, 0.4, 0.5, ctx)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.mock.appell_G(1.5, 0.4, 0.5, ctx)


    def test_gm_pseudoperiod(self):

        ctx = QContext(0.2)

        for m in (1, 2, 3, 4):
            terms = qmock.mock.gm_shift_terms(m, 0.3, 0.5, ctx)
            scale = sum(abs(complex(a)) for a in terms)
            self.assertLess(abs(sum(complex(a) for a in terms)) / scale, 1e-9)


    def test_universal_brute_force(self):

        q = 0.2
        ctx = QContext(q)

        for x in (0.3, 0.45 + 0.1j):
            qmock.tests.utils.assert_relative_close(qmock.mock.g2_series(x, ctx), qseries_unopt.g2_unopt(x, q), 1e-12)
            qmock.tests.utils.assert_relative_close(qmock.mock.g3_series(x, ctx), qseries_unopt.g3_unopt(x, q), 1e-12)


    def test_universal_lerch(self):

        q = 0.2
        ctx = QContext(q)
        x = 0.3

        self.assertLess(relative(qmock.mock.g2_series(x, ctx), qmock.mock.g2_lerch(x, ctx)), 1e-9)
        self.assertLess(relative(qmock.mock.g3_series(x, ctx), qmock.mock.g3_lerch(x, ctx)), 1e-9)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.mock.g2_series(q, ctx)


    def test_kang(self):

        ctx = QContext(0.2)
        x = 0.35

        self.assertLess(relative(qmock.mock.g2_series(x, ctx), qmock.mock.kang_g2_rhs(x, ctx)), 1e-9)

        value = qmock.mock.g3_series(x, ctx)
        self.assertLess(relative(value, qmock.mock.kang_g3_rhs(x, ctx, mu_base='q^3')), 1e-9)
        self.assertGreater(relative(value, qmock.mock.kang_g3_rhs(x, ctx, mu_base='q^2')), 1e-6)


    def test_gm1_forms(self):

        q = 0.25
        ctx = QContext(q)
        x = 0.4
        lam = 0.55

        for m in (2, 3):
            value = qmock.mock.appell_G(m, x, 1., ctx)

            self.assertLess(relative(value, qmock.mock.gm1_closed_form(m, x, ctx)), 1e-9)
            self.assertLess(relative(value, qmock.mock.gm1_lambda_form(m, x, lam, ctx)), 1e-9)

            terms = qmock.mock.gm1_shift_terms(m, x, ctx)
            self.assertLess(abs(sum(terms)) / sum(abs(a) for a in terms), 1e-9)


    def test_linear_eq_solutions(self):

        ctx = QContext(0.3)

        solutions = qmock.mock.linear_eq_solutions(0.4, [0.7, 1.1], 0.5, ctx)
        self.assertEqual(len(solutions), 3)

        with self.assertRaises(ValueError):
            qmock.mock.linear_eq_solutions(0.4, [0.7], 0.5, ctx, exponent='bogus')

        solutions = qmock.mock.gm1_solutions(3, 0.5, ctx)
        self.assertEqual(len(solutions), 3)


if __name__ == '__main__':
    unittest.main()
