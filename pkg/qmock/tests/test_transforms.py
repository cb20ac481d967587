import unittest

import numpy as np

import qmock.qcore
import qmock.qdiff
import qmock.series
import qmock.tests.unopt.qseries as qseries_unopt
import qmock.tests.utils
import qmock.transforms
from qmock.qcore import QContext, theta
from qmock.series import PuiseuxSeries


np.random.seed(2014)


def random_series(degree):
    return PuiseuxSeries(np.random.uniform(-1., 1., size=degree + 1) + 1j * np.random.uniform(-1., 1., size=degree + 1))


class transforms_unittest(unittest.TestCase):

    def test_borel(self):

        q = 0.3
        ctx = QContext(q)

        zero = qmock.transforms.borel(PuiseuxSeries(np.zeros(6)), 'plus', ctx)
        np.testing.assert_array_equal(zero.coeffs, np.zeros(6))

        ones = qmock.transforms.borel(PuiseuxSeries(np.ones(8)), 'plus', ctx)
        expected = [q ** (n * (n - 1) // 2) for n in range(8)]
        np.testing.assert_allclose(ones.coeffs, expected, rtol=1e-15)

        inverse = qmock.transforms.borel(ones, 'minus', ctx)
        np.testing.assert_allclose(inverse.coeffs, np.ones(8), rtol=1e-14)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.transforms.borel(PuiseuxSeries([1.], exponent=0.5), 'plus', ctx)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.transforms.borel(PuiseuxSeries([1.]), 'sideways', ctx)


    def test_commutation(self):

        ctx = QContext(0.3)
        series = random_series(10)

        self.assertEqual(qmock.transforms.commutation_check(0, 0, series, ctx), 0.)
        self.assertLess(qmock.transforms.commutation_check(1, 0, series, ctx), 1e-13)
        self.assertLess(qmock.transforms.commutation_check(2, 1, series, ctx, sign='plus'), 1e-13)
        self.assertLess(qmock.transforms.commutation_check(2, 1, series, ctx, sign='minus'), 1e-13)

        for m in range(4):
            for n in range(4):
                self.assertLess(qmock.transforms.commutation_check(m, n, series, ctx), 1e-13)


    def test_laplace_plus_vanishing(self):

        ctx = QContext(0.3)

        self.assertEqual(qmock.transforms.laplace_plus(lambda xi: 0., 0.4, 0.5, ctx), 0.)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.transforms.laplace_plus(lambda xi: 1., 0.4, -0.4 * 0.3 ** 2, ctx)


    def test_laplace_plus_geometric(self):

        q = 0.3
        ctx = QContext(q)
        x, lam = 0.45, 0.6

        f = lambda xi: 1. / (1. + xi)

        value = qmock.transforms.laplace_plus(f, x, lam, ctx)

        expected = 0j
        for n in range(-12, 26):
            expected += f(lam * q ** n) / qseries_unopt.theta_product_unopt(lam * q ** n / x, q)

        qmock.tests.utils.assert_relative_close(value, expected, 1e-12)


    def test_laplace_minus(self):

        q = 0.2
        ctx = QContext(q)

        value = qmock.transforms.laplace_minus(lambda xi: np.ones_like(xi), 0.3, ctx)
        qmock.tests.utils.assert_relative_close(value, 1., 1e-13)

        x = 0.3
        for k in range(9):
            radius = x * q ** (k - 0.5)
            value = qmock.transforms.laplace_minus(lambda xi, k=k: xi ** k, x, ctx, radius=radius)
            qmock.tests.utils.assert_relative_close(value, x ** k * q ** (k * (k - 1) // 2), 1e-12)

        value = qmock.transforms.laplace_minus(lambda xi: 1. / (1. - xi), x, ctx, radius=0.5)
        qmock.tests.utils.assert_relative_close(value, qseries_unopt.laplace_minus_geometric_unopt(x, q), 1e-10)


    def test_laplace_minus_node_doubling(self):

        ctx = QContext(0.2)
        f = lambda xi: 1. / (1. - xi)

        value = qmock.transforms.laplace_minus(f, 0.3, ctx, radius=0.5)
        refined = qmock.transforms.laplace_minus(f, 0.3, ctx.replace(contour_points=256), radius=0.5)

        qmock.tests.utils.assert_relative_close(value, refined, 1e-11)

        with self.assertRaises(qmock.qcore.TruncationError):
            qmock.transforms.laplace_minus(f, 0.3, ctx.replace(max_contour_points=32), radius=0.99)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.transforms.laplace_minus(f, 0.3, ctx, radius=1.)


    def test_laplace_commutation(self):

        q = 0.3
        ctx = QContext(q)

        f = lambda xi: 1. / (1. + np.asarray(xi, dtype=complex))

        for m in range(3):
            for n in range(3):
                x = 0.5
                radius = min(x * q ** (m - 0.5), 0.5)
                residual = qmock.transforms.laplace_commutation_residual(m, n, f, x, 0.6, ctx, radius=radius)
                self.assertLess(residual, 1e-9)


    def test_resummed_mu(self):

        q = 0.3
        ctx = QContext(q)
        alpha, x, lam = 0.7, 0.45, 0.55

        value, discrepancy = qmock.transforms.resummed_mu(alpha, x, lam, ctx)

        self.assertLess(discrepancy, 1e-13)

        rhs = qmock.transforms.resummed_mu_rhs(alpha, x, lam, ctx)
        qmock.tests.utils.assert_relative_close(value, rhs, 1e-9)

        with self.assertRaises(ValueError):
            qmock.transforms.resummed_mu_rhs(alpha, x, lam, ctx, prefactor='bogus')


    def test_formal_solution(self):

        q = 0.4
        ctx = QContext(q)
        alphas, betas = [0.3, 0.8], [0.5, 1.1]

        leading = qmock.transforms.formal_solution('zero', 1, alphas, betas, 0, ctx)
        self.assertEqual(leading.order, 0)
        self.assertEqual(leading.coeffs[0], 1.)
        self.assertEqual(leading.exponent, 0.3)

        op = qmock.qdiff.op_diver(alphas, betas, ctx)

        for point in PuiseuxSeries.points:
            for j in (1, 2):
                series = qmock.transforms.formal_solution(point, j, alphas, betas, 30, ctx)
                self.assertLess(qmock.transforms.annihilation_residual(op, series), 1e-10)

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.transforms.formal_solution('zero', 3, alphas, betas, 10, ctx)


    def test_formal_solution_resonance(self):

        ctx = QContext(0.4)

        with self.assertRaises(qmock.qcore.ResonanceError):
            qmock.transforms.formal_solution('zero', 1, [0.3, 2.3], [0.5, 1.1], 10, ctx)


    def test_apply_operator_to_series(self):

        q = 0.3
        ctx = QContext(q)
        series = random_series(5)

        identity = qmock.transforms.apply_operator_to_series(qmock.qdiff.identity_operator(q), series)
        np.testing.assert_allclose(identity.coeffs, series.coeffs, rtol=1e-15)

        alpha = 0.7
        eigen = PuiseuxSeries([1., 0., 0.], exponent=alpha)
        result = qmock.transforms.apply_operator_to_series(qmock.qdiff.op_from_roots([alpha], ctx), eigen)
        self.assertLess(abs(result.coeffs[0]), 1e-15)


    def test_integral_solution(self):

        q = 0.3
        ctx = QContext(q)
        alphas, betas = [0.35], [0.2]
        x = 0.45

        op = qmock.qdiff.op_diver(alphas, betas, ctx)

        solution = lambda x: qmock.transforms.integral_solution('zero', alphas, betas, x, ctx)
        self.assertLess(qmock.qdiff.relative_residual(op, solution, x), 1e-8)

        solution = lambda x: qmock.transforms.integral_solution('infinity', alphas, betas, x, ctx)
        self.assertLess(qmock.qdiff.relative_residual(op, solution, x), 1e-8)

        value = qmock.transforms.integral_solution('zero', alphas, betas, x, ctx)
        refined = qmock.transforms.integral_solution('zero', alphas, betas, x, ctx.replace(contour_points=512))
        qmock.tests.utils.assert_relative_close(value, refined, 1e-11)


    def test_integral_solution_degenerate(self):

        q = 0.3
        ctx = QContext(q)
        x = 0.45

        value = qmock.transforms.integral_solution('zero', [0.4], [-0.6], x, ctx)
        qmock.tests.utils.assert_relative_close(value, 1. / theta(-x / q, ctx), 1e-10)


    def test_contour_radius(self):

        ctx = QContext(0.3)

        self.assertEqual(qmock.transforms.contour_radius_for(0., 1., 0.3, ctx), 0.3)
        self.assertEqual(qmock.transforms.contour_radius_for(0., 1., 0.9, ctx), 0.5)
        self.assertEqual(qmock.transforms.contour_radius_for(0.2, np.inf, 0.1, ctx), 0.4)

        # empty band between 2 inner and outer / 2
        self.assertAlmostEqual(qmock.transforms.contour_radius_for(0.3, 1., 0.4, ctx), np.sqrt(0.3), places=15)
        self.assertEqual(qmock.transforms.contour_radius_for(0.3, 1., 0.4, ctx.replace(contour_radius=0.8)), 0.8)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.transforms.contour_radius_for(1., 0.5, 0.3, ctx)

        with self.assertRaises(qmock.qcore.PoleError):
            qmock.transforms.contour_radius_for(0.2, 0.5, 0.3, ctx.replace(contour_radius=0.6))


if __name__ == '__main__':
    unittest.main()
