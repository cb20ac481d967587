import fractions
import unittest

import numpy as np

import qmock.mock
import qmock.qcore
import qmock.qdiff
from qmock.qcore import QContext, theta
from qmock.qdiff import LaurentPoly, QDiffOperator


np.random.seed(2014)


def assert_coefficients_close(test, op, expected, atol=1e-15):
    coefficients = op.coefficients()
    test.assertEqual(set(coefficients.keys()), set(expected.keys()))
    for order, monomials in expected.items():
        test.assertEqual(set(coefficients[order].keys()), set(monomials.keys()))
        for power, value in monomials.items():
            np.testing.assert_allclose(coefficients[order][power], value, atol=atol)


class qdiff_unittest(unittest.TestCase):

    def test_laurent_poly(self):

        a = LaurentPoly({-1: 2., 0: 1.})
        b = LaurentPoly({1: 3.})

        self.assertEqual((a * b).monomials, {0: 6., 1: 3.})
        self.assertEqual((a - a).monomials, {})
        self.assertTrue((a - a).is_zero())
        self.assertEqual(a.degrees(), (-1, 0))
        self.assertEqual(b.rescale(2.).monomials, {1: 6.})
        np.testing.assert_allclose(a(2.), 2.)

        with self.assertRaises(qmock.qcore.DomainError):
            LaurentPoly({0.5: 1.})


    def test_op_from_roots(self):

        q = 0.3
        ctx = QContext(q)

        op = qmock.qdiff.op_from_roots([0., 1.], ctx)
        assert_coefficients_close(self, op, {2: {0: 1.}, 1: {0: -1.3}, 0: {0: 0.3}})

        identity = qmock.qdiff.op_from_roots([], ctx)
        assert_coefficients_close(self, identity, {0: {0: 1.}})


    def test_compose(self):

        q = 0.25
        ctx = QContext(q)

        shift = qmock.qdiff.shift_operator(1, q)
        x_op = QDiffOperator({0: LaurentPoly.monomial(1)}, q)

        assert_coefficients_close(self, qmock.qdiff.compose(shift, x_op), {1: {1: q}})

        b = qmock.qdiff.op_gm1(2, ctx)
        identity = qmock.qdiff.identity_operator(q)
        self.assertEqual(qmock.qdiff.compose(identity, b).coefficients(), b.coefficients())

        first = QDiffOperator({1: 1., 0: -q ** 0.5}, q)
        second = QDiffOperator({1: 1., 0: LaurentPoly.monomial(1, q ** 0.5)}, q)
        product = qmock.qdiff.compose(first, second)

        assert_coefficients_close(self, product, {2: {0: 1.}, 1: {0: -q ** 0.5, 1: q ** 1.5}, 0: {1: -q}})
        self.assertLess(qmock.qdiff.operator_distance(product, qmock.qdiff.op_hermite_weber(q, ctx)), 1e-15)


    def test_mismatched_base(self):

        with self.assertRaises(qmock.qcore.DomainError):
            qmock.qdiff.compose(qmock.qdiff.identity_operator(0.3), qmock.qdiff.identity_operator(0.2))


    def test_operator_coefficients(self):

        q = 0.3
        ctx = QContext(q)

        op = qmock.qdiff.op_diver([0.4], [0.7], ctx)
        assert_coefficients_close(self, op, {
            2: {0: 1.},
            1: {0: -q ** 0.4, 1: 1.},
            0: {1: -q ** 0.7},
        })

        op = qmock.qdiff.op_appell(1, 0.5, ctx)
        assert_coefficients_close(self, op, {2: {0: 1.}, 1: {0: -1., 1: 2. * q}, 0: {1: -2.}}, atol=1e-14)


    def test_apply_numeric(self):

        q = 0.3
        ctx = QContext(q)

        op = QDiffOperator({1: 1., 0: -1.}, q)
        self.assertEqual(qmock.qdiff.apply_numeric(op, lambda x: 1., 0.4), 0.)

        alpha = 0.7
        op = qmock.qdiff.op_from_roots([alpha], ctx)
        result = qmock.qdiff.apply_numeric(op, lambda x: qmock.qcore.cpow(x, alpha), 0.4)
        self.assertLess(abs(result), 1e-15)


    def test_relative_residual(self):

        q = 0.3
        ctx = QContext(q)
        square_ctx = ctx.with_base(q ** 2)

        op = qmock.qdiff.op_gm1(2, ctx)

        solution = lambda x: 1. / theta(-x ** 2, square_ctx)
        self.assertLess(qmock.qdiff.relative_residual(op, solution, 0.4), 1e-10)

        self.assertGreater(qmock.qdiff.relative_residual(op, np.exp, 0.4), 1e-3)
        self.assertEqual(qmock.qdiff.relative_residual(op, lambda x: 0., 0.4), 0.)


    def test_appell_operator(self):

        q = 0.2
        ctx = QContext(q)

        for m in (1, 2, 3):
            op = qmock.qdiff.op_appell(m, 0.5, ctx)
            f = lambda x, m=m: qmock.mock.appell_G(m, x, 0.5, ctx)
            self.assertLess(qmock.qdiff.relative_residual(op, f, 0.35), 1e-8)


    def test_newton_puiseux(self):

        q = 0.3
        ctx = QContext(q)

        diagram = qmock.qdiff.newton_puiseux(qmock.qdiff.identity_operator(q))
        self.assertEqual(diagram.points, frozenset([(0, 0)]))
        self.assertEqual(diagram.slopes, [])

        diagram = qmock.qdiff.newton_puiseux(qmock.qdiff.op_diver([0.4], [0.9], ctx))
        self.assertEqual(diagram.points, frozenset([(0, 2), (0, 1), (1, 1), (1, 0)]))
        self.assertEqual(diagram.hull_vertices, [(0, 1), (1, 0)])
        self.assertEqual(diagram.slopes, [-1])

        diagram = qmock.qdiff.newton_puiseux(qmock.qdiff.op_gm1(2, ctx))
        self.assertEqual(diagram.points, frozenset([(0, 2), (0, 1), (2, 1), (2, 0)]))
        self.assertEqual(diagram.hull_vertices, [(0, 1), (2, 0)])
        self.assertEqual(diagram.slopes, [fractions.Fraction(-1, 2)])


    def test_newton_puiseux_convex(self):

        q = 0.3

        op = QDiffOperator({
            3: LaurentPoly({0: 1.}),
            1: LaurentPoly({1: 1.}),
            0: LaurentPoly({3: 1., 4: 1.}),
        }, q)

        diagram = qmock.qdiff.newton_puiseux(op)

        self.assertEqual(diagram.hull_vertices, [(0, 3), (1, 1), (3, 0), (4, 0)])
        self.assertEqual(diagram.slopes, [-2, fractions.Fraction(-1, 2), 0])


if __name__ == '__main__':
    unittest.main()
