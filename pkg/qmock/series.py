import numpy as np

import qmock.qcore


class PuiseuxSeries(object):
    """ Truncated series x^exponent sum_n c_n t^n about zero (t = x) or infinity (t = 1/x).

    Args:
        coeffs (list): coefficients c_0..c_N, the length fixes the truncation order

    KwArgs:
        exponent (complex): prefactor exponent
        point (str): 'zero' or 'infinity'

    """

    points = ('zero', 'infinity')

    def __init__(self, coeffs, exponent=0., point='zero'):
        if point not in self.points:
            raise qmock.qcore.DomainError('unknown expansion point', point=point)

        coeffs = np.array(coeffs, dtype=complex).flatten()

        if coeffs.shape[0] == 0:
            raise qmock.qcore.DomainError('series requires at least one coefficient')

        qmock.qcore.check_finite(coeffs, 'series coefficients', point=point, exponent=exponent)

        self.coeffs = coeffs
        self.exponent = complex(exponent)
        self.point = point

    @property
    def order(self):
        return self.coeffs.shape[0] - 1

    def truncate(self, order):
        if order > self.order:
            raise qmock.qcore.DomainError('cannot extend a truncated series', order=order, available=self.order)
        return PuiseuxSeries(self.coeffs[:order + 1], exponent=self.exponent, point=self.point)

    def evaluate(self, x):
        """ Evaluate the truncated sum, meaningful only for convergent series.
        """
        x = np.asarray(x, dtype=complex)
        t = x if self.point == 'zero' else 1. / x
        value = np.polynomial.polynomial.polyval(t, self.coeffs)
        if self.exponent != 0:
            value = value * qmock.qcore.cpow(x, self.exponent)
        return qmock.qcore.as_value(value)

    def __repr__(self):
        return 'PuiseuxSeries(point={}, exponent={}, order={})'.format(self.point, self.exponent, self.order)
