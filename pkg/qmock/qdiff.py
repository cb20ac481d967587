import collections
import fractions
import numbers

import numpy as np
import scipy.spatial

import qmock.qcore
from qmock.qcore import qpower


class LaurentPoly(object):
    """ Laurent polynomial in x, a map from integer powers to nonzero coefficients.
    """

    def __init__(self, monomials=None):
        self.monomials = dict()

        if monomials is None:
            monomials = dict()

        for power, coeff in monomials.items():
            if int(power) != power:
                raise qmock.qcore.DomainError('Laurent polynomial powers must be integers', power=power)
            coeff = complex(coeff)
            if coeff != 0:
                self.monomials[int(power)] = coeff

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, power, coeff=1.):
        return cls({power: coeff})

    def is_zero(self):
        return len(self.monomials) == 0

    def degrees(self):
        """ Lowest and highest power.
        """
        powers = list(self.monomials.keys())
        return min(powers), max(powers)

    def __add__(self, other):
        other = _as_poly(other)
        result = dict(self.monomials)
        for power, coeff in other.monomials.items():
            result[power] = result.get(power, 0j) + coeff
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(dict((power, -coeff) for power, coeff in self.monomials.items()))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __mul__(self, other):
        other = _as_poly(other)
        result = dict()
        for power_1, coeff_1 in self.monomials.items():
            for power_2, coeff_2 in other.monomials.items():
                power = power_1 + power_2
                result[power] = result.get(power, 0j) + coeff_1 * coeff_2
        return LaurentPoly(result)

    __rmul__ = __mul__

    def rescale(self, factor):
        """ Substitute x -> factor x.
        """
        factor = complex(factor)
        return LaurentPoly(dict((power, coeff * factor ** power) for power, coeff in self.monomials.items()))

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        value = np.zeros_like(x)
        for power, coeff in sorted(self.monomials.items()):
            value = value + coeff * x ** power
        return qmock.qcore.as_value(value)

    def __repr__(self):
        return 'LaurentPoly({})'.format(dict(sorted(self.monomials.items())))


def _as_poly(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, numbers.Number):
        return LaurentPoly.constant(value)
    raise TypeError('cannot convert {} to LaurentPoly'.format(type(value)))


class QDiffOperator(object):
    """ Linear q-difference operator sum_k c_k(x) T^k, with T f(x) = f(base x).

    Args:
        terms (dict): shift order to coefficient, LaurentPoly or number
        base (complex): nome of the shift

    """

    def __init__(self, terms, base):
        self.terms = dict()

        for order, coeff in sorted(terms.items()):
            if int(order) != order or order < 0:
                raise qmock.qcore.DomainError('shift orders must be nonnegative integers', order=order)
            coeff = _as_poly(coeff)
            if not coeff.is_zero():
                self.terms[int(order)] = coeff

        if len(self.terms) == 0:
            raise qmock.qcore.DomainError('operator requires at least one nonzero term')

        self.base = complex(base)

    @property
    def order(self):
        return max(self.terms.keys())

    def _check_base(self, other):
        if self.base != other.base:
            raise qmock.qcore.DomainError('operators with different base nomes', base_1=self.base, base_2=other.base)

    def __add__(self, other):
        self._check_base(other)
        terms = dict(self.terms)
        for order, coeff in other.terms.items():
            terms[order] = terms.get(order, LaurentPoly()) + coeff
        return QDiffOperator(terms, self.base)

    def left_multiply(self, poly):
        """ Multiply every coefficient by a Laurent polynomial on the left.
        """
        poly = _as_poly(poly)
        return QDiffOperator(dict((order, poly * coeff) for order, coeff in self.terms.items()), self.base)

    def rescale(self, factor):
        """ Substitute x -> factor x in every coefficient.
        """
        return QDiffOperator(dict((order, coeff.rescale(factor)) for order, coeff in self.terms.items()), self.base)

    def coefficients(self):
        """ Nested map shift order -> power of x -> coefficient.
        """
        return dict((order, dict(coeff.monomials)) for order, coeff in self.terms.items())

    def __repr__(self):
        return 'QDiffOperator(order={}, base={}, terms={})'.format(self.order, self.base, self.terms)


def identity_operator(base):
    return QDiffOperator({0: 1.}, base)


def shift_operator(order, base):
    return QDiffOperator({order: 1.}, base)


def compose(a, b):
    """ Composition a o b, using T^k c(x) = c(base^k x) T^k.
    """
    a._check_base(b)

    terms = dict()
    for order_a, coeff_a in a.terms.items():
        for order_b, coeff_b in b.terms.items():
            order = order_a + order_b
            product = coeff_a * coeff_b.rescale(a.base ** order_a)
            terms[order] = terms.get(order, LaurentPoly()) + product

    return QDiffOperator(terms, a.base)


def operator_distance(a, b):
    """ Largest coefficient difference relative to the largest coefficient.
    """
    coeffs_a = a.coefficients()
    coeffs_b = b.coefficients()

    keys = set()
    for coeffs in (coeffs_a, coeffs_b):
        for order, monomials in coeffs.items():
            keys.update((order, power) for power in monomials)

    def lookup(coeffs, order, power):
        return coeffs.get(order, dict()).get(power, 0j)

    difference = max(abs(lookup(coeffs_a, *key) - lookup(coeffs_b, *key)) for key in keys)
    scale = max(max(abs(lookup(coeffs_a, *key)), abs(lookup(coeffs_b, *key))) for key in keys)

    return difference / scale


def op_from_roots(exponents, ctx):
    """ Expanded product of (T - q^alpha_k) with constant coefficients.
    """
    roots = [qpower(ctx.q, alpha) for alpha in exponents]
    coeffs = np.atleast_1d(np.poly(roots))

    degree = coeffs.shape[0] - 1
    terms = dict((degree - idx, complex(coeff)) for idx, coeff in enumerate(coeffs))

    return QDiffOperator(terms, ctx.q)


def _first_order(coeff, ctx):
    return QDiffOperator({1: 1., 0: coeff}, ctx.q)


def op_linear_eq(alpha, alphas, ctx):
    """ prod_k (T - q^{alpha_k}) (T + x q^alpha).
    """
    return compose(op_from_roots(alphas, ctx), _first_order(LaurentPoly.monomial(1, qpower(ctx.q, alpha)), ctx))


def op_appell(m, y, ctx):
    """ prod_{k=1..m} (T - q^{k-1}) (T + x^m / y), annihilating G_m(x, y).
    """
    if y == 0:
        raise qmock.qcore.DomainError('op_appell requires y != 0')
    return compose(op_from_roots(range(m), ctx), _first_order(LaurentPoly.monomial(m, 1. / complex(y)), ctx))


def op_gm1(m, ctx):
    """ prod_{k=1..m-1} (T - q^k) (T + x^m), annihilating G_m(x, 1).
    """
    return compose(op_from_roots(range(1, m), ctx), _first_order(LaurentPoly.monomial(m), ctx))


def op_diver(alphas, betas, ctx):
    """ T prod_k (T - q^{alpha_k}) + x prod_k (T - q^{beta_k}).
    """
    if len(alphas) != len(betas):
        raise qmock.qcore.DomainError('alphas and betas must have equal length', alphas=alphas, betas=betas)

    leading = compose(shift_operator(1, ctx.q), op_from_roots(alphas, ctx))
    trailing = op_from_roots(betas, ctx).left_multiply(LaurentPoly.monomial(1))

    return leading + trailing


def op_hermite_weber(a, ctx):
    """ q-Hermite-Weber operator T^2 - (1 - xq) sqrt(a) T - xq.
    """
    root = np.sqrt(complex(a))
    q = ctx.q
    return QDiffOperator({
        2: 1.,
        1: LaurentPoly({0: -root, 1: q * root}),
        0: LaurentPoly({1: -q}),
    }, q)


def _stencil_terms(op, f, x):
    x = complex(x)
    return [coeff(x) * f(x * op.base ** order) for order, coeff in sorted(op.terms.items())]


def apply_numeric(op, f, x):
    """ sum_k c_k(x) f(x base^k).
    """
    terms = np.array(_stencil_terms(op, f, x), dtype=complex)
    return complex(np.sum(terms))


def relative_residual(op, f, x):
    """ |sum_k c_k(x) f(x base^k)| normalized by sum_k |c_k(x) f(x base^k)|.

    Returns 0 when the normalization vanishes.
    """
    terms = np.array(_stencil_terms(op, f, x), dtype=complex)
    scale = np.sum(np.abs(terms))
    if scale == 0:
        return 0.
    return float(np.abs(np.sum(terms)) / scale)


NPDiagram = collections.namedtuple('NPDiagram', ['points', 'hull_vertices', 'slopes'])


def _lower_boundary(lowest):
    if len(lowest) <= 2:
        return list(lowest)

    coords = np.array(lowest, dtype=float)
    if np.linalg.matrix_rank(coords[1:] - coords[0]) < 2:
        return [lowest[0], lowest[-1]]

    # Vertices of a planar hull are in counterclockwise order
    hull = scipy.spatial.ConvexHull(coords)
    vertices = [lowest[idx] for idx in hull.vertices]

    position = vertices.index(lowest[0])
    end = vertices.index(lowest[-1])

    chain = [vertices[position]]
    while position != end:
        position = (position + 1) % len(vertices)
        chain.append(vertices[position])

    return chain


def newton_puiseux(op):
    """ Newton-Puiseux diagram of an operator.

    Points are (k, l) for every nonzero coefficient of x^k in the coefficient
    of T^l.  The lower boundary takes the smallest l for each k and runs by
    increasing k.

    Args:
        op (QDiffOperator): operator

    Returns:
        NPDiagram: point set, lower hull vertices and slopes as fractions

    """

    points = set()
    for order, coeff in op.terms.items():
        for power in coeff.monomials:
            points.add((power, order))

    lowest = dict()
    for power, order in points:
        lowest[power] = min(lowest.get(power, order), order)
    lowest = sorted(lowest.items())

    vertices = _lower_boundary(lowest)

    slopes = []
    for (k_1, l_1), (k_2, l_2) in zip(vertices[:-1], vertices[1:]):
        slopes.append(fractions.Fraction(l_2 - l_1, k_2 - k_1))

    return NPDiagram(frozenset(points), vertices, slopes)
