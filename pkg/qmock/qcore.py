import collections
import numbers

import numpy as np

import qmock.defaults
import qmock.series


class QSeriesError(ValueError):
    def __init__(self, message, **variables):
        """ Error evaluating a q-series quantity.

        Args:
            message (str): message detailing error

        KwArgs:
            **variables: variables to print

        """

        for name, value in variables.items():
            message += '\n{0}={1}'.format(name, value)

        ValueError.__init__(self, message)


class DomainError(QSeriesError):
    pass


class PoleError(QSeriesError):
    pass


class ResonanceError(PoleError):
    pass


class TruncationError(QSeriesError):
    pass


class DivergentSeriesError(QSeriesError):
    pass


_QContext = collections.namedtuple('QContext', [
    'q',
    'max_terms',
    'tol',
    'contour_radius',
    'contour_points',
    'seed',
    'min_terms',
    'pole_guard',
    'max_contour_points',
])


class QContext(_QContext):
    """ Evaluation environment shared by all evaluators.

    Args:
        q (complex): nome, 0 < |q| < 1

    KwArgs:
        max_terms (int): cap on the number of terms of any series or product tail
        tol (float): relative tolerance of the adaptive truncation rule
        contour_radius (float): fixed contour radius, None for automatic selection
        contour_points (int): initial number of quadrature nodes
        seed (int): seed for samplers
        min_terms (int): no series tail is truncated before this many terms
        pole_guard (float): lattice distance below which evaluators raise PoleError
        max_contour_points (int): cap on quadrature node doubling

    """

    __slots__ = ()

    def __new__(cls, q,
                max_terms=qmock.defaults.max_terms,
                tol=qmock.defaults.tol,
                contour_radius=qmock.defaults.contour_radius,
                contour_points=qmock.defaults.contour_points,
                seed=qmock.defaults.seed,
                min_terms=qmock.defaults.min_terms,
                pole_guard=qmock.defaults.pole_guard,
                max_contour_points=qmock.defaults.max_contour_points):

        q = complex(q)
        if not np.isfinite(q) or not 0. < abs(q) < 1.:
            raise DomainError('nome must satisfy 0 < |q| < 1', q=q)

        if int(max_terms) < 8:
            raise DomainError('max_terms must be at least 8', max_terms=max_terms)

        if not 0. < float(tol) < 1.:
            raise DomainError('tol must be positive and below 1', tol=tol)

        if int(contour_points) < 16:
            raise DomainError('contour_points must be at least 16', contour_points=contour_points)

        if int(max_contour_points) < int(contour_points):
            raise DomainError('max_contour_points below contour_points',
                contour_points=contour_points, max_contour_points=max_contour_points)

        if not 0 <= int(min_terms) < int(max_terms):
            raise DomainError('min_terms must lie in [0, max_terms)', min_terms=min_terms, max_terms=max_terms)

        if int(seed) < 0:
            raise DomainError('seed must be unsigned', seed=seed)

        if not float(pole_guard) > 0.:
            raise DomainError('pole_guard must be positive', pole_guard=pole_guard)

        if contour_radius is not None:
            contour_radius = float(contour_radius)
            if not 0. < contour_radius < np.inf:
                raise DomainError('contour_radius must be positive', contour_radius=contour_radius)

        return super(QContext, cls).__new__(
            cls, q, int(max_terms), float(tol), contour_radius, int(contour_points), int(seed),
            int(min_terms), float(pole_guard), int(max_contour_points))

    def replace(self, **kwargs):
        """ Validated copy with some fields replaced.
        """
        fields = self._asdict()
        fields.update(kwargs)
        return QContext(**fields)

    def with_base(self, base):
        """ Copy of the context with a different nome, for example q^m.
        """
        return self.replace(q=base)


def as_value(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return complex(value)
    return value


def _is_integral(exponent):
    if isinstance(exponent, numbers.Integral):
        return True
    exponent = complex(exponent)
    return exponent.imag == 0. and float(exponent.real).is_integer()


def cpow(z, exponent):
    """ Principal power exp(exponent Log z), integer exponents by repeated squaring.
    """
    z = np.asarray(z, dtype=complex)

    if _is_integral(exponent):
        return as_value(z ** int(complex(exponent).real))

    if np.any(z == 0):
        raise DomainError('non-integer power of zero', exponent=exponent)

    return as_value(np.exp(complex(exponent) * np.log(z)))


def qpower(q, exponent):
    """ Principal power of a scalar nome.
    """
    return complex(cpow(complex(q), exponent))


def check_finite(value, name, **variables):
    if not np.all(np.isfinite(value)):
        raise DomainError('non-finite value in {}'.format(name), **variables)
    return value


def lattice_distance(value, base):
    """ Relative distance of value from the lattice base^Z.

    Args:
        value (complex or numpy.array): values to test
        base (complex): lattice generator, 0 < |base| < 1

    Returns:
        float or numpy.array: min over n of |1 - value base^-n|

    Zero is reported at distance 1.

    """

    value = np.asarray(value, dtype=complex)
    base = complex(base)

    nonzero = np.where(value == 0, 1., value)
    nearest = np.round(np.log(np.abs(nonzero)) / np.log(abs(base)))

    distance = np.full(value.shape, np.inf)
    for shift in (-1., 0., 1.):
        distance = np.minimum(distance, np.abs(1. - nonzero * base ** (-(nearest + shift))))

    distance = np.where(value == 0, 1., distance)

    if distance.ndim == 0:
        return float(distance)
    return distance


def check_lattice(value, base, ctx, name):
    """ Raise PoleError if any value is within the pole guard of base^Z.
    """
    if np.any(lattice_distance(value, base) < ctx.pole_guard):
        raise PoleError('{} lies on the lattice of the base'.format(name),
            value=value, base=base, pole_guard=ctx.pole_guard)


def _tree_sum(terms):
    stacked = np.stack([np.asarray(a, dtype=complex) for a in terms], axis=-1)
    return np.sum(stacked, axis=-1)


def sum_series(terms, ctx, name='series'):
    """ Adaptively truncated sum of a term generator.

    Args:
        terms (iterable): term values, scalars or arrays of equal shape
        ctx (QContext): evaluation context

    KwArgs:
        name (str): name used in error messages

    Returns:
        complex or numpy.array: sum of the collected terms

    Summation stops after 3 consecutive terms with |term| < tol (1 + |partial|),
    and not before ctx.min_terms terms.  Collected terms are added pairwise.

    """

    collected = []
    partial = 0.
    quiet = 0

    for n, term in enumerate(terms):
        if n >= ctx.max_terms:
            raise TruncationError('{} did not converge'.format(name), max_terms=ctx.max_terms, q=ctx.q)

        term = np.asarray(term, dtype=complex)
        if not np.all(np.isfinite(term)):
            raise DomainError('non-finite term in {}'.format(name), index=n, q=ctx.q)

        collected.append(term)
        partial = partial + term

        if np.all(np.abs(term) < ctx.tol * (1. + np.abs(partial))):
            quiet += 1
        else:
            quiet = 0

        if quiet >= 3 and n + 1 >= ctx.min_terms:
            break

    if len(collected) == 0:
        return 0j

    return _tree_sum(collected)


def sum_bilateral(forward, backward, ctx, name='series'):
    """ Sum a bilateral series, each tail truncated independently.
    """
    return sum_series(forward, ctx, name=name + ' (n >= 0)') + sum_series(backward, ctx, name=name + ' (n < 0)')


def qpoch_finite(x, n, ctx):
    """ Finite q-shifted factorial (x;q)_n.
    """
    if int(n) != n or n < 0:
        raise DomainError('order must be a nonnegative integer', n=n)

    x = np.asarray(x, dtype=complex)
    product = np.ones_like(x)
    power = 1. + 0j

    for _ in range(int(n)):
        product = product * (1. - x * power)
        power = power * ctx.q

    return as_value(product)


def qpoch_inf(x, ctx):
    """ Infinite q-shifted factorial (x;q)_inf.

    Args:
        x (complex or numpy.array): argument
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: truncated product

    The product is truncated when the relative change over 3 consecutive
    factors stays below ctx.tol.

    """

    x = np.asarray(x, dtype=complex)
    product = np.ones_like(x)
    term = x.copy()
    quiet = 0

    for j in range(ctx.max_terms):
        updated = product * (1. - term)

        if np.all(np.abs(updated - product) <= ctx.tol * np.abs(updated)):
            quiet += 1
        else:
            quiet = 0

        product = updated
        term = term * ctx.q

        if quiet >= 3 and j + 1 >= ctx.min_terms:
            check_finite(product, 'q-shifted factorial', q=ctx.q)
            return as_value(product)

    raise TruncationError('q-shifted factorial did not converge', x=x, q=ctx.q, max_terms=ctx.max_terms)


def qpoch_nu(x, nu, ctx):
    """ q-shifted factorial of complex order, (x;q)_inf / (q^nu x;q)_inf.
    """
    x = np.asarray(x, dtype=complex)

    numerator = np.asarray(qpoch_inf(x, ctx))
    denominator = np.asarray(qpoch_inf(qpower(ctx.q, nu) * x, ctx))

    if np.any(np.abs(denominator) < ctx.tol ** 2):
        raise PoleError('vanishing denominator in q-shifted factorial', x=x, nu=nu, q=ctx.q)

    return as_value(numerator / denominator)


def _theta_forward(x, q):
    term = np.ones_like(x)
    power = 1. + 0j
    while True:
        yield term
        term = term * x * power
        power = power * q


def _theta_backward(x, q):
    term = np.ones_like(x)
    power = 1. / q
    while True:
        term = term / (x * power)
        yield term
        power = power / q


def theta(x, ctx, mode='product'):
    """ Jacobi theta function sum_n x^n q^{n(n-1)/2} = (q, -x, -q/x; q)_inf.

    Args:
        x (complex or numpy.array): argument, nonzero
        ctx (QContext): evaluation context

    KwArgs:
        mode (str): 'product' for the triple product, 'sum' for the bilateral series

    Returns:
        complex or numpy.array: theta value

    """

    x = np.asarray(x, dtype=complex)

    if np.any(x == 0):
        raise DomainError('theta is undefined at zero', q=ctx.q)

    if mode == 'product':
        value = qpoch_inf(ctx.q, ctx) * np.asarray(qpoch_inf(-x, ctx)) * np.asarray(qpoch_inf(-ctx.q / x, ctx))

    elif mode == 'sum':
        value = sum_bilateral(_theta_forward(x, ctx.q), _theta_backward(x, ctx.q), ctx, name='theta')

    else:
        raise ValueError('unknown theta mode {}'.format(mode))

    return as_value(value)


def _hyper_terms(numerators, denominators, z, ctx):
    q = ctx.q
    balance = len(denominators) - len(numerators) + 1

    term = np.ones_like(np.asarray(z, dtype=complex))
    power = 1. + 0j
    n = 0

    while True:
        yield term

        numerator = 1. + 0j
        for a in numerators:
            numerator *= 1. - a * power

        denominator = 1. - q * power
        for b in denominators:
            factor = 1. - b * power
            if abs(factor) < ctx.pole_guard:
                raise PoleError('denominator parameter on the lattice q^-N', parameter=b, index=n, q=q)
            denominator *= factor

        term = term * (numerator / denominator) * (-power) ** balance * z
        power = power * q
        n += 1


def qhyper(numerators, denominators, z, ctx):
    """ Basic hypergeometric series r-phi-s.

    Args:
        numerators (list): parameters a_1..a_r
        denominators (list): parameters b_1..b_s
        z (complex or numpy.array): argument
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: adaptively truncated sum

    """

    numerators = [complex(a) for a in numerators]
    denominators = [complex(b) for b in denominators]
    z = np.asarray(z, dtype=complex)

    balance = len(denominators) - len(numerators) + 1

    if balance < 0 and np.any(z != 0):
        raise DivergentSeriesError('series with s - r + 1 < 0 is formal only',
            r=len(numerators), s=len(denominators))

    if balance == 0 and np.any(np.abs(z) >= 1.):
        raise DivergentSeriesError('argument outside the unit disc', z=z)

    value = sum_series(_hyper_terms(numerators, denominators, z, ctx), ctx, name='qhyper')

    return as_value(value)


def qhyper_coeffs(numerators, denominators, order, ctx, scale=1.):
    """ First order + 1 coefficients of r-phi-s in powers of its argument.

    The coefficient of index n is scaled by scale^n, any r and s are accepted.
    """
    numerators = [complex(a) for a in numerators]
    denominators = [complex(b) for b in denominators]

    terms = _hyper_terms(numerators, denominators, complex(scale), ctx)
    coeffs = [next(terms) for _ in range(int(order) + 1)]

    return qmock.series.PuiseuxSeries(coeffs)
