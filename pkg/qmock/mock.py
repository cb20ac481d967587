import collections

import numpy as np

import qmock.qcore
from qmock.qcore import cpow, qpower, theta, qpoch_inf


MuArgs = collections.namedtuple('MuArgs', ['x', 'y', 'base'])
MuArgs.__new__.__defaults__ = (None,)


def _asarray(value):
    return np.asarray(value, dtype=complex)


def _base_context(args, ctx):
    if args.base is None:
        return ctx
    return ctx.with_base(args.base)


def _power_context(m, ctx):
    return ctx.with_base(ctx.q ** m)


def _guard_denominator(denominator, ctx):
    if np.any(np.abs(denominator) < ctx.pole_guard):
        raise qmock.qcore.PoleError('vanishing denominator 1 - x q^n', q=ctx.q, pole_guard=ctx.pole_guard)


def _appell_forward(x, y, level, ctx):
    q = ctx.q
    coefficient = np.ones_like(x)
    power = 1. + 0j
    stride = q ** level
    step = stride

    while True:
        denominator = 1. - x * power
        _guard_denominator(denominator, ctx)
        yield coefficient / denominator

        if np.any(coefficient != 0):
            coefficient = coefficient * (-y) * step
        step = step * stride
        power = power * q


def _appell_backward(x, y, level, ctx):
    q = ctx.q
    coefficient = np.ones_like(x)
    power = 1. + 0j
    step = 1. + 0j
    inverse = 1. / q
    inverse_stride = q ** (-level)

    while True:
        if np.any(coefficient != 0):
            coefficient = coefficient / ((-y) * step)
        step = step * inverse_stride
        power = power * inverse

        denominator = 1. - x * power
        _guard_denominator(denominator, ctx)
        yield coefficient / denominator


def appell_lerch_sum(x, y, level, ctx):
    """ Bilateral sum over n of (-1)^n y^n q^{level n(n+1)/2} / (1 - x q^n).

    Args:
        x (complex or numpy.array): pole variable, not in q^Z
        y (complex or numpy.array): nonzero
        level (int): level of the quadratic exponent
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: sum value

    """

    x = _asarray(x)
    y = _asarray(y)

    if np.any(y == 0):
        raise qmock.qcore.DomainError('Appell-Lerch sum requires y != 0')

    qmock.qcore.check_lattice(x, ctx.q, ctx, 'x')

    x, y = np.broadcast_arrays(x, y)

    value = qmock.qcore.sum_bilateral(
        _appell_forward(x, y, level, ctx),
        _appell_backward(x, y, level, ctx),
        ctx, name='Appell-Lerch sum')

    return qmock.qcore.as_value(value)


def _mu(x, y, ctx):
    x = _asarray(x)
    y = _asarray(y)

    qmock.qcore.check_lattice(x, ctx.q, ctx, 'x')
    qmock.qcore.check_lattice(y, ctx.q, ctx, 'y')

    total = _asarray(appell_lerch_sum(x, y, 1, ctx))
    prefactor = 1j * qpower(ctx.q, -0.125) * np.sqrt(x * y) / _asarray(theta(-y, ctx))

    return qmock.qcore.as_value(prefactor * total)


def mu(args, ctx):
    """ Zwegers' mu function.

    Args:
        args (MuArgs): arguments x, y and the base nome, None for ctx.q
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: i q^{-1/8} sqrt(xy) / theta(-y) sum_n (-1)^n y^n q^{n(n+1)/2} / (1 - x q^n)

    """
    return _mu(args.x, args.y, _base_context(args, ctx))


def mu_shift_rhs(args, ctx):
    """ Right side of the elliptic shift mu(xq, y) = -(x/y) q^{1/2} mu(x, y) - i sqrt(x/y) q^{3/8}.
    """
    base_ctx = _base_context(args, ctx)
    q = base_ctx.q

    x = _asarray(args.x)
    y = _asarray(args.y)

    value = -(x / y) * qpower(q, 0.5) * _asarray(_mu(x, y, base_ctx)) - 1j * np.sqrt(x / y) * qpower(q, 0.375)

    return qmock.qcore.as_value(value)


def mu_translation_rhs(x, y, z, ctx):
    """ Value that mu(xz, yz) must equal under the translation identity.
    """
    x = _asarray(x)
    y = _asarray(y)
    z = _asarray(z)

    for name, value in (('x', x), ('y', y), ('xz', x * z), ('yz', y * z)):
        qmock.qcore.check_lattice(value, ctx.q, ctx, name)

    numerator = np.sqrt(x * y) * qpoch_inf(ctx.q, ctx) ** 3 * _asarray(theta(-z, ctx)) * _asarray(theta(-x * y * z, ctx))
    denominator = _asarray(theta(-x, ctx)) * _asarray(theta(-y, ctx)) * _asarray(theta(-x * z, ctx)) * _asarray(theta(-y * z, ctx))

    correction = -1j * qpower(ctx.q, -0.125) * numerator / denominator

    return qmock.qcore.as_value(_asarray(_mu(x, y, ctx)) + correction)


def appell_A(m, x, y, ctx):
    """ Level m Appell function x^{m/2} sum_n (-1)^{mn} y^n q^{mn(n+1)/2} / (1 - x q^n).
    """
    if int(m) != m or m < 1:
        raise qmock.qcore.DomainError('level must be a positive integer', m=m)

    sign = (-1.) ** (m - 1)
    total = _asarray(appell_lerch_sum(x, sign * _asarray(y), m, ctx))

    return qmock.qcore.as_value(_asarray(cpow(x, m / 2.)) * total)


def appell_G(m, x, y, ctx):
    """ G_m(x, y) = x^{-m/2} A_m(x, (-1)^{m-1} y), summed directly.
    """
    if int(m) != m or m < 1:
        raise qmock.qcore.DomainError('level must be a positive integer', m=m)

    return appell_lerch_sum(x, y, m, ctx)


def _universal_terms(x, kind, ctx):
    q = ctx.q
    term = 1. / ((1. - x) * (1. - q / x))
    power = q

    while True:
        yield term

        if kind == 2:
            ratio = (1. + power) * power
        else:
            ratio = power * power

        term = term * ratio / ((1. - x * power) * (1. - q * power / x))
        power = power * q


def _universal_series(x, kind, ctx):
    x = _asarray(x)
    qmock.qcore.check_lattice(x, ctx.q, ctx, 'x')

    value = qmock.qcore.sum_series(_universal_terms(x, kind, ctx), ctx, name='g{}'.format(kind))

    return qmock.qcore.as_value(value)


def g2_series(x, ctx):
    """ Universal mock theta function sum_n (-q)_n q^{n(n+1)/2} / (x, q/x)_{n+1}.
    """
    return _universal_series(x, 2, ctx)


def g3_series(x, ctx):
    """ Universal mock theta function sum_n q^{n(n+1)} / (x, q/x)_{n+1}.
    """
    return _universal_series(x, 3, ctx)


def g2_lerch(x, ctx):
    prefactor = qpoch_inf(-ctx.q, ctx) / qpoch_inf(ctx.q, ctx)
    return qmock.qcore.as_value(prefactor * _asarray(appell_G(2, x, 1., ctx)))


def g3_lerch(x, ctx):
    return qmock.qcore.as_value(_asarray(appell_G(3, x, 1., ctx)) / qpoch_inf(ctx.q, ctx))


def a1_mu_rhs(x, y, ctx):
    """ A_1(x, y) expressed through mu, -i q^{1/8} theta(-y) y^{-1/2} mu(x, y).
    """
    y = _asarray(y)
    value = -1j * qpower(ctx.q, 0.125) * _asarray(theta(-y, ctx)) / np.sqrt(y) * _asarray(_mu(x, y, ctx))
    return qmock.qcore.as_value(value)


def zwegers_rhs(m, x, y, ctx):
    """ Decomposition of A_m(x, (-1)^{m-1} y) into mu functions of base q^m.

    Args:
        m (int): level
        x (complex or numpy.array): pole variable
        y (complex or numpy.array): second variable
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: sum over k < m of
            -i q^{m/8} x^k theta_{q^m}(-y q^k) (y q^k)^{-1/2} mu(x^m, y q^k; q^m)

    """

    x = _asarray(x)
    y = _asarray(y)
    power_ctx = _power_context(m, ctx)

    terms = []
    for k in range(m):
        yk = y * ctx.q ** k
        terms.append(
            -1j * qpower(ctx.q, m / 8.) * x ** k * _asarray(theta(-yk, power_ctx)) / np.sqrt(yk)
            * _asarray(_mu(x ** m, yk, power_ctx)))

    return qmock.qcore.as_value(np.sum(np.stack(terms, axis=-1), axis=-1))


def gm_mu_rhs(m, x, y, ctx):
    """ G_m(x, y) expressed through mu functions of base q^m.
    """
    x = _asarray(x)
    y = _asarray(y)
    power_ctx = _power_context(m, ctx)

    terms = []
    for k in range(m):
        yk = y * ctx.q ** k
        terms.append(
            _asarray(theta(-yk, power_ctx)) / np.sqrt(yk) * _asarray(cpow(x, k - m / 2.))
            * _asarray(_mu(x ** m, yk, power_ctx)))

    total = np.sum(np.stack(terms, axis=-1), axis=-1)

    return qmock.qcore.as_value(-1j * qpower(ctx.q, m / 8.) * total)


def gm_shift_terms(m, x, y, ctx):
    """ Terms of the pseudo-periodicity relation of G_m, which sum to zero.

    Returns:
        list: y G_m(xq, y), x^m G_m(x, y) and x^k theta_{q^m}(-y q^k) for k < m

    """
    x = _asarray(x)
    y = _asarray(y)
    power_ctx = _power_context(m, ctx)

    terms = [
        y * _asarray(appell_G(m, x * ctx.q, y, ctx)),
        x ** m * _asarray(appell_G(m, x, y, ctx)),
    ]

    for k in range(m):
        terms.append(x ** k * _asarray(theta(-y * ctx.q ** k, power_ctx)))

    return terms


def kang_g2_rhs(x, ctx):
    """ g_2 through mu, -i q^{-1/4} mu(x^2, q; q^2) + (q^2;q^2)^4 / ((q;q)^2 theta_{q^2}(-x^2)).
    """
    x = _asarray(x)
    q = ctx.q
    square_ctx = _power_context(2, ctx)

    mu_term = -1j * qpower(q, -0.25) * _asarray(_mu(x ** 2, q, square_ctx))
    theta_term = qpoch_inf(q ** 2, square_ctx) ** 4 / (qpoch_inf(q, ctx) ** 2 * _asarray(theta(-x ** 2, square_ctx)))

    return qmock.qcore.as_value(mu_term + theta_term)


g3_mu_bases = {
    'q^3': 3,
    'q^2': 2,
}


def kang_g3_rhs(x, ctx, mu_base='q^3'):
    """ g_3 through mu functions.

    Args:
        x (complex or numpy.array): argument
        ctx (QContext): evaluation context

    KwArgs:
        mu_base (str): base of the mu function with second argument q, 'q^3' or 'q^2'

    Returns:
        complex or numpy.array: (q^3;q^3)^3 / ((q;q) theta_{q^3}(-x^3))
            - i x^{-1/2} q^{-1/8} mu(x^3, q; B) - i x^{1/2} q^{-5/8} mu(x^3, q^2; q^3)

    """

    if mu_base not in g3_mu_bases:
        raise ValueError('unknown mu base {}'.format(mu_base))

    x = _asarray(x)
    q = ctx.q
    cube_ctx = _power_context(3, ctx)
    first_ctx = _power_context(g3_mu_bases[mu_base], ctx)

    theta_term = qpoch_inf(q ** 3, cube_ctx) ** 3 / (qpoch_inf(q, ctx) * _asarray(theta(-x ** 3, cube_ctx)))
    first = -1j * _asarray(cpow(x, -0.5)) * qpower(q, -0.125) * _asarray(_mu(x ** 3, q, first_ctx))
    second = -1j * _asarray(cpow(x, 0.5)) * qpower(q, -0.625) * _asarray(_mu(x ** 3, q ** 2, cube_ctx))

    return qmock.qcore.as_value(theta_term + first + second)


def gm1_shift_terms(m, x, ctx, theta_base='q^m'):
    """ Terms of the shift relation of G_m(x, 1), which sum to zero.

    The constant terms are x^k theta_B(-q^k) for 0 < k < m, with B = q^m
    for theta_base 'q^m' and B = q for theta_base 'q'.
    """
    if theta_base == 'q^m':
        theta_ctx = _power_context(m, ctx)
    elif theta_base == 'q':
        theta_ctx = ctx
    else:
        raise ValueError('unknown theta base {}'.format(theta_base))

    x = _asarray(x)

    terms = [
        _asarray(appell_G(m, x * ctx.q, 1., ctx)),
        x ** m * _asarray(appell_G(m, x, 1., ctx)),
    ]

    for k in range(1, m):
        terms.append(x ** k * theta(-ctx.q ** k, theta_ctx))

    return terms


def gm1_closed_form(m, x, ctx):
    """ Closed form of G_m(x, 1) in terms of a theta quotient and mu functions of base q^m.
    """
    x = _asarray(x)
    q = ctx.q
    p = q ** m
    power_ctx = _power_context(m, ctx)

    value = qpoch_inf(p, power_ctx) ** 3 / _asarray(theta(-x ** m, power_ctx))

    for j in range(1, m):
        value = value - (
            1j * theta(-q ** j, power_ctx) * _asarray(cpow(x, j - m / 2.)) * qpower(q, m / 8. - j / 2.)
            * _asarray(_mu(x ** m, q ** j, power_ctx)))

    return qmock.qcore.as_value(value)


def gm1_lambda_form(m, x, lam, ctx):
    """ Representation of G_m(x, 1) with a free parameter lambda.

    Args:
        m (int): level
        x (complex or numpy.array): argument
        lam (complex): free parameter, generic
        ctx (QContext): evaluation context

    Returns:
        complex or numpy.array: G_m(x, 1)

    """

    x = _asarray(x)
    q = ctx.q
    p = q ** m
    power_ctx = _power_context(m, ctx)
    xm = x ** m

    mu_part = 0j
    for j in range(1, m):
        mu_part = mu_part + (
            theta(-q ** j, power_ctx) * _asarray(cpow(x, j - m / 2.)) * qpower(q, -j / 2.)
            * _asarray(_mu(xm * lam, lam * q ** j, power_ctx)))

    theta_lam = theta(-lam, power_ctx)
    theta_xm_lam = _asarray(theta(-xm * lam, power_ctx))

    theta_part = 0j
    for j in range(m):
        theta_part = theta_part + (
            x ** j * theta_lam * _asarray(theta(-xm * lam * q ** j, power_ctx))
            / (theta_xm_lam * theta(-lam * q ** j, power_ctx)))

    value = -1j * qpower(q, m / 8.) * mu_part + qpoch_inf(p, power_ctx) ** 3 / _asarray(theta(-xm, power_ctx)) * theta_part

    return qmock.qcore.as_value(value)


linear_eq_exponents = ('alpha_j-1/2', 'alpha+alpha_j-1/2')


def linear_eq_solutions(alpha, alphas, lam, ctx, exponent='alpha_j-1/2'):
    """ Fundamental solutions of prod_k (T - q^{alpha_k}) (T + x q^alpha) f = 0.

    Args:
        alpha (complex): exponent of the first order factor
        alphas (list): exponents alpha_1..alpha_{m-1}
        lam (complex): free parameter lambda
        ctx (QContext): evaluation context

    KwArgs:
        exponent (str): power of x in front of the mu solutions,
            'alpha_j-1/2' or 'alpha+alpha_j-1/2'

    Returns:
        list: callables, 1 / theta(-x q^alpha) followed by
            x^e mu(x lambda q^alpha, lambda q^{alpha_j}) for each alpha_j

    """

    if exponent not in linear_eq_exponents:
        raise ValueError('unknown exponent form {}'.format(exponent))

    q_alpha = qpower(ctx.q, alpha)

    def theta_solution(x):
        return qmock.qcore.as_value(1. / _asarray(theta(-_asarray(x) * q_alpha, ctx)))

    solutions = [theta_solution]

    for alpha_j in alphas:
        if exponent == 'alpha_j-1/2':
            power = alpha_j - 0.5
        else:
            power = alpha + alpha_j - 0.5

        def mu_solution(x, power=power, alpha_j=alpha_j):
            x = _asarray(x)
            return qmock.qcore.as_value(
                _asarray(cpow(x, power)) * _asarray(_mu(x * lam * q_alpha, lam * qpower(ctx.q, alpha_j), ctx)))

        solutions.append(mu_solution)

    return solutions


def gm1_solutions(m, lam, ctx):
    """ Fundamental solutions of prod_{k<m} (T - q^k) (T + x^m) f = 0.
    """
    power_ctx = _power_context(m, ctx)

    def theta_solution(x):
        return qmock.qcore.as_value(1. / _asarray(theta(-_asarray(x) ** m, power_ctx)))

    solutions = [theta_solution]

    for j in range(1, m):
        def mu_solution(x, j=j):
            x = _asarray(x)
            return qmock.qcore.as_value(
                _asarray(cpow(x, j - m / 2.)) * _asarray(_mu(x ** m * lam, lam * ctx.q ** j, power_ctx)))

        solutions.append(mu_solution)

    return solutions
