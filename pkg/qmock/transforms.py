import numpy as np

import qmock.qcore
import qmock.series
import qmock.mock
from qmock.qcore import qpower, theta, qpoch_inf


# Relative change between successive node doublings accepted by the quadrature
quadrature_rtol = 64. * np.finfo(float).eps

signs = {
    'plus': 1,
    'minus': -1,
    '+': 1,
    '-': -1,
    1: 1,
    -1: -1,
}


def _sign(sign):
    try:
        return signs[sign]
    except KeyError:
        raise qmock.qcore.DomainError('sign must be plus or minus', sign=sign)


def _quadratic_weights(q, count, sign):
    return np.array([q ** (sign * (n * (n - 1) // 2)) for n in range(count)], dtype=complex)


def borel(series, sign, ctx):
    """ q-Borel transform, coefficient n multiplied by q^{+-n(n-1)/2}.

    Args:
        series (PuiseuxSeries): plain power series about zero
        sign (str): 'plus' or 'minus'
        ctx (QContext): evaluation context

    Returns:
        PuiseuxSeries: transformed series of the same order

    """

    if series.point != 'zero' or series.exponent != 0:
        raise qmock.qcore.DomainError('Borel transform acts on plain power series about zero',
            point=series.point, exponent=series.exponent)

    weights = _quadratic_weights(ctx.q, series.order + 1, _sign(sign))

    return qmock.series.PuiseuxSeries(series.coeffs * weights)


def commutation_check(m, n, series, ctx, sign=None):
    """ Largest relative coefficient discrepancy of B(x^m T^n f) = q^{+-m(m-1)/2} xi^m T^{n+-m} B(f).

    Both signs are checked when sign is None.
    """
    q = ctx.q
    coeffs = series.coeffs
    count = coeffs.shape[0]

    if sign is None:
        sign_values = (1, -1)
    else:
        sign_values = (_sign(sign),)

    worst = 0.

    for s in sign_values:
        shifted = np.zeros(count + m, dtype=complex)
        for k in range(count):
            shifted[k + m] = coeffs[k] * q ** (n * k)
        left = shifted * _quadratic_weights(q, count + m, s)

        transformed = coeffs * _quadratic_weights(q, count, s)
        right = np.zeros(count + m, dtype=complex)
        for k in range(count):
            right[k + m] = q ** (s * (m * (m - 1) // 2)) * q ** ((n + s * m) * k) * transformed[k]

        scale = np.maximum(np.abs(left), np.abs(right))
        nonzero = scale > 0
        if np.any(nonzero):
            worst = max(worst, float(np.max(np.abs(left - right)[nonzero] / scale[nonzero])))

    return worst


def _laplace_forward(f, lam, ratio, weight, q):
    point = lam
    power = 1. + 0j
    while True:
        yield f(point) * weight
        weight = weight * ratio * power
        power = power * q
        point = point * q


def _laplace_backward(f, lam, ratio, weight, q):
    point = lam
    power = 1. / q
    while True:
        weight = weight / (ratio * power)
        point = point / q
        yield f(point) * weight
        power = power / q


def laplace_plus(f, x, lam, ctx):
    """ q-Laplace transform sum_n f(lambda q^n) / theta(lambda q^n / x).

    Args:
        f (callable): function of one complex variable
        x (complex): argument
        lam (complex): direction parameter lambda
        ctx (QContext): evaluation context

    Returns:
        complex: bilateral adaptively truncated sum

    """

    x = complex(x)
    lam = complex(lam)

    if x == 0 or lam == 0:
        raise qmock.qcore.DomainError('q-Laplace transform requires nonzero x and lambda', x=x, lam=lam)

    ratio = lam / x

    if qmock.qcore.lattice_distance(-ratio, ctx.q) < ctx.pole_guard:
        raise qmock.qcore.PoleError('theta denominator vanishes on the lambda grid', x=x, lam=lam, q=ctx.q)

    weight = 1. / theta(ratio, ctx)

    value = qmock.qcore.sum_bilateral(
        _laplace_forward(f, lam, ratio, weight, ctx.q),
        _laplace_backward(f, lam, ratio, weight, ctx.q),
        ctx, name='q-Laplace transform')

    return qmock.qcore.as_value(value)


def _contour_samples(f, x, nodes, ctx):
    values = np.asarray(f(nodes), dtype=complex) * np.ones(nodes.shape)

    if not np.all(np.isfinite(values)):
        raise qmock.qcore.PoleError('integrand is singular on the contour', radius=np.abs(nodes[0]))

    return values * np.asarray(theta(x / nodes, ctx))


def laplace_minus(f, x, ctx, radius=None):
    """ q-Laplace transform (1 / 2 pi i) int_{|xi| = r} f(xi) theta(x / xi) dxi / xi.

    Args:
        f (callable): vectorized function, analytic near the circle
        x (complex): argument
        ctx (QContext): evaluation context

    KwArgs:
        radius (float): contour radius, defaults to ctx.contour_radius, then 1

    Returns:
        complex: periodic trapezoid value, nodes doubled until converged

    """

    if radius is None:
        radius = ctx.contour_radius
    if radius is None:
        radius = 1.

    x = complex(x)
    count = ctx.contour_points
    tol = max(ctx.tol, quadrature_rtol)

    nodes = radius * np.exp(2j * np.pi * np.arange(count) / count)
    samples = _contour_samples(f, x, nodes, ctx)
    total = np.sum(samples)
    magnitude = np.sum(np.abs(samples))
    value = total / count

    while True:
        if 2 * count > ctx.max_contour_points:
            raise qmock.qcore.TruncationError('contour quadrature did not converge',
                nodes=count, radius=radius, x=x)

        midpoints = radius * np.exp(2j * np.pi * (np.arange(count) + 0.5) / count)
        samples = _contour_samples(f, x, midpoints, ctx)
        total = total + np.sum(samples)
        magnitude = magnitude + np.sum(np.abs(samples))
        count *= 2

        updated = total / count
        scale = max(abs(updated), magnitude / count)

        if abs(updated - value) <= tol * scale:
            return complex(updated)

        value = updated


def laplace_commutation_residual(m, n, f, x, lam, ctx, radius=None):
    """ Relative discrepancy of L(xi^m T^n f) = q^{-+m(m-1)/2} x^m T^{n-+m} L(f) for both transforms.
    """
    q = ctx.q
    x = complex(x)

    def transformed(xi):
        xi = np.asarray(xi, dtype=complex)
        return qmock.qcore.as_value(xi ** m * np.asarray(f(xi * q ** n), dtype=complex))

    quadratic = q ** (m * (m - 1) // 2)

    left_minus = laplace_minus(transformed, x, ctx, radius=radius)
    right_minus = quadratic * x ** m * laplace_minus(f, x * q ** (n + m), ctx, radius=radius)

    left_plus = laplace_plus(transformed, x, lam, ctx)
    right_plus = x ** m * laplace_plus(f, x * q ** (n - m), lam, ctx) / quadratic

    worst = 0.
    for left, right in ((left_minus, right_minus), (left_plus, right_plus)):
        scale = max(abs(left), abs(right))
        if scale > 0:
            worst = max(worst, abs(left - right) / scale)

    return worst


resummation_prefactors = ('q^(alpha_j/2)', 'lambda^(-1/2)')


def resummed_mu(alpha_j, x, lam, ctx, order=16):
    """ x^alpha_j L+ B+ of the formal 2-phi-0 solution, evaluated at (x, -1/lambda).

    The Borel transform of 2-phi-0(q, 0; -; q; x q^{-alpha_j-1}) is the
    geometric series of 1 / (1 + xi q^{-alpha_j-1}), which is summed in
    closed form before the Laplace transform.

    Returns:
        tuple: resummed value, relative coefficient discrepancy of the Borel
            transform from the geometric series

    """

    q = ctx.q
    shift = qpower(q, -alpha_j - 1.)

    formal = qmock.qcore.qhyper_coeffs([q, 0.], [], order, ctx, scale=shift)
    transformed = borel(formal, 'plus', ctx)

    geometric = (-shift) ** np.arange(order + 1)
    scale = np.maximum(np.abs(geometric), np.abs(transformed.coeffs))
    discrepancy = float(np.max(np.abs(transformed.coeffs - geometric) / scale))

    def geometric_sum(xi):
        return 1. / (1. + np.asarray(xi, dtype=complex) * shift)

    value = qmock.qcore.cpow(x, alpha_j) * laplace_plus(geometric_sum, x, -1. / complex(lam), ctx)

    return complex(value), discrepancy


def resummed_mu_rhs(alpha_j, x, lam, ctx, prefactor='q^(alpha_j/2)'):
    """ i q^{1/8} C x^{alpha_j - 1/2} mu(x lambda, lambda q^alpha_j), C = q^{alpha_j/2} or lambda^{-1/2}.
    """
    if prefactor == 'q^(alpha_j/2)':
        constant = qpower(ctx.q, alpha_j / 2.)
    elif prefactor == 'lambda^(-1/2)':
        constant = 1. / np.sqrt(complex(lam))
    else:
        raise ValueError('unknown prefactor {}'.format(prefactor))

    lam = complex(lam)
    args = qmock.mock.MuArgs(x * lam, lam * qpower(ctx.q, alpha_j))
    value = 1j * qpower(ctx.q, 0.125) * constant * qmock.qcore.cpow(x, alpha_j - 0.5) * qmock.mock.mu(args, ctx)

    return complex(value)


def formal_solution(point, j, alphas, betas, order, ctx):
    """ Formal solution of T prod (T - q^alpha_k) f + x prod (T - q^beta_k) f = 0.

    Args:
        point (str): 'zero' or 'infinity'
        j (int): index of the exponent, 1 <= j <= m - 1
        alphas (list): exponents alpha_1..alpha_{m-1}
        betas (list): exponents beta_1..beta_{m-1}
        order (int): truncation order
        ctx (QContext): evaluation context

    Returns:
        PuiseuxSeries: x^alpha_j m-phi-(m-2) in powers of x about zero, or
            x^beta_j m-phi-(m-2) in powers of 1/x about infinity

    """

    if len(alphas) != len(betas):
        raise qmock.qcore.DomainError('alphas and betas must have equal length', alphas=alphas, betas=betas)

    m = len(alphas) + 1
    if not 1 <= j <= m - 1:
        raise qmock.qcore.DomainError('index out of range', j=j, m=m)

    q = ctx.q

    if point == 'zero':
        exponent = alphas[j - 1]
        numerators = [qpower(q, exponent - beta) for beta in betas] + [0.]
        denominators = [qpower(q, exponent - alpha + 1.) for k, alpha in enumerate(alphas) if k != j - 1]
        a_1 = np.prod([-qpower(q, alpha) for alpha in alphas])
        b_1 = np.prod([-qpower(q, beta) for beta in betas])
        scale = b_1 / a_1 * qpower(q, -exponent - 1.)

    elif point == 'infinity':
        exponent = betas[j - 1]
        numerators = [qpower(q, alpha - exponent) for alpha in alphas] + [0.]
        denominators = [qpower(q, beta - exponent + 1.) for k, beta in enumerate(betas) if k != j - 1]
        scale = qpower(q, m - 1 + exponent)

    else:
        raise qmock.qcore.DomainError('unknown expansion point', point=point)

    try:
        series = qmock.qcore.qhyper_coeffs(numerators, denominators, order, ctx, scale=scale)
    except qmock.qcore.PoleError as e:
        raise qmock.qcore.ResonanceError('resonant exponents, denominator parameter in q^-N',
            point=point, j=j, alphas=alphas, betas=betas) from e

    return qmock.series.PuiseuxSeries(series.coeffs, exponent=exponent, point=point)


def _series_contributions(op, series):
    q = op.base
    lowest = min(coeff.degrees()[0] for coeff in op.terms.values())
    highest = max(coeff.degrees()[1] for coeff in op.terms.values())

    valid = series.order - (highest - lowest)
    if valid < 0:
        raise qmock.qcore.DomainError('series too short for the operator', order=series.order, span=highest - lowest)

    contributions = [[] for _ in range(valid + 1)]

    for order, coeff in op.terms.items():
        eigen = qpower(q, order * series.exponent)
        for power, value in coeff.monomials.items():
            for n in range(series.order + 1):
                if series.point == 'zero':
                    idx = n + power - lowest
                    multiplier = q ** (order * n)
                else:
                    idx = n + highest - power
                    multiplier = q ** (-order * n)
                if idx <= valid:
                    contributions[idx].append(value * eigen * multiplier * series.coeffs[n])

    if series.point == 'zero':
        exponent = series.exponent + lowest
    else:
        exponent = series.exponent + highest

    return contributions, exponent


def apply_operator_to_series(op, series):
    """ Apply an operator to a truncated series, keeping the coefficients it determines.

    T acts on x^e by q^e, multiplication by x^d shifts coefficients.  The result
    keeps order N - (d_max - d_min) for coefficient degrees d_min..d_max.
    """
    contributions, exponent = _series_contributions(op, series)
    coeffs = [np.sum(np.array(terms, dtype=complex)) for terms in contributions]
    return qmock.series.PuiseuxSeries(coeffs, exponent=exponent, point=series.point)


def annihilation_residual(op, series):
    """ Largest |coefficient| of op(series) relative to the sum of its contributions.
    """
    contributions, _ = _series_contributions(op, series)

    worst = 0.
    for terms in contributions:
        terms = np.array(terms, dtype=complex)
        scale = np.sum(np.abs(terms))
        if scale > 0:
            worst = max(worst, float(np.abs(np.sum(terms)) / scale))

    return worst


def contour_radius_for(inner, outer, x, ctx):
    """ Contour radius inside the annulus inner < r < outer free of integrand poles.

    A radius from ctx is validated.  Otherwise |x| is clipped into
    [2 inner, outer / 2], with the geometric mean of inner and outer used
    when that band is empty.
    """
    if not inner < outer:
        raise qmock.qcore.PoleError('no admissible contour radius', inner=inner, outer=outer)

    if ctx.contour_radius is not None:
        radius = ctx.contour_radius
        if not inner * (1. + ctx.pole_guard) < radius < outer * (1. - ctx.pole_guard):
            raise qmock.qcore.PoleError('contour radius meets integrand poles',
                radius=radius, inner=inner, outer=outer)
        return radius

    low = 2. * inner
    high = outer / 2.

    if low <= high:
        return float(np.clip(abs(x), low, high))

    return float(np.sqrt(inner * outer))


infinity_integrands = ('xi*g', 'g')


def integral_solution(point, alphas, betas, x, ctx, integrand='xi*g'):
    """ Convergent solution of T prod (T - q^alpha_k) f + x prod (T - q^beta_k) f = 0.

    Args:
        point (str): 'zero' or 'infinity'
        alphas (list): exponents alpha_1..alpha_{m-1}
        betas (list): exponents beta_1..beta_{m-1}
        x (complex): argument
        ctx (QContext): evaluation context

    KwArgs:
        integrand (str): about infinity, 'xi*g' integrates xi g(xi) and 'g'
            integrates g(xi) with g the product of q-shifted factorials

    Returns:
        complex: theta prefactor times the q-Laplace contour integral

    """

    if len(alphas) != len(betas):
        raise qmock.qcore.DomainError('alphas and betas must have equal length', alphas=alphas, betas=betas)

    q = ctx.q
    m = len(alphas) + 1
    x = complex(x)

    if point == 'zero':
        a_1 = np.prod([-qpower(q, alpha) for alpha in alphas])
        b_1 = np.prod([-qpower(q, beta) for beta in betas])
        ratio = b_1 / a_1

        qmock.qcore.check_lattice(ratio * x, q, ctx, 'theta prefactor argument')

        upper = [ratio * qpower(q, 1. - alpha) for alpha in alphas]
        lower = [ratio * qpower(q, -beta) for beta in betas]

        def g(xi):
            value = np.ones_like(xi)
            for u, l in zip(upper, lower):
                value = value * qpoch_inf(-u * xi, ctx) / qpoch_inf(-l * xi, ctx)
            return value

        outer = min([abs(qpower(q, beta) / ratio) for beta in betas] + [np.inf])
        radius = contour_radius_for(0., outer, x, ctx)

        return complex(laplace_minus(g, x, ctx, radius=radius) / theta(-ratio * x, ctx))

    elif point == 'infinity':
        if integrand not in infinity_integrands:
            raise ValueError('unknown integrand {}'.format(integrand))

        qmock.qcore.check_lattice(x, q, ctx, 'x')

        upper = [qpower(q, m + beta + 1.) for beta in betas]
        lower = [qpower(q, m + alpha) for alpha in alphas]

        def g(xi):
            xi = np.asarray(xi, dtype=complex)
            value = xi.copy() if integrand == 'xi*g' else np.ones_like(xi)
            for u, l in zip(upper, lower):
                value = value * qpoch_inf(-u / xi, ctx) / qpoch_inf(-l / xi, ctx)
            return value

        inner = max([abs(l) for l in lower] + [0.])
        radius = contour_radius_for(inner, np.inf, x, ctx)

        return complex(laplace_minus(g, x, ctx, radius=radius) / theta(-x * q ** (-m), ctx))

    raise qmock.qcore.DomainError('unknown expansion point', point=point)
