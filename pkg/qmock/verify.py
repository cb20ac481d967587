import collections
import fractions
import itertools
import logging
import time
import zlib

import numpy as np

import qmock.config
import qmock.defaults
import qmock.qcore
import qmock.mock
import qmock.qdiff
import qmock.series
import qmock.transforms
from qmock.qcore import lattice_distance, qpower, theta
from qmock.mock import MuArgs


class UnknownCheckError(KeyError):
    pass


tiers = ('core', 'branch-sensitive')


class IdentityCheck(object):
    """ Identity verified by randomized residual testing.

    Args:
        name (str): unique registry key
        anchor (str): statement of the identity
        draw (callable): Sampler -> dict of parameters, including the nome 'q'
        residual (callable): (params, ctx) -> relative residual, a dict of
            residuals per candidate for dual-candidate checks, or a dict with
            'direct' and 'flipped' residuals for the branch-sensitive tier

    KwArgs:
        guards (callable): params -> list of (value, base) pairs kept away from base^Z
        threshold (float): pass threshold on the max residual
        tier (str): 'core' or 'branch-sensitive'
        candidates (tuple): labels of competing readings, None for single readings

    """

    def __init__(self, name, anchor, draw, residual, guards=None,
                 threshold=qmock.defaults.pointwise_threshold, tier='core', candidates=None):
        if tier not in tiers:
            raise ValueError('unknown tier {}'.format(tier))

        self.name = name
        self.anchor = anchor
        self.draw = draw
        self.residual = residual
        self.guards = guards if guards is not None else (lambda params: [])
        self.threshold = threshold
        self.tier = tier
        self.candidates = candidates

    def __repr__(self):
        return 'IdentityCheck({})'.format(self.name)


class Sampler(object):
    """ Parameter draws for one sample from a dedicated generator.
    """

    def __init__(self, rng, config):
        self.rng = rng
        self.q_min = qmock.config.get_param(config, 'q_min')
        self.q_max = qmock.config.get_param(config, 'q_max')
        self.band_min = qmock.config.get_param(config, 'band_min')
        self.band_max = qmock.config.get_param(config, 'band_max')

    def uniform(self, low, high):
        return float(self.rng.uniform(low, high))

    def uniforms(self, low, high, count):
        return [self.uniform(low, high) for _ in range(count)]

    def integer(self, low, high):
        return int(self.rng.integers(low, high + 1))

    def nome(self, low=None, high=None):
        low = self.q_min if low is None else low
        high = self.q_max if high is None else high
        return self.uniform(low, high)

    def band(self, q):
        return q ** self.uniform(self.band_min, self.band_max)

    def off_axis(self, q):
        return self.band(q) * complex(np.exp(1j * self.uniform(-np.pi, np.pi)))


class Report(object):
    """ Outcome of running one identity check.
    """

    def __init__(self, check, n_samples, seed, residuals, failures, wall_time,
                 resolved_base=None, candidates=None, branch_flips=None):
        residuals = np.asarray(residuals, dtype=float)

        self.name = check.name
        self.n_samples = n_samples
        self.seed = seed
        self.threshold = check.threshold
        self.tier = check.tier
        self.max_residual = float(np.max(residuals)) if residuals.shape[0] > 0 else 0.
        self.mean_residual = float(np.mean(residuals)) if residuals.shape[0] > 0 else 0.
        self.failures = failures
        self.wall_time = wall_time
        self.resolved_base = resolved_base
        self.candidates = candidates
        self.branch_flips = branch_flips

    @property
    def passed(self):
        return self.max_residual < self.threshold

    def to_dict(self, timing=False):
        data = collections.OrderedDict()
        data['name'] = self.name
        data['n_samples'] = self.n_samples
        data['seed'] = self.seed
        data['threshold'] = self.threshold
        data['tier'] = self.tier
        data['max_residual'] = _json_float(self.max_residual)
        data['mean_residual'] = _json_float(self.mean_residual)
        data['pass'] = self.passed
        data['failures'] = self.failures
        if self.candidates is not None:
            data['resolved_base'] = self.resolved_base
            data['candidates'] = collections.OrderedDict(
                (label, _json_float(value)) for label, value in self.candidates.items())
        if self.branch_flips is not None:
            data['branch_flips'] = self.branch_flips
        if timing:
            data['wall_time_ms'] = round(self.wall_time * 1000., 3)
        return data


def _json_float(value):
    if np.isfinite(value):
        return float(value)
    return None


def _json_params(params):
    converted = collections.OrderedDict()
    for name, value in params.items():
        converted[name] = _json_value(value)
    return converted


def _json_value(value):
    if isinstance(value, (list, tuple)):
        return [_json_value(a) for a in value]
    if isinstance(value, (complex, np.complexfloating)):
        if value.imag == 0:
            return float(value.real)
        return {'re': float(value.real), 'im': float(value.imag)}
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def relative_difference(lhs, rhs):
    lhs = complex(lhs)
    rhs = complex(rhs)
    scale = max(abs(lhs), abs(rhs))
    if scale == 0:
        return 0.
    return abs(lhs - rhs) / scale


def cancellation_residual(terms):
    """ |sum of terms| relative to the sum of their moduli.
    """
    terms = np.array([complex(a) for a in terms])
    scale = np.sum(np.abs(terms))
    if scale == 0:
        return 0.
    return float(np.abs(np.sum(terms)) / scale)


def _max_residual(op, functions, x):
    return max(qmock.qdiff.relative_residual(op, f, x) for f in functions)


#
# Parameter draws
#


def _draw_xy(s):
    q = s.nome()
    return collections.OrderedDict([('q', q), ('x', s.band(q)), ('y', s.band(q))])


def _draw_x(s):
    q = s.nome()
    return collections.OrderedDict([('q', q), ('x', s.band(q))])


def _draw_x_lam(s):
    q = s.nome()
    return collections.OrderedDict([('q', q), ('x', s.band(q)), ('lam', s.band(q))])


def _guard_x(params):
    return [(params['x'], params['q'])]


def _guard_xy(params):
    return [(params['x'], params['q']), (params['y'], params['q'])]


#
# Theta and q-shifted factorials
#


def _theta_shift_residual(params, ctx):
    x = params['x']
    q = ctx.q
    reference = theta(x, ctx)
    worst = 0.
    for n in range(-3, 4):
        shifted = x ** n * q ** (n * (n - 1) // 2) * theta(x * q ** n, ctx)
        worst = max(worst, relative_difference(shifted, reference))
    return worst


def _theta_modes_residual(params, ctx):
    x = params['x']
    return relative_difference(theta(x, ctx, mode='sum'), theta(x, ctx, mode='product'))


def _draw_qpoch_nu(s):
    params = _draw_x(s)
    params['nu'] = s.integer(0, 5)
    return params


def _qpoch_nu_residual(params, ctx):
    x = params['x']
    nu = params['nu']
    return relative_difference(qmock.qcore.qpoch_nu(x, nu, ctx), qmock.qcore.qpoch_finite(x, nu, ctx))


#
# Mu function
#


def _mu_symmetry_residual(params, ctx):
    x, y = params['x'], params['y']
    value = qmock.mock.mu(MuArgs(x, y), ctx)
    swapped = qmock.mock.mu(MuArgs(y, x), ctx)
    inverted = qmock.mock.mu(MuArgs(1. / x, 1. / y), ctx)
    return max(relative_difference(value, swapped), relative_difference(value, inverted))


def _mu_shift_residual(params, ctx):
    x, y = params['x'], params['y']
    return relative_difference(qmock.mock.mu(MuArgs(x * ctx.q, y), ctx), qmock.mock.mu_shift_rhs(MuArgs(x, y), ctx))


def _draw_xyz(s):
    params = _draw_xy(s)
    params['z'] = s.band(params['q'])
    return params


def _guard_xyz(params):
    q, x, y, z = params['q'], params['x'], params['y'], params['z']
    return [(x, q), (y, q), (x * z, q), (y * z, q)]


def _mu_translation_residual(params, ctx):
    x, y, z = params['x'], params['y'], params['z']
    lhs = qmock.mock.mu(MuArgs(x * z, y * z), ctx)
    return relative_difference(lhs, qmock.mock.mu_translation_rhs(x, y, z, ctx))


def _a1_mu_residual(params, ctx):
    x, y = params['x'], params['y']
    return relative_difference(qmock.mock.appell_A(1, x, y, ctx), qmock.mock.a1_mu_rhs(x, y, ctx))


#
# Universal mock theta functions
#


def _guard_kang_g2(params):
    q, x = params['q'], params['x']
    return [(x, q), (x ** 2, q ** 2)]


def _kang_g2_residual(params, ctx):
    x = params['x']
    return relative_difference(qmock.mock.g2_series(x, ctx), qmock.mock.kang_g2_rhs(x, ctx))


def _guard_kang_g3(params):
    q, x = params['q'], params['x']
    return [(x, q), (x ** 3, q ** 3), (x ** 3, q ** 2)]


def _kang_g3_residual(params, ctx):
    x = params['x']
    value = qmock.mock.g3_series(x, ctx)
    return collections.OrderedDict(
        (base, relative_difference(value, qmock.mock.kang_g3_rhs(x, ctx, mu_base=base)))
        for base in qmock.mock.g3_mu_bases)


def _lerch_residual(kind):
    series = {2: qmock.mock.g2_series, 3: qmock.mock.g3_series}[kind]
    lerch = {2: qmock.mock.g2_lerch, 3: qmock.mock.g3_lerch}[kind]

    def residual(params, ctx):
        x = params['x']
        return relative_difference(series(x, ctx), lerch(x, ctx))

    return residual


def _universal_qdiff_residual(kind):
    series = {2: qmock.mock.g2_series, 3: qmock.mock.g3_series}[kind]

    def residual(params, ctx):
        return qmock.qdiff.relative_residual(qmock.qdiff.op_gm1(kind, ctx), lambda x: series(x, ctx), params['x'])

    return residual


#
# Higher level Appell functions
#


def _guard_zwegers(m):
    def guards(params):
        q, x, y = params['q'], params['x'], params['y']
        pairs = [(x, q), (y, q), (x ** m, q ** m)]
        pairs.extend((y * q ** k, q ** m) for k in range(m))
        return pairs
    return guards


def _zwegers_residual(m):
    def residual(params, ctx):
        x, y = params['x'], params['y']
        lhs = qmock.mock.appell_A(m, x, (-1.) ** (m - 1) * y, ctx)
        return relative_difference(lhs, qmock.mock.zwegers_rhs(m, x, y, ctx))
    return residual


def _gm_mu_residual(m):
    def residual(params, ctx):
        x, y = params['x'], params['y']
        return relative_difference(qmock.mock.appell_G(m, x, y, ctx), qmock.mock.gm_mu_rhs(m, x, y, ctx))
    return residual


def _gm_pseudoperiod_residual(m):
    def residual(params, ctx):
        return cancellation_residual(qmock.mock.gm_shift_terms(m, params['x'], params['y'], ctx))
    return residual


def _thm12_residual(m):
    def residual(params, ctx):
        y = params['y']
        op = qmock.qdiff.op_appell(m, y, ctx)
        return qmock.qdiff.relative_residual(op, lambda x: qmock.mock.appell_G(m, x, y, ctx), params['x'])
    return residual


#
# Linear q-difference equations
#


def _draw_thm11(m):
    def draw(s):
        q = s.nome()
        params = collections.OrderedDict([('q', q)])
        params['alpha'] = s.uniform(0.1, 1.5)
        params['alphas'] = s.uniforms(0.1, 1.5, m - 1)
        params['lam'] = s.band(q)
        params['x'] = s.band(q)
        return params
    return draw


def _guard_thm11(params):
    q, x, lam, alpha = params['q'], params['x'], params['lam'], params['alpha']
    pairs = [(x * q ** alpha, q), (x * lam * q ** alpha, q)]
    pairs.extend((lam * q ** alpha_j, q) for alpha_j in params['alphas'])
    return pairs


def _thm11_residual(params, ctx):
    op = qmock.qdiff.op_linear_eq(params['alpha'], params['alphas'], ctx)
    residuals = collections.OrderedDict()
    for exponent in qmock.mock.linear_eq_exponents:
        solutions = qmock.mock.linear_eq_solutions(params['alpha'], params['alphas'], params['lam'], ctx, exponent=exponent)
        residuals[exponent] = _max_residual(op, solutions, params['x'])
    return residuals


def _guard_power(m):
    def guards(params):
        q, x = params['q'], params['x']
        return [(x, q), (x ** m, q ** m)]
    return guards


def _guard_gm1(m):
    def guards(params):
        q, x, lam = params['q'], params['x'], params['lam']
        p = q ** m
        pairs = [(x, q), (x ** m, p), (x ** m * lam, p), (lam * x ** (-m), p)]
        pairs.extend((lam * q ** j, p) for j in range(m))
        return pairs
    return guards


def _corA_residual(m):
    def residual(params, ctx):
        return collections.OrderedDict(
            (base, cancellation_residual(qmock.mock.gm1_shift_terms(m, params['x'], ctx, theta_base=base)))
            for base in ('q^m', 'q'))
    return residual


def _corB_residual(m):
    def residual(params, ctx):
        op = qmock.qdiff.op_gm1(m, ctx)
        functions = [lambda x: qmock.mock.appell_G(m, x, 1., ctx)]
        functions.extend(qmock.mock.gm1_solutions(m, params['lam'], ctx))
        return _max_residual(op, functions, params['x'])
    return residual


def _corC_residual(m):
    def residual(params, ctx):
        x = params['x']
        return relative_difference(qmock.mock.appell_G(m, x, 1., ctx), qmock.mock.gm1_closed_form(m, x, ctx))
    return residual


def _corD_residual(m):
    def residual(params, ctx):
        x = params['x']
        return relative_difference(qmock.mock.appell_G(m, x, 1., ctx), qmock.mock.gm1_lambda_form(m, x, params['lam'], ctx))
    return residual


def _corE_residual(m):
    def residual(params, ctx):
        q = ctx.q
        op = qmock.qdiff.op_gm1(m, ctx)
        functions = [lambda x: qmock.mock.appell_G(m, x, 1., ctx)]
        functions.extend(qmock.mock.gm1_solutions(m, params['lam'], ctx))
        reflected = [lambda x, f=f: f(q / x) for f in functions]
        return _max_residual(op, reflected, params['x'])
    return residual


def _guard_hermite_weber(params):
    q, x, lam = params['q'], params['x'], params['lam']
    return [(x * q ** 0.5, q), (x * lam * q ** 0.5, q), (lam * q ** 0.5, q)]


def _hermite_weber_residual(params, ctx):
    q = ctx.q
    op = qmock.qdiff.op_hermite_weber(q, ctx)
    structural = qmock.qdiff.operator_distance(op, qmock.qdiff.op_linear_eq(0.5, [0.5], ctx))
    solutions = qmock.mock.linear_eq_solutions(0.5, [0.5], params['lam'], ctx)
    return max(structural, _max_residual(op, solutions, params['x']))


def _draw_alphas(m, low=0.1, high=1.5):
    def draw(s):
        q = s.nome()
        return collections.OrderedDict([('q', q), ('alphas', s.uniforms(low, high, m - 1))])
    return draw


def _diver_specialization_residual(params, ctx):
    alphas = params['alphas']
    m = len(alphas) + 1
    product = qmock.qdiff.compose(
        qmock.qdiff.op_from_roots(alphas, ctx),
        qmock.qdiff.QDiffOperator({1: 1., 0: qmock.qdiff.LaurentPoly.monomial(1)}, ctx.q))
    specialized = qmock.qdiff.op_diver(alphas, [alpha - 1. for alpha in alphas], ctx).rescale(ctx.q ** (m - 1))
    return qmock.qdiff.operator_distance(product, specialized)


def _draw_np(s):
    q = s.nome()
    return collections.OrderedDict([('q', q), ('alpha', s.uniform(0.1, 1.5)), ('beta', s.uniform(0.1, 1.5))])


expected_diagrams = {
    'diver': (
        frozenset([(0, 2), (0, 1), (1, 1), (1, 0)]),
        [(0, 1), (1, 0)],
        [-1],
    ),
    'gm1': (
        frozenset([(0, 2), (0, 1), (2, 1), (2, 0)]),
        [(0, 1), (2, 0)],
        [fractions.Fraction(-1, 2)],
    ),
    'identity': (
        frozenset([(0, 0)]),
        [(0, 0)],
        [],
    ),
}


def _np_diagram_residual(params, ctx):
    operators = {
        'diver': qmock.qdiff.op_diver([params['alpha']], [params['beta']], ctx),
        'gm1': qmock.qdiff.op_gm1(2, ctx),
        'identity': qmock.qdiff.identity_operator(ctx.q),
    }
    for key, op in operators.items():
        diagram = qmock.qdiff.newton_puiseux(op)
        if tuple(diagram) != expected_diagrams[key]:
            logging.warning('unexpected Newton-Puiseux diagram for {}: {}'.format(key, diagram))
            return 1.
    return 0.


#
# Transforms and the divergent equation
#


def _draw_series(s):
    q = s.nome()
    params = collections.OrderedDict([('q', q)])
    params['coeffs'] = [complex(re, im) for re, im in zip(s.uniforms(-1., 1., 11), s.uniforms(-1., 1., 11))]
    return params


def _bl_commutation_residual(params, ctx):
    series = qmock.series.PuiseuxSeries(params['coeffs'])
    return max(
        qmock.transforms.commutation_check(m, n, series, ctx)
        for m, n in itertools.product(range(4), range(4)))


def _draw_monomial(s):
    params = _draw_x(s)
    params['k'] = s.integer(0, 8)
    return params


def _laplace_monomial_residual(params, ctx):
    x, k = params['x'], params['k']
    radius = abs(x) * abs(ctx.q) ** (k - 0.5)
    value = qmock.transforms.laplace_minus(lambda xi: xi ** k, x, ctx, radius=radius)
    return relative_difference(value, x ** k * ctx.q ** (k * (k - 1) // 2))


def _draw_laplace_commutation(s):
    params = _draw_x_lam(s)
    params['m'] = s.integer(0, 2)
    params['n'] = s.integer(0, 2)
    return params


def _laplace_commutation_residual(params, ctx):
    x, m = params['x'], params['m']
    radius = min(abs(x) * abs(ctx.q) ** (m - 0.5), 0.5)

    def f(xi):
        return 1. / (1. + np.asarray(xi, dtype=complex))

    return qmock.transforms.laplace_commutation_residual(m, params['n'], f, x, params['lam'], ctx, radius=radius)


def _draw_resummation(s):
    q = s.nome()
    params = collections.OrderedDict([('q', q), ('alpha', s.uniform(0.1, 1.5))])
    params['x'] = s.band(q)
    params['lam'] = s.band(q)
    return params


def _guard_resummation(params):
    q, x, lam, alpha = params['q'], params['x'], params['lam'], params['alpha']
    return [(x * lam, q), (lam * q ** alpha, q)]


def _resummation_residual(params, ctx):
    alpha, x, lam = params['alpha'], params['x'], params['lam']
    value, discrepancy = qmock.transforms.resummed_mu(alpha, x, lam, ctx)
    return collections.OrderedDict(
        (prefactor, max(discrepancy, relative_difference(value, qmock.transforms.resummed_mu_rhs(alpha, x, lam, ctx, prefactor=prefactor))))
        for prefactor in qmock.transforms.resummation_prefactors)


def _draw_diver(m, q_low, q_high, low, high):
    def draw(s):
        q = s.nome(q_low, q_high)
        params = collections.OrderedDict([('q', q)])
        params['alphas'] = s.uniforms(low, high, m - 1)
        params['betas'] = s.uniforms(low, high, m - 1)
        params['x'] = s.band(q)
        return params
    return draw


def _guard_resonance(params):
    q = params['q']
    pairs = []
    for name in ('alphas', 'betas'):
        for a, b in itertools.permutations(params[name], 2):
            pairs.append((q ** (a - b), q))
    return pairs


def _lemma31_formal_residual(order):
    def residual(params, ctx):
        alphas, betas = params['alphas'], params['betas']
        op = qmock.qdiff.op_diver(alphas, betas, ctx)
        worst = 0.
        for point in qmock.series.PuiseuxSeries.points:
            for j in range(1, len(alphas) + 1):
                series = qmock.transforms.formal_solution(point, j, alphas, betas, order, ctx)
                worst = max(worst, qmock.transforms.annihilation_residual(op, series))
        return worst
    return residual


def _thm11_formal_residual(order):
    def residual(params, ctx):
        q = ctx.q
        alphas = params['alphas']
        op = qmock.qdiff.compose(
            qmock.qdiff.op_from_roots(alphas, ctx),
            qmock.qdiff.QDiffOperator({1: 1., 0: qmock.qdiff.LaurentPoly.monomial(1)}, q))
        worst = 0.
        for alpha in alphas:
            coeffs = qmock.qcore.qhyper_coeffs([q, 0.], [], order, ctx, scale=qpower(q, -alpha - 1.)).coeffs
            series = qmock.series.PuiseuxSeries(coeffs, exponent=alpha)
            worst = max(worst, qmock.transforms.annihilation_residual(op, series))
        return worst
    return residual


def _guard_integral_zero(params):
    q = params['q']
    ratio = np.prod([q ** (b - a) for a, b in zip(params['alphas'], params['betas'])])
    return [(ratio * params['x'], q)]


def _lemma31_integral_residual(params, ctx):
    alphas, betas = params['alphas'], params['betas']
    op = qmock.qdiff.op_diver(alphas, betas, ctx)
    solution = lambda x: qmock.transforms.integral_solution('zero', alphas, betas, x, ctx)
    return qmock.qdiff.relative_residual(op, solution, params['x'])


def _lemma31_integral_inf_residual(params, ctx):
    alphas, betas = params['alphas'], params['betas']
    op = qmock.qdiff.op_diver(alphas, betas, ctx)
    residuals = collections.OrderedDict()
    for integrand in qmock.transforms.infinity_integrands:
        solution = lambda x, integrand=integrand: qmock.transforms.integral_solution(
            'infinity', alphas, betas, x, ctx, integrand=integrand)
        residuals[integrand] = qmock.qdiff.relative_residual(op, solution, params['x'])
    return residuals


def _draw_degenerate(m):
    def draw(s):
        q = s.nome(0.2, 0.5)
        params = collections.OrderedDict([('q', q)])
        params['alphas'] = s.uniforms(0.1, 0.6, m - 1)
        params['x'] = s.band(q)
        return params
    return draw


def _lemma31_degenerate_residual(params, ctx):
    alphas = params['alphas']
    m = len(alphas) + 1
    x = params['x']
    value = qmock.transforms.integral_solution('zero', alphas, [alpha - 1. for alpha in alphas], x, ctx)
    return relative_difference(value, 1. / theta(-x * ctx.q ** (1 - m), ctx))


#
# Branch-sensitive tier
#


def _draw_off_axis(s):
    q = s.nome()
    return collections.OrderedDict([('q', q), ('x', s.off_axis(q)), ('y', s.off_axis(q))])


def _mu_inversion_offaxis_residual(params, ctx):
    x, y = params['x'], params['y']
    value = qmock.mock.mu(MuArgs(x, y), ctx)
    inverted = qmock.mock.mu(MuArgs(1. / x, 1. / y), ctx)
    return {'direct': relative_difference(value, inverted), 'flipped': relative_difference(value, -inverted)}


def _a1_mu_offaxis_residual(params, ctx):
    x, y = params['x'], params['y']
    value = qmock.mock.appell_A(1, x, y, ctx)
    rhs = qmock.mock.a1_mu_rhs(x, y, ctx)
    return {'direct': relative_difference(value, rhs), 'flipped': relative_difference(value, -rhs)}


def _build_registry():
    pointwise = qmock.defaults.pointwise_threshold
    operator = qmock.defaults.operator_threshold
    order = qmock.defaults.formal_order

    checks = [
        IdentityCheck('theta_shift', 'x^n q^{n(n-1)/2} theta(x q^n) = theta(x), n = -3..3',
            _draw_x, _theta_shift_residual, threshold=qmock.defaults.theta_threshold),
        IdentityCheck('theta_modes', 'sum_n x^n q^{n(n-1)/2} = (q, -x, -q/x; q)_inf',
            _draw_x, _theta_modes_residual, threshold=qmock.defaults.theta_threshold),
        IdentityCheck('qpoch_nu_integer', '(x)_inf / (q^nu x)_inf = (x)_nu for integer nu',
            _draw_qpoch_nu, _qpoch_nu_residual, threshold=qmock.defaults.theta_threshold),
        IdentityCheck('mu_symmetry', 'mu(x, y) = mu(y, x) = mu(1/x, 1/y)',
            _draw_xy, _mu_symmetry_residual, guards=_guard_xy),
        IdentityCheck('mu_shift', 'mu(xq, y) = -(x/y) q^{1/2} mu(x, y) - i sqrt(x/y) q^{3/8}',
            _draw_xy, _mu_shift_residual, guards=_guard_xy),
        IdentityCheck('mu_translation',
            'i q^{1/8} mu(xz, yz) = i q^{1/8} mu(x, y) + sqrt(xy) (q)^3 theta(-z) theta(-xyz) / (theta(-x) theta(-y) theta(-xz) theta(-yz))',
            _draw_xyz, _mu_translation_residual, guards=_guard_xyz),
        IdentityCheck('a1_mu', 'A_1(x, y) = -i q^{1/8} theta(-y) y^{-1/2} mu(x, y)',
            _draw_xy, _a1_mu_residual, guards=_guard_xy),
        IdentityCheck('kang_g2', 'g_2(x) = -i q^{-1/4} mu(x^2, q; q^2) + (q^2;q^2)^4 / ((q;q)^2 theta_{q^2}(-x^2))',
            _draw_x, _kang_g2_residual, guards=_guard_kang_g2),
        IdentityCheck('kang_g3',
            'g_3(x) = (q^3;q^3)^3 / ((q;q) theta_{q^3}(-x^3)) - i x^{-1/2} q^{-1/8} mu(x^3, q; B) - i x^{1/2} q^{-5/8} mu(x^3, q^2; q^3)',
            _draw_x, _kang_g3_residual, guards=_guard_kang_g3, candidates=tuple(qmock.mock.g3_mu_bases)),
    ]

    for m in (1, 2, 3):
        checks.append(IdentityCheck('zwegers_Z_{}'.format(m),
            'A_m(x, (-1)^{m-1} y) = sum_k -i q^{m/8} x^k theta_{q^m}(-y q^k) (y q^k)^{-1/2} mu(x^m, y q^k; q^m)',
            _draw_xy, _zwegers_residual(m), guards=_guard_zwegers(m)))

    for m in (1, 2, 3):
        checks.append(IdentityCheck('gm_mu_{}'.format(m),
            'G_m(x, y) = -i q^{m/8} sum_k theta_{q^m}(-y q^k) (y q^k)^{-1/2} x^{k-m/2} mu(x^m, y q^k; q^m)',
            _draw_xy, _gm_mu_residual(m), guards=_guard_zwegers(m)))

    for m in (1, 2, 3, 4):
        checks.append(IdentityCheck('gm_pseudoperiod_{}'.format(m),
            'y G_m(xq, y) + x^m G_m(x, y) + sum_k x^k theta_{q^m}(-y q^k) = 0',
            _draw_xy, _gm_pseudoperiod_residual(m), guards=_guard_xy))

    for m in (2, 3, 4):
        checks.append(IdentityCheck('thm11_{}'.format(m),
            'prod_k (T - q^alpha_k) (T + x q^alpha) annihilates 1/theta(-x q^alpha) and x^e mu(x lambda q^alpha, lambda q^alpha_j)',
            _draw_thm11(m), _thm11_residual, guards=_guard_thm11, threshold=operator,
            candidates=qmock.mock.linear_eq_exponents))

    for m in (1, 2, 3):
        checks.append(IdentityCheck('thm12_{}'.format(m),
            'prod_{k=1..m} (T - q^{k-1}) (T + x^m / y) annihilates G_m(x, y)',
            _draw_xy, _thm12_residual(m), guards=_guard_x, threshold=operator))

    for m in (2, 3):
        checks.append(IdentityCheck('corA_{}'.format(m),
            'G_m(xq, 1) = -x^m G_m(x, 1) - sum_{k=1..m-1} x^k theta_B(-q^k)',
            _draw_x, _corA_residual(m), guards=_guard_x, candidates=('q^m', 'q')))
        checks.append(IdentityCheck('corB_{}'.format(m),
            'prod_{k=1..m-1} (T - q^k) (T + x^m) annihilates G_m(x, 1), 1/theta_{q^m}(-x^m) and x^{j-m/2} mu(x^m lambda, lambda q^j; q^m)',
            _draw_x_lam, _corB_residual(m), guards=_guard_gm1(m), threshold=operator))
        checks.append(IdentityCheck('corC_{}'.format(m),
            'G_m(x, 1) = (q^m;q^m)^3 / theta_{q^m}(-x^m) - sum_j i theta_{q^m}(-q^j) x^{j-m/2} q^{m/8-j/2} mu(x^m, q^j; q^m)',
            _draw_x, _corC_residual(m), guards=_guard_power(m)))
        checks.append(IdentityCheck('corD_{}'.format(m),
            'G_m(x, 1) as mu functions of x^m lambda plus a lambda dependent theta quotient sum',
            _draw_x_lam, _corD_residual(m), guards=_guard_gm1(m)))
        checks.append(IdentityCheck('corE_{}'.format(m),
            'if f solves the equation of G_m(x, 1) then so does f(q/x)',
            _draw_x_lam, _corE_residual(m), guards=_guard_gm1(m), threshold=operator))

    checks.extend([
        IdentityCheck('lerch_g2', 'g_2(x) = (-q)_inf / (q)_inf G_2(x, 1)',
            _draw_x, _lerch_residual(2), guards=_guard_x),
        IdentityCheck('lerch_g3', 'g_3(x) = G_3(x, 1) / (q)_inf',
            _draw_x, _lerch_residual(3), guards=_guard_x),
        IdentityCheck('g2_qdiff', '(T - q) (T + x^2) annihilates g_2',
            _draw_x, _universal_qdiff_residual(2), guards=_guard_x, threshold=operator),
        IdentityCheck('g3_qdiff', '(T - q) (T - q^2) (T + x^3) annihilates g_3',
            _draw_x, _universal_qdiff_residual(3), guards=_guard_x, threshold=operator),
        IdentityCheck('borel_laplace_mu',
            'x^alpha L+ B+ 2phi0(q, 0; -; q; x q^{-alpha-1}) (x, -1/lambda) = i q^{1/8} C x^{alpha-1/2} mu(x lambda, lambda q^alpha)',
            _draw_resummation, _resummation_residual, guards=_guard_resummation,
            candidates=qmock.transforms.resummation_prefactors),
        IdentityCheck('bl_commutation', 'B(x^m T^n f) = q^{+-m(m-1)/2} xi^m T^{n+-m} B(f), m, n = 0..3',
            _draw_series, _bl_commutation_residual, threshold=qmock.defaults.commutation_threshold),
        IdentityCheck('laplace_minus_monomial', 'L-(xi^k)(x) = x^k q^{k(k-1)/2}',
            _draw_monomial, _laplace_monomial_residual, threshold=qmock.defaults.theta_threshold),
        IdentityCheck('laplace_commutation', 'L(xi^m T^n f) = q^{-+m(m-1)/2} x^m T^{n-+m} L(f)',
            _draw_laplace_commutation, _laplace_commutation_residual),
    ])

    for m in (2, 3):
        checks.append(IdentityCheck('diver_specialization_{}'.format(m),
            'prod_k (T - q^alpha_k) (T + x) = T prod_k (T - q^alpha_k) + x prod_k (qT - q^alpha_k)',
            _draw_alphas(m), _diver_specialization_residual, threshold=qmock.defaults.commutation_threshold))

    checks.append(IdentityCheck('hermite_weber', 'T^2 - (1 - xq) sqrt(q) T - xq = (T - q^{1/2}) (T + x q^{1/2})',
        _draw_x_lam, _hermite_weber_residual, guards=_guard_hermite_weber, threshold=operator))

    for m in (2, 3):
        checks.append(IdentityCheck('lemma31_formal_{}'.format(m),
            'x^alpha_j m-phi-(m-2) about zero and x^beta_j m-phi-(m-2) about infinity are formal solutions',
            _draw_diver(m, 0.35, 0.5, 0.1, 1.2), _lemma31_formal_residual(order), guards=_guard_resonance,
            threshold=qmock.defaults.formal_threshold))
        checks.append(IdentityCheck('thm11_formal_{}'.format(m),
            'x^alpha_j 2phi0(q, 0; -; q; x q^{-alpha_j-1}) is a formal solution of prod_k (T - q^alpha_k) (T + x)',
            _draw_diver(m, 0.35, 0.5, 0.1, 1.2), _thm11_formal_residual(order),
            threshold=qmock.defaults.formal_threshold))

    for m in (2, 3):
        checks.append(IdentityCheck('lemma31_integral_{}'.format(m),
            'theta(-b x / a)^{-1} L-(prod_k (-b xi q^{1-alpha_k} / a)_inf / (-b xi q^{-beta_k} / a)_inf) is a solution',
            _draw_diver(m, 0.2, 0.5, 0.1, 0.6), _lemma31_integral_residual, guards=_guard_integral_zero,
            threshold=operator))
        checks.append(IdentityCheck('lemma31_integral_inf_{}'.format(m),
            'theta(-x q^{-m})^{-1} L-(h) with h built from prod_k (-q^{m+beta_k+1} / xi)_inf / (-q^{m+alpha_k} / xi)_inf is a solution',
            _draw_diver(m, 0.2, 0.5, 0.1, 0.6), _lemma31_integral_inf_residual, guards=_guard_x,
            threshold=operator, candidates=qmock.transforms.infinity_integrands))
        checks.append(IdentityCheck('lemma31_degenerate_{}'.format(m),
            'with beta_k = alpha_k - 1 the integral solution about zero is 1/theta(-x q^{1-m})',
            _draw_degenerate(m), _lemma31_degenerate_residual, guards=_guard_x, threshold=1e-10))

    checks.extend([
        IdentityCheck('np_diagram', 'lower Newton-Puiseux boundaries of T(T - q^alpha) + x(T - q^beta), (T - q)(T + x^2) and 1',
            _draw_np, _np_diagram_residual, threshold=0.5),
        IdentityCheck('mu_inversion_offaxis', 'mu(x, y) = mu(1/x, 1/y) off the positive axis',
            _draw_off_axis, _mu_inversion_offaxis_residual, guards=_guard_xy, tier='branch-sensitive'),
        IdentityCheck('a1_mu_offaxis', 'A_1(x, y) = -i q^{1/8} theta(-y) y^{-1/2} mu(x, y) off the positive axis',
            _draw_off_axis, _a1_mu_offaxis_residual, guards=_guard_xy, tier='branch-sensitive'),
    ])

    return checks


_registry = None


def registry():
    """ All identity checks in a fixed order.
    """
    global _registry
    if _registry is None:
        _registry = _build_registry()
        names = [check.name for check in _registry]
        assert len(names) == len(set(names))
    return list(_registry)


def get_check(name):
    for check in registry():
        if check.name == name:
            return check
    raise UnknownCheckError(name)


def sample_seed(seed, name, idx):
    return [int(seed), zlib.crc32(name.encode('utf-8')), int(idx)]


def draw_sample(check, idx, seed, config=None):
    """ Draw the guarded parameters of one sample.

    The generator is seeded from (seed, name, idx), so samples do not
    depend on the order in which they are drawn.
    """
    if config is None:
        config = dict()

    rng = np.random.default_rng(sample_seed(seed, check.name, idx))
    sampler = Sampler(rng, config)

    sample_guard = qmock.config.get_param(config, 'sample_guard')
    max_redraws = qmock.config.get_param(config, 'max_redraws')

    for _ in range(max_redraws):
        params = check.draw(sampler)
        distances = [lattice_distance(value, base) for value, base in check.guards(params)]
        if all(np.all(np.asarray(d) >= sample_guard) for d in distances):
            return params

    raise qmock.qcore.DomainError('sampler failed to satisfy guards', check=check.name, index=idx)


def _evaluate(check, params, ctx):
    sample_ctx = ctx.replace(q=params['q'])

    try:
        return check.residual(params, sample_ctx), None

    except (qmock.qcore.QSeriesError, ArithmeticError, ValueError) as e:
        error = '{}: {}'.format(type(e).__name__, str(e).split('\n')[0])
        logging.warning('check {} raised {}'.format(check.name, error))

        if check.candidates is not None:
            return collections.OrderedDict((label, np.inf) for label in check.candidates), error
        if check.tier == 'branch-sensitive':
            return {'direct': np.inf, 'flipped': np.inf}, error
        return np.inf, error


def _resolve(check, values):
    table = collections.OrderedDict()
    for label in check.candidates:
        table[label] = np.array([value[label] for value in values], dtype=float)

    maxima = collections.OrderedDict((label, float(np.max(r)) if r.shape[0] > 0 else 0.) for label, r in table.items())

    passing = [label for label in check.candidates if maxima[label] < check.threshold]
    if len(passing) > 0:
        resolved = min(passing, key=lambda label: maxima[label])
        logging.info('check {} resolved to {}'.format(check.name, resolved))
        return table[resolved], resolved, maxima

    best = min(check.candidates, key=lambda label: maxima[label])
    logging.warning('check {} has no passing candidate'.format(check.name))
    return table[best], None, maxima


def run_check(name, n_samples, ctx, config=None):
    """ Run one identity check.

    Args:
        name (str): registry name
        n_samples (int): number of samples
        ctx (QContext): evaluation context, the nome is replaced per sample

    KwArgs:
        config (dict): sampling configuration overrides

    Returns:
        Report: aggregated outcome

    """

    check = get_check(name)

    if int(n_samples) < 1:
        raise ValueError('n_samples must be positive')

    logging.info('running check {} on {} samples'.format(name, n_samples))

    start = time.time()

    samples = []
    values = []
    errors = []

    for idx in range(int(n_samples)):
        params = draw_sample(check, idx, ctx.seed, config=config)
        value, error = _evaluate(check, params, ctx)
        samples.append(params)
        values.append(value)
        errors.append(error)

    resolved = None
    maxima = None
    flips = None

    if check.candidates is not None:
        residuals, resolved, maxima = _resolve(check, values)

    elif check.tier == 'branch-sensitive':
        residuals = []
        flips = 0
        for value in values:
            if value['direct'] >= check.threshold and value['flipped'] < check.threshold:
                flips += 1
                residuals.append(value['flipped'])
            else:
                residuals.append(value['direct'])
        residuals = np.array(residuals, dtype=float)

    else:
        residuals = np.array(values, dtype=float)

    failures = []
    for params, residual, error in zip(samples, residuals, errors):
        if not residual < check.threshold:
            failure = collections.OrderedDict([('params', _json_params(params)), ('residual', _json_float(residual))])
            if error is not None:
                failure['error'] = error
            failures.append(failure)
            logging.warning('check {} failed at {} with residual {}'.format(name, dict(params), residual))

    return Report(check, int(n_samples), ctx.seed, residuals, failures, time.time() - start,
        resolved_base=resolved, candidates=maxima, branch_flips=flips)


def run_all(n_samples, ctx, config=None):
    """ Run every registered check in registry order.
    """
    reports = []
    for check in registry():
        reports.append(run_check(check.name, n_samples, ctx, config=config))
    return reports


def core_passed(reports):
    return all(report.passed for report in reports if report.tier == 'core')
