import collections

import qmock.config
import qmock.mock
import qmock.qcore
import qmock.series
import qmock.transforms
import qmock.ui.output
import qmock.ui.params
from qmock.ui.params import UsageError, parse_complex, parse_nome, parse_complex_list, parse_real_list


def _theta(p, ctx):
    return qmock.qcore.theta(p['x'], ctx, mode=p['mode'])


def _qpoch(p, ctx):
    if p['nu'] is not None:
        return qmock.qcore.qpoch_nu(p['x'], p['nu'], ctx)
    if p['n'] is not None:
        return qmock.qcore.qpoch_finite(p['x'], p['n'], ctx)
    return qmock.qcore.qpoch_inf(p['x'], ctx)


def _qhyper(p, ctx):
    return qmock.qcore.qhyper(p['numerators'], p['denominators'], p['z'], ctx)


def _mu(p, ctx):
    return qmock.mock.mu(qmock.mock.MuArgs(p['x'], p['y'], p['base']), ctx)


def _appell(p, ctx):
    return qmock.mock.appell_A(p['m'], p['x'], p['y'], ctx)


def _appell_G(p, ctx):
    return qmock.mock.appell_G(p['m'], p['x'], p['y'], ctx)


def _laplace_minus_demo(p, ctx):
    radius = 0.5 if p['radius'] is None else p['radius'].real
    return qmock.transforms.laplace_minus(lambda xi: 1. / (1. - xi), p['x'], ctx, radius=radius)


def _integral_solution(p, ctx):
    return qmock.transforms.integral_solution(p['point'], p['alphas'], p['betas'], p['x'], ctx, integrand=p['integrand'])


Evaluator = collections.namedtuple('Evaluator', ['func', 'required'])


evaluators = collections.OrderedDict([
    ('theta', Evaluator(_theta, ('x',))),
    ('qpoch', Evaluator(_qpoch, ('x',))),
    ('qhyper', Evaluator(_qhyper, ('z',))),
    ('mu', Evaluator(_mu, ('x', 'y'))),
    ('appell', Evaluator(_appell, ('m', 'x', 'y'))),
    ('G', Evaluator(_appell_G, ('m', 'x', 'y'))),
    ('g2', Evaluator(lambda p, ctx: qmock.mock.g2_series(p['x'], ctx), ('x',))),
    ('g3', Evaluator(lambda p, ctx: qmock.mock.g3_series(p['x'], ctx), ('x',))),
    ('g2_lerch', Evaluator(lambda p, ctx: qmock.mock.g2_lerch(p['x'], ctx), ('x',))),
    ('g3_lerch', Evaluator(lambda p, ctx: qmock.mock.g3_lerch(p['x'], ctx), ('x',))),
    ('laplace_minus_demo', Evaluator(_laplace_minus_demo, ('x',))),
    ('integral_solution', Evaluator(_integral_solution, ('x', 'alphas', 'betas'))),
])


# Parameters that a sweep may vary
real_params = ('q', 'x', 'y', 'z', 'lam', 'nu', 'radius', 'base')


def evaluate(function, params, config):
    """ Evaluate a named function.

    Args:
        function (str): name in evaluators
        params (dict): parsed parameters, None for parameters not given
        config (dict): configuration overrides

    Returns:
        complex: function value

    """

    if function not in evaluators:
        raise UsageError('unknown function {}'.format(function))

    evaluator = evaluators[function]

    missing = [name for name in ('q',) + evaluator.required if params.get(name) is None]
    if len(missing) > 0:
        raise UsageError('{} requires parameters {}'.format(function, ', '.join(missing)))

    ctx = qmock.config.create_context(config, params['q'])

    return complex(evaluator.func(params, ctx))


def series_coefficients(params, config):
    """ Coefficients of the q-hypergeometric series in powers of its argument.
    """
    ctx = qmock.config.create_context(config, params['q'])
    series = qmock.qcore.qhyper_coeffs(params['numerators'], params['denominators'], params['order'], ctx)
    return series.coeffs


def run(**args):
    config = qmock.ui.params.create_config(args)
    output_format = qmock.config.get_param(config, 'output_format')

    function = args.pop('function')
    output = args.pop('output')

    value = evaluate(function, args, config)

    rows = [collections.OrderedDict([('function', function), ('term', 'value')] + list(qmock.ui.output.complex_row(value).items()))]

    if function == 'qhyper' and args['order'] is not None:
        for n, coeff in enumerate(series_coefficients(args, config)):
            rows.append(collections.OrderedDict([('function', function), ('term', n)] + list(qmock.ui.output.complex_row(coeff).items())))

    qmock.ui.output.write_records(rows, output_format, filename=output)

    return 0


def add_function_arguments(argparser):
    argparser.add_argument('--q', type=parse_nome,
        help='Nome, 0 < |q| < 1')

    for name in ('x', 'y', 'z', 'base'):
        argparser.add_argument('--' + name, type=parse_complex,
            help='Complex argument {}'.format(name))

    argparser.add_argument('--lam', '--lambda', dest='lam', type=parse_complex,
        help='Free parameter lambda')

    argparser.add_argument('--m', type=int,
        help='Level of Appell functions')

    argparser.add_argument('--n', type=int,
        help='Order of a finite q-shifted factorial')

    argparser.add_argument('--nu', type=parse_complex,
        help='Complex order of a q-shifted factorial (x)_inf / (q^nu x)_inf')

    argparser.add_argument('--numerators', type=parse_complex_list, default=[],
        help='Comma separated numerator parameters of qhyper')

    argparser.add_argument('--denominators', type=parse_complex_list, default=[],
        help='Comma separated denominator parameters of qhyper')

    argparser.add_argument('--order', type=int,
        help='Also print series coefficients up to this order (qhyper)')

    argparser.add_argument('--alphas', type=parse_real_list,
        help='Comma separated exponents alpha_1..alpha_{m-1}')

    argparser.add_argument('--betas', type=parse_real_list,
        help='Comma separated exponents beta_1..beta_{m-1}')

    argparser.add_argument('--mode', choices=('product', 'sum'), default='product',
        help='Theta evaluation mode')

    argparser.add_argument('--point', choices=qmock.series.PuiseuxSeries.points, default='zero',
        help='Expansion point of integral solutions')

    argparser.add_argument('--integrand', choices=qmock.transforms.infinity_integrands, default='xi*g',
        help='Integrand of integral solutions about infinity')

    argparser.add_argument('--radius', type=parse_complex,
        help='Contour radius of laplace_minus_demo')


def add_arguments(argparser):
    argparser.add_argument('function', choices=list(evaluators.keys()),
        help='Function to evaluate')

    add_function_arguments(argparser)
    qmock.ui.params.add_context_arguments(argparser)

    argparser.set_defaults(func=run)
