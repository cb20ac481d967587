import collections
import logging

import numpy as np

import qmock.config
import qmock.qcore
import qmock.ui.evaluate
import qmock.ui.output
import qmock.ui.params
from qmock.ui.params import UsageError


def sweep_table(function, vary, start, stop, steps, params, config):
    """ Evaluate a function on an equispaced grid of one real parameter.

    Args:
        function (str): function name
        vary (str): parameter to vary
        start (float): first grid value
        stop (float): last grid value
        steps (int): number of grid values, 1 gives a single row at start
        params (dict): fixed parameters
        config (dict): configuration overrides

    Returns:
        list: rows with the varied value, real and imaginary part and an error
            message, empty unless the evaluation failed

    """

    if vary not in qmock.ui.evaluate.real_params:
        raise UsageError('cannot vary {}, choose one of {}'.format(vary, ', '.join(qmock.ui.evaluate.real_params)))

    if steps < 1:
        raise UsageError('steps must be positive')

    if not (np.isfinite(start) and np.isfinite(stop)):
        raise UsageError('sweep range must be finite')

    rows = []

    for value in np.linspace(start, stop, steps):
        row_params = dict(params)
        row_params[vary] = complex(value)

        row = collections.OrderedDict([(vary, float(value)), ('re', np.nan), ('im', np.nan), ('error', '')])

        try:
            result = qmock.ui.evaluate.evaluate(function, row_params, config)
            row['re'] = result.real
            row['im'] = result.imag

        except qmock.qcore.QSeriesError as e:
            row['error'] = '{}: {}'.format(type(e).__name__, str(e).split('\n')[0])
            logging.warning('sweep row {}={} failed: {}'.format(vary, value, row['error']))

        rows.append(row)

    return rows


def run(**args):
    config = qmock.ui.params.create_config(args)
    output_format = qmock.config.get_param(config, 'output_format')

    function = args.pop('function')
    vary = args.pop('vary')
    start = args.pop('start')
    stop = args.pop('stop')
    steps = args.pop('steps')
    output = args.pop('output')

    rows = sweep_table(function, vary, start, stop, steps, args, config)

    qmock.ui.output.write_records(rows, output_format, filename=output)

    return 0


def add_arguments(argparser):
    argparser.add_argument('function', choices=list(qmock.ui.evaluate.evaluators.keys()),
        help='Function to evaluate')

    argparser.add_argument('--vary', required=True,
        help='Real parameter to vary')

    argparser.add_argument('--from', dest='start', type=float, required=True,
        help='First value of the varied parameter')

    argparser.add_argument('--to', dest='stop', type=float, required=True,
        help='Last value of the varied parameter')

    argparser.add_argument('--steps', type=int, required=True,
        help='Number of grid values')

    qmock.ui.evaluate.add_function_arguments(argparser)
    qmock.ui.params.add_context_arguments(argparser)

    argparser.set_defaults(func=run)
