import collections
import logging

import qmock.config
import qmock.verify
import qmock.ui.output
import qmock.ui.params
from qmock.ui.params import UsageError


def summary_row(data):
    """ Flat table row of a report dictionary.
    """
    row = collections.OrderedDict()
    for name in ('name', 'tier', 'n_samples', 'seed', 'threshold', 'max_residual', 'mean_residual', 'pass'):
        row[name] = data[name]
    row['n_failures'] = len(data['failures'])
    row['resolved_base'] = data.get('resolved_base')
    row['branch_flips'] = data.get('branch_flips')
    if 'wall_time_ms' in data:
        row['wall_time_ms'] = data['wall_time_ms']
    return row


def write_reports(reports, output_format, filename=None, timing=False):
    records = [report.to_dict(timing=timing) for report in reports]

    if output_format == 'json':
        qmock.ui.output.write_records(records, 'json', filename=filename)
    else:
        qmock.ui.output.write_records([summary_row(a) for a in records], output_format, filename=filename)


def run(**args):
    config = qmock.ui.params.create_config(args)

    if args['all'] and args['name'] is not None:
        raise UsageError('give either a check name or --all')
    if not args['all'] and args['name'] is None:
        raise UsageError('a check name or --all is required')

    n_samples = qmock.config.get_param(config, 'n_samples')
    if n_samples < 1:
        raise UsageError('number of samples must be positive')

    output_format = qmock.config.get_param(config, 'output_format')

    # Nome is replaced per sample
    ctx = qmock.config.create_context(config, 0.5)

    if args['all']:
        reports = qmock.verify.run_all(n_samples, ctx, config=config)
    else:
        reports = [qmock.verify.run_check(args['name'], n_samples, ctx, config=config)]

    write_reports(reports, output_format, filename=args['output'], timing=args['timing'])

    for report in reports:
        if not report.passed:
            logging.warning('check {} failed with max residual {}'.format(report.name, report.max_residual))

    if qmock.verify.core_passed(reports):
        return 0

    return 4


def add_arguments(argparser):
    argparser.add_argument('name', nargs='?',
        help='Name of the identity check')

    argparser.add_argument('--all', action='store_true',
        help='Run every registered check')

    argparser.add_argument('-n', '--n_samples', type=int,
        help='Number of samples per check, overrides configuration')

    argparser.add_argument('--seed', type=int,
        help='Random seed, overrides configuration')

    argparser.add_argument('--timing', action='store_true',
        help='Include wall clock time in reports')

    qmock.ui.params.add_context_arguments(argparser)

    argparser.set_defaults(func=run)
