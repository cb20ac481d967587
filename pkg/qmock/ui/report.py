import json

import pandas as pd

import qmock.ui.check
import qmock.ui.output
from qmock.ui.params import UsageError


def read_reports(filenames):
    """ Read reports saved by the check subcommand in json format, one object per line.
    """
    records = []
    for filename in filenames:
        with open(filename, 'r') as f:
            for line_number, line in enumerate(f):
                if line.strip() == '':
                    continue
                try:
                    records.append(json.loads(line))
                except ValueError:
                    raise UsageError('{} line {} is not a json report'.format(filename, line_number + 1))
    return records


def run(**args):
    records = read_reports(args['reports'])

    table = pd.DataFrame([qmock.ui.check.summary_row(a) for a in records])

    if args['failed_only'] and not table.empty:
        table = table[~table['pass']]

    qmock.ui.output.write_table(table, args['output_format'], filename=args['output'])

    n_failed = 0
    if not table.empty:
        n_failed = int((~table['pass'] & (table['tier'] == 'core')).sum())
    if n_failed > 0:
        return 4

    return 0


def add_arguments(argparser):
    argparser.add_argument('reports', nargs='+',
        help='Report files written with check --format json')

    argparser.add_argument('--failed_only', action='store_true',
        help='Only list failed checks')

    argparser.add_argument('--format', dest='output_format', choices=('text', 'json', 'csv'), default='text',
        help='Output format')

    argparser.add_argument('-o', '--output',
        help='Output filename, stdout if not given')

    argparser.set_defaults(func=run)
