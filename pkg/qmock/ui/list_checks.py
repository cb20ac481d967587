import collections

import qmock.verify
import qmock.ui.output


def run(**args):
    rows = []
    for check in qmock.verify.registry():
        row = collections.OrderedDict()
        row['name'] = check.name
        row['tier'] = check.tier
        row['threshold'] = check.threshold
        row['candidates'] = ','.join(check.candidates) if check.candidates is not None else ''
        row['anchor'] = check.anchor
        rows.append(row)

    qmock.ui.output.write_records(rows, args['output_format'], filename=args['output'])

    return 0


def add_arguments(argparser):
    argparser.add_argument('--format', dest='output_format', choices=('text', 'json', 'csv'), default='text',
        help='Output format')

    argparser.add_argument('-o', '--output',
        help='Output filename, stdout if not given')

    argparser.set_defaults(func=run)
