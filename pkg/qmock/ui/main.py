import argparse
import logging
import sys

import qmock.qcore
import qmock.verify
import qmock.ui.check
import qmock.ui.evaluate
import qmock.ui.list_checks
import qmock.ui.report
import qmock.ui.sweep
from qmock.ui.params import UsageError


LOGGING_FORMAT = "%(asctime)s - %(levelname)s - %(lineno)d - %(message)s"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CHECK_FAILED = 4


def create_parser():
    argparser = argparse.ArgumentParser(prog='qmock', formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    argparser.add_argument('-v', '--verbose', action='store_true',
        help='Log progress at info level')

    subparsers = argparser.add_subparsers(dest='subcommand')
    subparsers.required = True

    qmock.ui.evaluate.add_arguments(subparsers.add_parser('eval'))
    qmock.ui.check.add_arguments(subparsers.add_parser('check'))
    qmock.ui.list_checks.add_arguments(subparsers.add_parser('list'))
    qmock.ui.sweep.add_arguments(subparsers.add_parser('sweep'))
    qmock.ui.report.add_arguments(subparsers.add_parser('report'))

    return argparser


def main(argv=None):
    argparser = create_parser()

    try:
        args = vars(argparser.parse_args(argv))
    except SystemExit as e:
        return e.code

    level = logging.INFO if args.pop('verbose') else logging.WARNING
    logging.basicConfig(format=LOGGING_FORMAT, stream=sys.stderr, level=level)

    args.pop('subcommand')
    func = args.pop('func')

    try:
        return func(**args)

    except (UsageError, qmock.verify.UnknownCheckError) as e:
        sys.stderr.write('qmock: error: {}\n'.format(e))
        return EXIT_USAGE

    except qmock.qcore.QSeriesError as e:
        sys.stderr.write('qmock: {}: {}\n'.format(type(e).__name__, e))
        return EXIT_DOMAIN


if __name__ == '__main__':
    sys.exit(main())
