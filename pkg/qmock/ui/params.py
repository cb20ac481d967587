import argparse

import qmock.config


def parse_complex(text):
    """ Parse a complex literal, a+bi, a+bj, or a plain real with optional exponent.
    """
    literal = text.strip().replace(' ', '')

    if literal.endswith('i'):
        literal = literal[:-1] + 'j'

    try:
        return complex(literal)
    except ValueError:
        raise argparse.ArgumentTypeError('invalid complex literal {!r}'.format(text))


def parse_nome(text):
    q = parse_complex(text)
    if not 0. < abs(q) < 1.:
        raise argparse.ArgumentTypeError('nome must satisfy 0 < |q| < 1, got {!r}'.format(text))
    return q


def parse_complex_list(text):
    """ Comma separated complex literals, empty string for no values.
    """
    if text.strip() == '':
        return []
    return [parse_complex(a) for a in text.split(',')]


def parse_real_list(text):
    values = parse_complex_list(text)
    if any(a.imag != 0 for a in values):
        raise argparse.ArgumentTypeError('expected real values, got {!r}'.format(text))
    return [a.real for a in values]


def add_context_arguments(argparser):
    argparser.add_argument('-c', '--config',
        help='Configuration filename (yaml)')

    argparser.add_argument('--tol', type=float,
        help='Relative truncation tolerance, overrides configuration')

    argparser.add_argument('--max_terms', type=int,
        help='Cap on series terms, overrides configuration')

    argparser.add_argument('--min_terms', type=int,
        help='Minimum series terms, overrides configuration')

    argparser.add_argument('--format', dest='output_format', choices=('text', 'json', 'csv'),
        help='Output format, overrides configuration')

    argparser.add_argument('-o', '--output',
        help='Output filename, stdout if not given')


overridable = ('tol', 'max_terms', 'min_terms', 'output_format', 'seed', 'n_samples')


def create_config(args):
    """ Configuration file overlaid with explicit command line flags.
    """
    config = qmock.config.load_config(args.pop('config', None))

    for name in overridable:
        value = args.pop(name, None)
        if value is not None:
            config[name] = value

    return config


class UsageError(ValueError):
    pass
