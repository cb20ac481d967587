import yaml

import qmock.defaults
import qmock.qcore


context_params = (
    'max_terms',
    'tol',
    'min_terms',
    'pole_guard',
    'contour_points',
    'max_contour_points',
    'contour_radius',
    'seed',
)


def get_full_config(config):
    full_config = dict(vars(qmock.defaults))
    full_config.update(config)
    return full_config


def get_param(config, name):
    return get_full_config(config)[name]


def load_config(filename):
    """ Load a yaml configuration file, None gives an empty configuration.
    """
    if filename is None:
        return dict()

    with open(filename, 'r') as f:
        config = yaml.safe_load(f)

    if config is None:
        return dict()

    if not isinstance(config, dict):
        raise ValueError('config file {} must contain a mapping'.format(filename))

    return config


def create_context(config, q):
    """ Create an evaluation context from configuration.

    Args:
        config (dict): user configuration, overrides defaults
        q (complex): nome

    Returns:
        qmock.qcore.QContext: validated context

    """
    full_config = get_full_config(config)
    kwargs = dict((name, full_config[name]) for name in context_params)
    return qmock.qcore.QContext(q, **kwargs)
