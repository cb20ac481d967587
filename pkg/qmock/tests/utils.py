import numpy as np

import qmock.qcore


def assert_relative_close(actual, desired, rtol):
    """ Assert |actual - desired| <= rtol max(|actual|, |desired|) elementwise
    """
    actual = np.asarray(actual, dtype=complex)
    desired = np.asarray(desired, dtype=complex)

    scale = np.maximum(np.abs(actual), np.abs(desired))
    error = np.abs(actual - desired)

    np.testing.assert_array_less(error, rtol * scale + np.finfo(float).tiny)


def band_values(q, size, low=0.1, high=0.9):
    """ Random values q^t with t uniform in [low, high]
    """
    return q ** np.random.uniform(low=low, high=high, size=size)


def context(q, **kwargs):
    return qmock.qcore.QContext(q, **kwargs)
