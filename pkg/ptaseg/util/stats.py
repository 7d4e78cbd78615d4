"""
Two-sample statistics used by the piecewise boundary loss.
"""

import math

import numpy as np

from .. import exc
from ..models import SampleStats
from ..models import constants


__all__ = ('sample_stats', 'welch_t', 'mean_diff')


def sample_stats(values):
    """
    Return the size, mean and unbiased (n - 1) variance of ``values``.

    >>> sample_stats([1, 2, 3])
    SampleStats(n=3, mean=2.0, var=1.0)

    :param values:
        Sequence of at least 2 reals
    """
    values = np.asarray(values, dtype=float).ravel()
    n = values.size
    if n < constants.MIN_SAMPLE_SIZE:
        raise exc.InsufficientSampleError(
            'Need at least %d values, got %d.' % (constants.MIN_SAMPLE_SIZE, n)
        )
    mean = values.mean()
    var = np.square(values - mean).sum() / (n - 1)
    return SampleStats(n, mean, var)


def welch_t(plus, minus):
    """
    Welch's two-sample t statistic of ``plus`` against ``minus``.

    ``(mean+ - mean-) / sqrt(var+/n+ + var-/n-)``. When both variances are
    zero the statistic is infinite with the sign of the mean difference; equal
    constant samples raise ``ZeroContrast``.

    :param plus:
        ``SampleStats`` of the outer sample

    :param minus:
        ``SampleStats`` of the inner sample
    """
    for stats in (plus, minus):
        if stats.var is None or stats.n < constants.MIN_SAMPLE_SIZE:
            raise exc.InsufficientSampleError(
                'Welch t needs 2 or more values per sample.'
            )
    diff = plus.mean - minus.mean
    se2 = plus.var / plus.n + minus.var / minus.n
    if se2 == 0:
        if diff == 0:
            raise exc.ZeroContrast()
        return math.copysign(math.inf, diff)
    return diff / math.sqrt(se2)


def mean_diff(plus, minus):
    """Absolute difference of the two sample means."""
    return abs(plus.mean - minus.mean)
