"""
Piecewise two-sample loss over the angular sectors of the boundary bands.
"""

import logging

import numpy as np

from . import exc, validators
from .models import PiecewiseLossReport, SampleStats, SectorStatistic
from .models import constants
from .util.stats import mean_diff, sample_stats, welch_t


log = logging.getLogger(__name__)


__all__ = ('piecewise_loss', 'band_summary')


def _grouped(values, labels, num_sectors):
    """Split band pixel values by sector label; index 0 is sector 1."""
    member = labels > 0
    vals = values[member]
    labs = labels[member]
    order = np.argsort(labs, kind='stable')
    vals = vals[order]
    bounds = np.searchsorted(labs[order], np.arange(1, num_sectors + 2))
    return [vals[bounds[i]:bounds[i + 1]] for i in range(num_sectors)]


def _sector_statistic(index, outer, inner, mode, epsilon):
    stat = SectorStatistic(index, n_plus=outer.size, n_minus=inner.size)
    if not stat.valid:
        return stat

    plus = sample_stats(outer)
    minus = sample_stats(inner)
    stat.v = mean_diff(plus, minus)
    try:
        stat.t = welch_t(plus, minus)
    except exc.ZeroContrast:
        stat.t = 0.0

    if mode == constants.MODE_TTEST:
        stat.loss = 1.0 / max(abs(stat.t), epsilon)
    else:
        stat.loss = 1.0 / max(stat.v, epsilon)
    return stat


def piecewise_loss(image, sectors, mode=constants.MODE_TTEST, epsilon=1e-6):
    """
    Mean reciprocal per-sector contrast between the outer and inner bands.

    In ``t-test`` mode each sector contributes ``1 / max(|t|, epsilon)`` with
    ``t`` the Welch statistic of the outer against the inner band; in
    ``mean-diff`` mode it contributes ``1 / max(v, epsilon)`` with ``v`` the
    absolute mean difference. Sectors with fewer than 2 pixels in either band
    are skipped.

    :param image:
        ``GrayImage``

    :param sectors:
        ``SectorizedBands`` on the same grid

    :param mode:
        ``'t-test'`` or ``'mean-diff'``

    :param epsilon:
        Floor applied before the reciprocal
    """
    mode = validators.validate_mode(mode)
    if image.shape != (sectors.height, sectors.width):
        raise exc.DimensionMismatch(
            'Image is %dx%d but sectors are %dx%d.' % (
                image.width, image.height, sectors.width, sectors.height)
        )

    K = sectors.num_sectors
    outer = _grouped(image.values, sectors.outer_labels, K)
    inner = _grouped(image.values, sectors.inner_labels, K)

    per_sector = [
        _sector_statistic(i + 1, outer[i], inner[i], mode, epsilon)
        for i in range(K)
    ]
    report = PiecewiseLossReport(per_sector, mode)
    log.debug('piecewise_loss: %r', report)
    return report


def band_summary(image, bands, bins=32):
    """
    Describe the gray values of the inner and outer band.

    Returns sample statistics of both bands and their histograms over shared
    bin edges, so the two distributions can be compared directly.

    :param image:
        ``GrayImage``

    :param bands:
        ``BandPair`` on the same grid

    :param bins:
        Number of histogram bins
    """
    validators.validate_same_shape(image, bands.inner)
    inner = image.values[bands.inner.bits]
    outer = image.values[bands.outer.bits]
    both = np.concatenate((inner, outer))
    if both.size == 0:
        raise exc.EmptyRegionError('Both bands are empty.')

    edges = np.histogram_bin_edges(both, bins=bins)

    def describe(values):
        if values.size >= constants.MIN_SAMPLE_SIZE:
            stats = sample_stats(values)
        elif values.size:
            stats = SampleStats(values.size, values.mean())
        else:
            stats = None
        return {
            'stats': stats.to_dict() if stats is not None else None,
            'histogram': np.histogram(values, bins=edges)[0].tolist(),
        }

    return {
        'band_width': bands.band_width,
        'bin_edges': edges.tolist(),
        'inner': describe(inner),
        'outer': describe(outer),
    }
