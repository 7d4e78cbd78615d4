"""
Boundary bands and their angular sectors.
"""

import numpy as np

from .. import exc, validators
from . import constants
from .image import BinaryMask


class BandPair(object):
    """
    Inner and outer boundary bands of a region.

    ``inner`` holds region pixels closer than ``band_width`` to the region
    boundary, ``outer`` holds the same for pixels outside the region.
    """
    def __init__(self, inner, outer, band_width):
        self.inner = inner
        self.outer = outer
        self.band_width = band_width
        self.clean_fields()

    def clean_band_width(self, value):
        return validators.validate_band_width(value)

    def clean_fields(self):
        self.band_width = self.clean_band_width(self.band_width)
        validators.validate_same_shape(self.inner, self.outer)
        if (self.inner.bits & self.outer.bits).any():
            raise exc.ValidationError({
                'bands': 'Inner and outer bands must be disjoint.'
            })

    @property
    def width(self):
        return self.inner.width

    @property
    def height(self):
        return self.inner.height

    def __repr__(self):
        return '<BandPair d=%r inner=%d outer=%d>' % (
            self.band_width, self.inner.count, self.outer.count)

    def to_dict(self):
        return {
            'band_width': self.band_width,
            'inner_count': self.inner.count,
            'outer_count': self.outer.count,
        }


class SectorizedBands(object):
    """
    A ``BandPair`` split into ``K`` angular sectors about a centroid.

    Sector membership is kept as two label grids: 0 outside the band, ``i``
    (1-based) for a pixel of sector ``i``.
    """
    def __init__(self, inner_labels, outer_labels, centroid, num_sectors):
        self.inner_labels = validators.validate_grid(
            inner_labels, 'inner_labels', dtype=np.int64)
        self.outer_labels = validators.validate_grid(
            outer_labels, 'outer_labels', dtype=np.int64)
        self.centroid = tuple(float(c) for c in centroid)
        self.num_sectors = validators.validate_sectors(num_sectors)
        self.clean_fields()

    def clean_fields(self):
        if self.inner_labels.shape != self.outer_labels.shape:
            raise exc.DimensionMismatch('Sector label grids differ in shape.')
        both = (self.inner_labels > 0) & (self.outer_labels > 0)
        if both.any():
            raise exc.ValidationError({
                'sectors': 'A pixel cannot be in both bands.'
            })
        for labels in (self.inner_labels, self.outer_labels):
            if labels.min() < 0 or labels.max() > self.num_sectors:
                raise exc.ValidationError({
                    'sectors': 'Sector labels must lie within 0..%d.' %
                    self.num_sectors
                })

    @property
    def K(self):
        return self.num_sectors

    @property
    def width(self):
        return self.inner_labels.shape[1]

    @property
    def height(self):
        return self.inner_labels.shape[0]

    def sector(self, index):
        """The ``(inner, outer)`` masks of sector ``index`` (1-based)."""
        if not 1 <= index <= self.num_sectors:
            raise exc.ValidationError({
                'index': 'Sector %r outside 1..%d.' % (index, self.num_sectors)
            })
        return (
            BinaryMask(self.inner_labels == index),
            BinaryMask(self.outer_labels == index),
        )

    @property
    def sectors(self):
        """Ordered list of ``(inner, outer)`` mask pairs."""
        return [self.sector(i) for i in range(1, self.num_sectors + 1)]

    def counts(self):
        """Return ``(inner_counts, outer_counts)`` indexed by sector - 1."""
        length = self.num_sectors + 1
        inner = np.bincount(self.inner_labels.ravel(), minlength=length)[1:]
        outer = np.bincount(self.outer_labels.ravel(), minlength=length)[1:]
        return inner, outer

    def visualization(self):
        """
        Encode the partition as one label grid.

        Inner band pixels carry their sector index ``i``, outer band pixels
        carry ``OUTER_SECTOR_OFFSET + i`` and everything else is 0.
        """
        out = self.inner_labels.copy()
        outer = self.outer_labels > 0
        out[outer] = self.outer_labels[outer] + constants.OUTER_SECTOR_OFFSET
        return out

    def __repr__(self):
        return '<SectorizedBands K=%d centroid=(%.3f, %.3f)>' % (
            (self.num_sectors,) + self.centroid)

    def to_dict(self):
        inner, outer = self.counts()
        return {
            'num_sectors': self.num_sectors,
            'centroid': list(self.centroid),
            'inner_counts': inner.tolist(),
            'outer_counts': outer.tolist(),
        }
