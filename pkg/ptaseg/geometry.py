"""
Region geometry: boundaries, exact distance transforms, boundary bands and
angular sectors.
"""

import logging
import math

import numpy as np
from scipy import ndimage

from . import exc, validators
from .models import (
    BandPair, BinaryMask, DistanceField, ProbabilityMap, SectorizedBands
)


log = logging.getLogger(__name__)


__all__ = (
    'threshold', 'extract_boundary', 'distance_transform', 'compute_bands',
    'centroid', 'partition_sectors', 'sectorize', 'dilate', 'erode', 'shift',
    'FOUR_CONNECTED', 'EIGHT_CONNECTED',
)


#: Structuring element of the 4-neighborhood (pixel plus its edge neighbors)
FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)

#: Structuring element of the 8-neighborhood
EIGHT_CONNECTED = ndimage.generate_binary_structure(2, 2)


def _require_region(mask, what='Mask'):
    if mask.is_empty:
        raise exc.EmptyRegionError('%s is empty.' % what)


def threshold(pmap, delta):
    """
    Dichotomize a probability map.

    >>> threshold(ProbabilityMap([[0.2, 0.7]]), 0.5).bits.tolist()
    [[False, True]]

    :param pmap:
        ``ProbabilityMap``

    :param delta:
        Threshold in [0, 1]; a pixel is selected when its probability is
        strictly greater
    """
    delta = validators.validate_threshold(delta)
    return BinaryMask(pmap.probs > delta)


def extract_boundary(mask):
    """
    Return the inner boundary of a region.

    A boundary pixel is a region pixel with at least one 4-neighbor outside
    the region. Pixels on the grid edge count as having an outside neighbor.

    :param mask:
        Non-empty ``BinaryMask``
    """
    _require_region(mask)
    interior = ndimage.binary_erosion(
        mask.bits, structure=FOUR_CONNECTED, border_value=0
    )
    return BinaryMask(mask.bits & ~interior)


def _as_reference(ref_set, width, height):
    if isinstance(ref_set, BinaryMask):
        if width is not None and height is not None:
            if (width, height) != (ref_set.width, ref_set.height):
                raise exc.DimensionMismatch(
                    'Reference set is %dx%d, expected %dx%d.' % (
                        ref_set.width, ref_set.height, width, height)
                )
        return ref_set.bits
    if width is None or height is None:
        raise exc.ValidationError({
            'ref_set': 'Width and height are required for a point set.'
        })
    return BinaryMask.from_coords(ref_set, width, height).bits


def _squared_edt(ref):
    """Exact integer squared distances from every pixel to ``ref`` pixels."""
    indices = ndimage.distance_transform_edt(
        ~ref, return_distances=False, return_indices=True
    )
    rows, cols = np.indices(ref.shape)
    dy = indices[0] - rows
    dx = indices[1] - cols
    return dy.astype(np.int64) ** 2 + dx.astype(np.int64) ** 2


def distance_transform(ref_set, width=None, height=None):
    """
    Exact Euclidean distance transform.

    Every pixel receives the distance from its center to the nearest pixel
    center of ``ref_set``. Squared distances are formed from the nearest
    reference coordinates, so they are exact integers.

    :param ref_set:
        ``BinaryMask`` or iterable of ``(x, y)`` points

    :param width:
        Grid width (required for a point set)

    :param height:
        Grid height (required for a point set)
    """
    ref = _as_reference(ref_set, width, height)
    if not ref.any():
        raise exc.EmptyRegionError('Reference set is empty.')
    return DistanceField(_squared_edt(ref))


def _window(bits, pad):
    """Bounding box of ``bits`` grown by ``pad`` and clipped to the grid."""
    ys, xs = np.nonzero(bits)
    y0 = max(int(ys.min()) - pad, 0)
    y1 = min(int(ys.max()) + pad + 1, bits.shape[0])
    x0 = max(int(xs.min()) - pad, 0)
    x1 = min(int(xs.max()) + pad + 1, bits.shape[1])
    return slice(y0, y1), slice(x0, x1)


def compute_bands(mask, d):
    """
    Build the inner and outer boundary bands of a region.

    ``inner`` holds region pixels and ``outer`` non-region pixels whose
    distance to the region boundary is strictly less than ``d``.

    :param mask:
        Non-empty ``BinaryMask``

    :param d:
        Band width in pixels, > 0
    """
    d = validators.validate_band_width(d)
    boundary = extract_boundary(mask)

    # Pixels further than ``d`` along either axis from the boundary's bounding
    # box cannot be band members, so the transform runs on that window only.
    window = _window(boundary.bits, int(math.ceil(d)))
    squared = _squared_edt(boundary.bits[window])
    near = squared < d * d

    region = mask.bits[window]
    inner = np.zeros(mask.shape, dtype=bool)
    outer = np.zeros(mask.shape, dtype=bool)
    inner[window] = near & region
    outer[window] = near & ~region

    bands = BandPair(BinaryMask(inner), BinaryMask(outer), d)
    log.debug('compute_bands: %r', bands)
    return bands


def centroid(mask):
    """
    Return the mean ``(x, y)`` of the region's pixel coordinates.

    :param mask:
        Non-empty ``BinaryMask``
    """
    _require_region(mask)
    ys, xs = np.nonzero(mask.bits)
    return (float(xs.mean()), float(ys.mean()))


def _sector_index(xs, ys, c, num_sectors):
    """
    Sector of each point about ``c``.

    Angles are ``atan2(dy, dx)`` in array coordinates, where y grows down the
    rows, so increasing angle turns clockwise as the image is displayed.
    Sector 1 starts at the +x axis and runs towards +y (below ``c`` on screen).
    Angles are normalized to (0, 2*pi]; sector ``i`` covers
    ((i - 1) * 2*pi / K, i * 2*pi / K]. A point equal to ``c`` is sector 1.
    """
    dx = xs - c[0]
    dy = ys - c[1]
    theta = np.arctan2(dy, dx)
    theta = np.where(theta <= 0, theta + 2 * np.pi, theta)
    index = np.ceil(theta * num_sectors / (2 * np.pi)).astype(np.int64)
    index = np.clip(index, 1, num_sectors)
    index[(dx == 0) & (dy == 0)] = 1
    return index


def partition_sectors(bands, c, num_sectors):
    """
    Split both bands into ``num_sectors`` angular sectors about ``c``.

    :param bands:
        ``BandPair``

    :param c:
        Center ``(x, y)``, normally the region centroid

    :param num_sectors:
        Number of sectors ``K`` >= 1
    """
    num_sectors = validators.validate_sectors(num_sectors)
    if not all(math.isfinite(v) for v in c):
        raise exc.ValidationError({'centroid': 'Centroid must be finite.'})

    labels = []
    for band in (bands.inner, bands.outer):
        out = np.zeros(band.shape, dtype=np.int64)
        ys, xs = np.nonzero(band.bits)
        out[ys, xs] = _sector_index(
            xs.astype(float), ys.astype(float), c, num_sectors)
        labels.append(out)

    return SectorizedBands(labels[0], labels[1], c, num_sectors)


def sectorize(mask, d, num_sectors):
    """Bands of ``mask`` partitioned about its own centroid."""
    bands = compute_bands(mask, d)
    return partition_sectors(bands, centroid(mask), num_sectors)


def _check_margin(mask, margin, what):
    ys, xs = np.nonzero(mask.bits)
    if (xs.min() - margin < 0 or ys.min() - margin < 0 or
            xs.max() + margin >= mask.width or
            ys.max() + margin >= mask.height):
        raise exc.ValidationError({
            'offset': '%s by %d pixel(s) leaves the %dx%d grid.' % (
                what, margin, mask.width, mask.height)
        })


def dilate(mask, radius):
    """
    Grow a region by ``radius`` pixels with the 3x3 square element.

    A rectangle grows into the rectangle ``radius`` pixels larger on every
    side. The result must stay within the grid.
    """
    _require_region(mask)
    if radius == 0:
        return mask
    _check_margin(mask, radius, 'Dilation')
    return BinaryMask(ndimage.binary_dilation(
        mask.bits, structure=EIGHT_CONNECTED, iterations=radius
    ))


def erode(mask, radius):
    """
    Shrink a region by ``radius`` pixels with the 3x3 square element.

    The result must not be empty.
    """
    _require_region(mask)
    if radius == 0:
        return mask
    bits = ndimage.binary_erosion(
        mask.bits, structure=EIGHT_CONNECTED, iterations=radius,
        border_value=0
    )
    if not bits.any():
        raise exc.EmptyRegionError(
            'Erosion by %d pixel(s) empties the region.' % radius
        )
    return BinaryMask(bits)


def shift(mask, dx, dy):
    """
    Translate a region by an integer vector; it must stay within the grid.
    """
    _require_region(mask)
    ys, xs = np.nonzero(mask.bits)
    xs = xs + dx
    ys = ys + dy
    if (xs.min() < 0 or ys.min() < 0 or xs.max() >= mask.width or
            ys.max() >= mask.height):
        raise exc.ValidationError({
            'offset': 'Shift by (%d, %d) leaves the %dx%d grid.' % (
                dx, dy, mask.width, mask.height)
        })
    bits = np.zeros(mask.shape, dtype=bool)
    bits[ys, xs] = True
    return BinaryMask(bits)
