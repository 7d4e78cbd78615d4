"""
General purpose utilities for unit-testing.

Brute-force oracles live here so that tests can compare the vectorized
implementations against the direct definitions.
"""

import json
import math
import os

import numpy as np

from ptaseg.models import BinaryMask


__all__ = (
    'load_json', 'random_mask', 'brute_boundary', 'brute_squared_distances',
    'brute_hausdorff', 'brute_assd', 'brute_sector', 'direct_welch_t',
)


def load_json(path):
    """
    Load a JSON report.

    :param path:
        Path of the file
    """
    with open(path, 'rb') as f:
        return json.load(f)


def random_mask(rng, width, height, density=0.5, blobs=True):
    """
    Random non-empty mask.

    With ``blobs`` the mask is a union of random rectangles, which gives
    regions with realistic boundaries; otherwise every pixel is drawn
    independently.
    """
    while True:
        if blobs:
            bits = np.zeros((height, width), dtype=bool)
            for _ in range(rng.integers(1, 5)):
                x0, x1 = sorted(rng.integers(0, width, size=2))
                y0, y1 = sorted(rng.integers(0, height, size=2))
                bits[y0:y1 + 1, x0:x1 + 1] = True
        else:
            bits = rng.random((height, width)) < density
        if bits.any():
            return BinaryMask(bits)


def brute_boundary(mask):
    """Region pixels with a 4-neighbor outside the region or the grid."""
    bits = mask.bits
    height, width = bits.shape
    out = np.zeros_like(bits)
    for y in range(height):
        for x in range(width):
            if not bits[y, x]:
                continue
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nx, ny = x + dx, y + dy
                if not (0 <= nx < width and 0 <= ny < height) or \
                        not bits[ny, nx]:
                    out[y, x] = True
                    break
    return out


def brute_squared_distances(ref_bits):
    """Exhaustive minimum squared distance from every pixel to ``ref_bits``."""
    height, width = ref_bits.shape
    ref_y, ref_x = np.nonzero(ref_bits)
    ys, xs = np.indices((height, width))
    dx = xs.ravel()[:, None] - ref_x[None, :]
    dy = ys.ravel()[:, None] - ref_y[None, :]
    return (dx * dx + dy * dy).min(axis=1).reshape(height, width)


def _pairwise(a_bits, b_bits):
    ay, ax = np.nonzero(a_bits)
    by, bx = np.nonzero(b_bits)
    dx = ax[:, None] - bx[None, :]
    dy = ay[:, None] - by[None, :]
    return dx * dx + dy * dy


def brute_hausdorff(gt, seg):
    pairs = _pairwise(brute_boundary(gt), brute_boundary(seg))
    return math.sqrt(max(pairs.min(axis=1).max(), pairs.min(axis=0).max()))


def brute_assd(gt, seg):
    pairs = np.sqrt(_pairwise(brute_boundary(gt), brute_boundary(seg)))
    total = pairs.min(axis=1).sum() + pairs.min(axis=0).sum()
    return total / (pairs.shape[0] + pairs.shape[1])


def brute_sector(x, y, c, num_sectors):
    """Sector of ``(x, y)`` about ``c`` by direct angle binning."""
    dx, dy = x - c[0], y - c[1]
    if dx == 0 and dy == 0:
        return 1
    theta = math.atan2(dy, dx)
    if theta <= 0:
        theta += 2 * math.pi
    width = 2 * math.pi / num_sectors
    for i in range(1, num_sectors + 1):
        if (i - 1) * width < theta <= i * width:
            return i
    return num_sectors


def direct_welch_t(plus, minus):
    """Welch statistic from the textbook formula with plain sums."""
    def mean_var(values):
        n = len(values)
        mean = math.fsum(values) / n
        var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
        return n, mean, var

    n1, m1, v1 = mean_var(list(plus))
    n2, m2, v2 = mean_var(list(minus))
    return (m1 - m2) / math.sqrt(v1 / n1 + v2 / n2)
