import logging
import math

import numpy as np
import pytest

from ptaseg import exc, geometry
from ptaseg.models import GrayImage, SectorizedBands
from ptaseg.piecewise import band_summary, piecewise_loss
from ptaseg.services.synthetic import (
    generate_image, offset_cases, replicate_rng
)

from .fixtures import rng, spec, square, square_sectors


log = logging.getLogger(__name__)


@pytest.fixture
def two_rows():
    """Outer band {1, 3} above inner band {0, 0}: Welch t is exactly 2."""
    image = GrayImage([[1.0, 3.0], [0.0, 0.0]])
    sectors = SectorizedBands(
        inner_labels=[[0, 0], [1, 1]],
        outer_labels=[[1, 1], [0, 0]],
        centroid=(0.5, 1.0),
        num_sectors=1,
    )
    return image, sectors


def test_single_sector(two_rows):
    image, sectors = two_rows
    report = piecewise_loss(image, sectors)
    assert report.per_sector[0].t == 2.0
    assert report.aggregate == 0.5
    assert report.skipped == 0

    simple = piecewise_loss(image, sectors, mode='mean-diff')
    assert simple.per_sector[0].v == 2.0
    assert simple.aggregate == 0.5


def test_invalid_sectors_are_skipped():
    image = GrayImage([[1.0, 3.0, 7.0], [0.0, 0.0, 5.0]])
    sectors = SectorizedBands(
        inner_labels=[[0, 0, 0], [1, 1, 2]],
        outer_labels=[[1, 1, 2], [0, 0, 0]],
        centroid=(1.0, 1.0),
        num_sectors=2,
    )
    report = piecewise_loss(image, sectors)
    assert report.skipped == 1
    assert report.aggregate == 0.5
    assert report.losses == [0.5, None]
    assert not report.per_sector[1].valid
    assert report.per_sector[1].t is None


def test_every_sector_invalid():
    image = GrayImage([[1.0], [0.0]])
    sectors = SectorizedBands([[0], [1]], [[1], [0]], (0, 0), 1)
    with pytest.raises(exc.DegenerateBandError):
        piecewise_loss(image, sectors)


def test_zero_and_infinite_contrast(two_rows):
    _, sectors = two_rows

    # Equal constant bands: t is taken as 0 and the loss hits 1/epsilon.
    flat = GrayImage([[2.0, 2.0], [2.0, 2.0]])
    report = piecewise_loss(flat, sectors, epsilon=1e-6)
    assert report.per_sector[0].t == 0.0
    assert report.aggregate == pytest.approx(1e6)

    # Constant bands with different means: infinite t, zero loss.
    split = GrayImage([[2.0, 2.0], [0.0, 0.0]])
    report = piecewise_loss(split, sectors)
    assert report.per_sector[0].t == math.inf
    assert report.aggregate == 0.0


def test_sign_follows_outer_minus_inner(two_rows):
    image, sectors = two_rows
    swapped = SectorizedBands(
        sectors.outer_labels, sectors.inner_labels, sectors.centroid, 1)
    assert piecewise_loss(image, swapped).per_sector[0].t == -2.0
    assert piecewise_loss(image, swapped).aggregate == 0.5


def test_affine_invariance(spec, square):
    image, _ = generate_image(spec, seed=3)
    sectors = geometry.sectorize(square, 2, 10)
    base = piecewise_loss(image, sectors)
    simple = piecewise_loss(image, sectors, mode='mean-diff')

    scale = 2.5
    moved = image.affine(scale, -1.0)
    for a, b in zip(base.per_sector, piecewise_loss(moved, sectors).per_sector):
        assert abs(a.t - b.t) <= 1e-9

    for a, b in zip(simple.per_sector,
                    piecewise_loss(moved, sectors, 'mean-diff').per_sector):
        assert b.v == pytest.approx(scale * a.v, rel=1e-9)


def test_dimension_mismatch(square_sectors):
    with pytest.raises(exc.DimensionMismatch):
        piecewise_loss(GrayImage(np.zeros((10, 10))), square_sectors)


def test_invalid_mode(two_rows):
    image, sectors = two_rows
    with pytest.raises(exc.ValidationError):
        piecewise_loss(image, sectors, mode='z-test')


def test_exact_mask_has_uniform_low_losses(spec, square):
    """
    Averaged over seeded images, every sector of the exact mask has a small
    loss, and no sector stands out.
    """
    sectors = geometry.sectorize(square, 2, 10)
    losses = np.array([
        piecewise_loss(
            generate_image(spec, rng=replicate_rng(0, r))[0], sectors
        ).losses
        for r in range(20)
    ])
    means = losses.mean(axis=0)
    log.debug('sector means = %r', means)
    assert means.min() >= 0.1
    assert means.max() <= 0.6
    assert means.max() / means.min() < 2.5


def test_diagonal_shift_is_worse_than_exact(spec, square):
    exact = geometry.sectorize(square, 2, 10)
    shifted = geometry.sectorize(offset_cases(square, 2, 5)[4], 2, 10)

    worse = 0
    for r in range(20):
        image, _ = generate_image(spec, rng=replicate_rng(0, r))
        worse += (
            piecewise_loss(image, shifted).aggregate >
            piecewise_loss(image, exact).aggregate
        )
    assert worse >= 19


def test_band_summary(square):
    image = GrayImage(np.where(square.bits, 4.0, 1.0))
    summary = band_summary(image, geometry.compute_bands(square, 2), bins=4)
    assert summary['band_width'] == 2.0
    assert len(summary['bin_edges']) == 5
    assert summary['inner']['stats'] == {'n': 464, 'mean': 4.0, 'var': 0.0}
    assert summary['outer']['stats'] == {'n': 244, 'mean': 1.0, 'var': 0.0}
    assert sum(summary['inner']['histogram']) == 464
    assert summary['outer']['histogram'][0] == 244
