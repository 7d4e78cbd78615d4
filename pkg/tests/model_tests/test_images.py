import logging

import numpy as np
import pytest

from ptaseg import exc
from ptaseg.models import (
    BandPair, BinaryMask, DistanceField, GrayImage, LabelMask, ProbabilityMap,
    PtaConfig, RefineConfig, SectorizedBands, SyntheticSpec, WceWeights
)


log = logging.getLogger(__name__)


def test_gray_image_creation():
    image = GrayImage.from_flat(3, 2, [0, 1, 2, 3, 4, 5])
    assert (image.width, image.height) == (3, 2)
    assert image.values[1, 0] == 3.0

    # Values are read-only.
    with pytest.raises(ValueError):
        image.values[0, 0] = 9

    with pytest.raises(exc.ValidationError):
        GrayImage.from_flat(3, 2, [0, 1, 2])

    with pytest.raises(exc.ValidationError):
        GrayImage([[0.0, np.nan]])

    with pytest.raises(exc.ValidationError):
        GrayImage([1.0, 2.0])

    with pytest.raises(exc.ValidationError):
        GrayImage(np.zeros((0, 4)))


def test_gray_image_affine():
    image = GrayImage([[1.0, 2.0]])
    assert image.affine(2.0, 1.0) == GrayImage([[3.0, 5.0]])


def test_binary_mask_set_operations():
    a = BinaryMask([[1, 1, 0, 0]])
    b = BinaryMask([[0, 1, 1, 0]])

    assert (a & b).count == 1
    assert (a | b).count == 3
    assert (a - b).coords().tolist() == [[0, 0]]
    assert (a ^ b).count == 2
    assert (~a).count == 2

    with pytest.raises(exc.DimensionMismatch):
        a & BinaryMask([[1, 0]])


def test_binary_mask_coords():
    mask = BinaryMask.from_coords([(2, 1), (0, 0)], 3, 2)
    assert (2, 1) in mask
    assert (1, 1) not in mask
    assert (5, 5) not in mask
    assert mask.coords().tolist() == [[0, 0], [2, 1]]

    with pytest.raises(exc.ValidationError):
        BinaryMask.from_coords([(3, 0)], 3, 2)


def test_binary_mask_rectangle_and_flip():
    mask = BinaryMask.rectangle(200, 200, (70, 130), (70, 130))
    assert mask.count == 3600
    assert (70, 70) in mask
    assert (130, 70) not in mask

    flipped = mask.flip(0, 0)
    assert flipped.count == 3601
    assert flipped.flip(0, 0) == mask
    assert mask.count == 3600

    assert BinaryMask.empty(4, 3).is_empty


def test_label_mask():
    labels = LabelMask([[0, 1, 2], [2, 0, 0]])
    assert labels.classes == [1, 2]
    assert labels.max_label == 2
    assert labels.one_vs_rest(2).count == 2
    assert labels.validate_range(2) is labels

    with pytest.raises(exc.ValidationError):
        labels.validate_range(1)

    with pytest.raises(exc.ValidationError):
        LabelMask([[-1, 0]])

    binary = LabelMask.from_binary(BinaryMask([[True, False]]))
    assert binary.labels.tolist() == [[1, 0]]


def test_probability_map():
    pmap = ProbabilityMap.constant(4, 3, 0.25)
    assert pmap.probs.shape == (3, 4)

    for bad in (1.5, -0.1, np.nan):
        with pytest.raises(exc.ValidationError):
            ProbabilityMap([[bad]])

    assert BinaryMask([[1, 0]]).to_probability_map().probs.tolist() == [
        [1.0, 0.0]]


def test_distance_field():
    field = DistanceField([[0, 1], [4, 25]])
    assert field.at(1, 1) == 5.0
    assert field.squared[1, 0] == 4


def test_band_pair_validation():
    inner = BinaryMask([[1, 0]])
    with pytest.raises(exc.ValidationError):
        BandPair(inner, inner, 2.0)
    with pytest.raises(exc.ValidationError):
        BandPair(inner, BinaryMask([[0, 1]]), 0)
    with pytest.raises(exc.DimensionMismatch):
        BandPair(inner, BinaryMask([[0, 1, 0]]), 2.0)


def test_sectorized_bands():
    sectors = SectorizedBands(
        [[1, 0, 2]], [[0, 3, 0]], centroid=(1, 0), num_sectors=3)
    inner, outer = sectors.sector(3)
    assert inner.is_empty
    assert outer.coords().tolist() == [[1, 0]]
    assert [c.tolist() for c in sectors.counts()] == [[1, 1, 0], [0, 0, 1]]
    assert sectors.visualization().tolist() == [[1, 131, 2]]

    with pytest.raises(exc.ValidationError):
        sectors.sector(4)
    with pytest.raises(exc.ValidationError):
        SectorizedBands([[1]], [[1]], (0, 0), 1)
    with pytest.raises(exc.ValidationError):
        SectorizedBands([[5]], [[0]], (0, 0), 4)


def test_pta_config():
    cfg = PtaConfig()
    assert cfg.to_dict() == {
        'lam': 3.0, 'sectors': 10, 'band_width': 2.0, 'threshold': 0.5,
        'epsilon': 1e-6, 'mode': 't-test', 'prob_min': 1e-12,
    }
    assert cfg.replace(mode='mean-diff').mode == 'mean-diff'
    assert cfg.replace(lam=3) == cfg

    bad = [
        {'lam': -1}, {'sectors': 0}, {'sectors': 2.5}, {'band_width': 0},
        {'threshold': 1.5}, {'epsilon': 0}, {'mode': 'z-test'},
    ]
    for kwargs in bad:
        with pytest.raises(exc.ValidationError):
            PtaConfig(**kwargs)


def test_pta_config_from_settings(settings):
    settings.PTASEG_SECTORS = 6
    cfg = PtaConfig.from_settings(lam=1.0, band_width=None)
    assert cfg.sectors == 6
    assert cfg.lam == 1.0
    assert cfg.band_width == settings.PTASEG_BAND_WIDTH


def test_wce_weights():
    weights = WceWeights((0.1, 0.3))
    assert weights.weight(0) == 0.1
    assert weights.weight(1) == 0.3
    assert weights.weight(7) == 0.3

    with pytest.raises(exc.ValidationError):
        WceWeights(())
    with pytest.raises(exc.ValidationError):
        WceWeights((0, 0))
    with pytest.raises(exc.ValidationError):
        WceWeights((0.1, -1))


def test_refine_config():
    rc = RefineConfig()
    assert rc.pta.band_width == 8.0
    assert rc.moves_per_iter == 8
    assert rc.acceptance == 'greedy'

    bad = [
        {'mu': -1}, {'max_iters': 0}, {'moves_per_iter': 0},
        {'acceptance': 'lazy'}, {'cooling': 1.5}, {'seed': -1},
        {'pta': {'lam': 1}},
    ]
    for kwargs in bad:
        with pytest.raises(exc.ValidationError):
            RefineConfig(**kwargs)


def test_synthetic_spec():
    spec = SyntheticSpec()
    assert spec.rect == (70, 130)
    assert spec.replace(seed=4).seed == 4

    bad = [
        {'rect': (150, 250)}, {'rect': (10,)}, {'sigma_inside': 0},
        {'replicates': 0}, {'seed': -2}, {'offset': 0},
    ]
    for kwargs in bad:
        with pytest.raises(exc.ValidationError):
            SyntheticSpec(**kwargs)
