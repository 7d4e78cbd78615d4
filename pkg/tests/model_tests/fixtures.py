import logging

import numpy as np
import pytest

from ptaseg import geometry
from ptaseg.models import BinaryMask, PtaConfig, SyntheticSpec
from ptaseg.services.synthetic import generate_image, offset_cases


log = logging.getLogger(__name__)


@pytest.fixture
def rng():
    """A seeded generator so every test draws the same values."""
    return np.random.default_rng(20240611)


@pytest.fixture
def spec():
    """The default synthetic experiment."""
    return SyntheticSpec()


@pytest.fixture
def square(spec):
    """The 60-pixel ground-truth square of a 200x200 domain."""
    return BinaryMask.rectangle(spec.size, spec.size, spec.rect, spec.rect)


@pytest.fixture
def synthetic(spec):
    """Return ``(image, gt)`` drawn with seed 0."""
    return generate_image(spec, seed=0)


@pytest.fixture
def cases(square, spec):
    """The five offset segmentations of ``square``."""
    return offset_cases(square, spec.offset, spec.shift)


@pytest.fixture
def narrow_cfg():
    """Boundary term with the narrow default band."""
    return PtaConfig(band_width=2.0, sectors=10)


@pytest.fixture
def wide_cfg():
    """Boundary term with the band used by the experiment and refinement."""
    return PtaConfig(band_width=8.0, sectors=10)


@pytest.fixture
def square_sectors(square):
    """Sectors of ``square`` at d=2, K=4."""
    return geometry.sectorize(square, 2.0, 4)
