import logging
import os

import numpy as np
import pytest

from ptaseg import imageio
from ptaseg.models import LabelMask, SyntheticSpec
from ptaseg.services.synthetic import generate_image, offset_cases


log = logging.getLogger(__name__)


class Files(dict):
    """Paths of the input files written for a test, keyed by name."""
    def __init__(self, root):
        super(Files, self).__init__()
        self.root = root

    def path(self, name):
        return os.path.join(self.root, name)


@pytest.fixture
def files(tmp_path):
    """
    The synthetic image (``image.pfm``), its ground truth (``gt.pgm``) and
    the five offset cases (``case1.pgm`` .. ``case5.pgm``).
    """
    out = Files(str(tmp_path))
    image, gt = generate_image(SyntheticSpec(), seed=0)

    out['image'] = out.path('image.pfm')
    imageio.write_image(out['image'], image)
    out['gt'] = out.path('gt.pgm')
    imageio.write_mask(out['gt'], gt)
    for case, mask in enumerate(offset_cases(gt, 2, 5), 1):
        name = 'case%d' % case
        out[name] = out.path(name + '.pgm')
        imageio.write_mask(out[name], mask)
    return out


@pytest.fixture
def label_files(tmp_path):
    """A two-class label map and a prediction with one class shifted."""
    out = Files(str(tmp_path))
    labels = np.zeros((80, 80), dtype=np.int64)
    labels[10:35, 10:35] = 1
    labels[45:70, 40:70] = 2
    pred = np.zeros_like(labels)
    pred[10:35, 12:37] = 1
    pred[45:70, 40:70] = 2

    image = np.random.default_rng(3).normal(0, 1, labels.shape)
    image += np.array([0.0, 5.0, -4.0])[labels]

    out['image'] = out.path('labels_image.pfm')
    imageio.save(out['image'], image)
    out['gt'] = out.path('labels_gt.png')
    imageio.write_mask(out['gt'], LabelMask(labels))
    out['pred'] = out.path('labels_pred.png')
    imageio.write_mask(out['pred'], LabelMask(pred))
    return out
