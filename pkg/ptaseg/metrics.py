"""
Segmentation evaluation metrics.

Overlap metrics work on pixel sets; the distance metrics measure between the
region boundaries (see ``geometry.extract_boundary``) with the exact Euclidean
distance transform. Distances are in pixels.
"""

from collections import OrderedDict
import logging
import math

import numpy as np

from . import exc, geometry, validators
from .models import BinaryMask, LabelMask, MetricsReport


log = logging.getLogger(__name__)


__all__ = (
    'dsc_metric', 'precision_recall', 'hausdorff', 'assd', 'evaluate',
    'evaluate_labels',
)


def dsc_metric(gt, seg):
    """Dice similarity ``2|G & S| / (|G| + |S|)``; 1.0 when both are empty."""
    validators.validate_same_shape(gt, seg)
    denom = gt.count + seg.count
    if denom == 0:
        return 1.0
    return 2.0 * (gt & seg).count / denom


def precision_recall(gt, seg):
    """
    Return ``(precision, recall)``.

    Either is 1.0 when its denominator (``|S|`` for precision, ``|G|`` for
    recall) is empty.
    """
    validators.validate_same_shape(gt, seg)
    hits = (gt & seg).count
    precision = hits / seg.count if seg.count else 1.0
    recall = hits / gt.count if gt.count else 1.0
    return precision, recall


def _boundary_distances(gt, seg):
    """
    Squared distances from each boundary pixel of one region to the boundary
    of the other, as ``(seg_to_gt, gt_to_seg)`` integer arrays.
    """
    validators.validate_same_shape(gt, seg)
    if gt.is_empty or seg.is_empty:
        raise exc.EmptyRegionError(
            'Distance metrics need non-empty ground truth and segmentation.'
        )
    bg = geometry.extract_boundary(gt)
    bs = geometry.extract_boundary(seg)
    to_gt = geometry.distance_transform(bg).squared
    to_seg = geometry.distance_transform(bs).squared
    return to_gt[bs.bits], to_seg[bg.bits]


def hausdorff(gt, seg):
    """Symmetric Hausdorff distance between the two region boundaries."""
    seg_to_gt, gt_to_seg = _boundary_distances(gt, seg)
    return math.sqrt(max(int(seg_to_gt.max()), int(gt_to_seg.max())))


def assd(gt, seg):
    """
    Average symmetric surface distance.

    The mean over the boundary pixels of both regions of their distance to
    the other region's boundary.
    """
    seg_to_gt, gt_to_seg = _boundary_distances(gt, seg)
    total = np.sqrt(seg_to_gt).sum() + np.sqrt(gt_to_seg).sum()
    return float(total / (seg_to_gt.size + gt_to_seg.size))


def _class_metrics(gt, seg, distances):
    precision, recall = precision_recall(gt, seg)
    out = OrderedDict([
        ('dsc', dsc_metric(gt, seg)),
        ('precision', precision),
        ('recall', recall),
    ])
    if distances:
        out['hd'] = hausdorff(gt, seg)
        out['assd'] = assd(gt, seg)
    return out


def evaluate(gt, seg, distances=True):
    """
    Every metric of a binary segmentation, reported as class 1.

    :param gt:
        ``BinaryMask`` ground truth

    :param seg:
        ``BinaryMask`` segmentation

    :param distances:
        Whether to compute HD and ASSD (which require non-empty masks)
    """
    report = MetricsReport({1: _class_metrics(gt, seg, distances)})
    log.debug('evaluate: %r', report.macro)
    return report


def evaluate_labels(gt, seg, num_labels=None, distances=True):
    """
    Per-class metrics of a label segmentation and their macro averages.

    Each foreground class ``1..L`` is evaluated one-vs-rest.

    :param gt:
        ``LabelMask`` ground truth

    :param seg:
        ``LabelMask`` segmentation

    :param num_labels:
        Highest class label ``L``; inferred from both masks if omitted

    :param distances:
        Whether to compute HD and ASSD
    """
    if isinstance(gt, BinaryMask):
        gt = LabelMask.from_binary(gt)
    if isinstance(seg, BinaryMask):
        seg = LabelMask.from_binary(seg)
    validators.validate_same_shape(gt, seg)

    if num_labels is None:
        num_labels = max(gt.max_label, seg.max_label)
    gt.validate_range(num_labels)
    seg.validate_range(num_labels)
    if num_labels < 1:
        raise exc.EmptyRegionError('No foreground class to evaluate.')

    per_class = OrderedDict()
    for label in range(1, num_labels + 1):
        per_class[label] = _class_metrics(
            gt.one_vs_rest(label), seg.one_vs_rest(label), distances)
    report = MetricsReport(per_class)
    log.debug('evaluate_labels: %r', report.macro)
    return report
