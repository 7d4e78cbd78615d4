"""
Classical segmentation losses and their composition with the piecewise
boundary term.

Binary tasks pass a ``BinaryMask`` ground truth and one ``ProbabilityMap``.
Multi-class tasks pass a ``LabelMask`` and one probability map per class,
either as a sequence indexed by label or as a ``{label: map}`` dict; the
background map may be omitted and is then ``1 - sum(foreground)``.
"""

from collections import OrderedDict
import logging
import math

import numpy as np

from . import exc, geometry, validators
from .models import (
    BinaryMask, LabelMask, LossReport, ProbabilityMap, PtaConfig, WceWeights
)
from .models import constants
from .piecewise import piecewise_loss


log = logging.getLogger(__name__)


__all__ = (
    'ce_loss', 'wce_loss', 'dsc_loss', 'pta_loss', 'loss_grid',
    'DISTRIBUTION_TOLERANCE',
)


#: Slack allowed when per-class maps are checked to form a distribution
DISTRIBUTION_TOLERANCE = 1e-6


def _log_probs(probs, prob_min):
    return np.log(np.clip(probs, prob_min, 1.0))


def ce_loss(gt, pred, prob_min=1e-12):
    """
    Cross-entropy over the foreground: ``-sum(g * log f)``.

    Background pixels do not contribute.

    :param gt:
        ``BinaryMask`` ground truth

    :param pred:
        ``ProbabilityMap`` of the foreground

    :param prob_min:
        Probabilities are clamped into ``[prob_min, 1]`` before the logarithm
    """
    validators.validate_same_shape(gt, pred)
    return float(-_log_probs(pred.probs[gt.bits], prob_min).sum())


def _as_probability_map(pred):
    if isinstance(pred, BinaryMask):
        return pred.to_probability_map()
    if isinstance(pred, ProbabilityMap):
        return pred
    raise exc.ValidationError({
        'pred': 'Expected a ProbabilityMap, got %s.' % type(pred).__name__
    })


def _class_maps(gt, pred):
    """
    Normalize ``gt`` and ``pred`` into a ``LabelMask`` and a dict of
    foreground probability arrays keyed by class label.
    """
    if isinstance(gt, BinaryMask):
        gt = LabelMask.from_binary(gt)
    if isinstance(pred, (ProbabilityMap, BinaryMask)):
        pred = {1: pred}
    elif isinstance(pred, dict):
        pred = dict(pred)
    else:
        pred = dict(enumerate(pred))

    maps = OrderedDict(
        (int(label), _as_probability_map(pred[label]))
        for label in sorted(pred)
    )
    validators.validate_same_shape(gt, *maps.values())

    if not any(label != 0 for label in maps):
        raise exc.ValidationError({
            'pred': 'At least one foreground probability map is required.'
        })

    missing = [c for c in gt.classes if c not in maps]
    if missing:
        raise exc.ValidationError({
            'pred': 'No probability map for class(es) %s.' % missing
        })

    if len(maps) > 1:
        total = sum(m.probs for m in maps.values())
        if total.max() > 1.0 + DISTRIBUTION_TOLERANCE:
            raise exc.ValidationError({
                'pred': 'Class probabilities sum to %r > 1.' % total.max()
            })
    return gt, maps


def _background(maps):
    if 0 in maps:
        return maps[0].probs
    foreground = sum(m.probs for label, m in maps.items() if label != 0)
    return np.clip(1.0 - foreground, 0.0, 1.0)


def wce_loss(gt, pred, weights=None, prob_min=1e-12):
    """
    Weighted cross-entropy ``-sum(w(class(x)) * log f_class(x)(x))``.

    Every pixel contributes through the map of its own class, weighted by the
    weight of that class.

    :param gt:
        ``LabelMask`` (or ``BinaryMask`` for a binary task)

    :param pred:
        Per-class probability maps; a single map is the foreground of a
        binary task

    :param weights:
        ``WceWeights``; defaults to the configured weights

    :param prob_min:
        Probabilities are clamped into ``[prob_min, 1]`` before the logarithm
    """
    if weights is None:
        weights = WceWeights.from_settings()
    gt, maps = _class_maps(gt, pred)

    top = max(gt.max_label, max(maps))
    stack = np.zeros((top + 1,) + gt.shape)
    stack[0] = _background(maps)
    for label, pmap in maps.items():
        stack[label] = pmap.probs

    labels = gt.labels
    chosen = np.take_along_axis(stack, labels[np.newaxis], axis=0)[0]
    w = np.array([weights.weight(c) for c in range(top + 1)])[labels]
    return float(-(w * _log_probs(chosen, prob_min)).sum())


def dsc_loss(gt, seg):
    """
    Dice loss ``1 - 2|G & S| / (|G| + |S|)``; 0 when both masks are empty.
    """
    validators.validate_same_shape(gt, seg)
    denom = gt.count + seg.count
    if denom == 0:
        return 0.0
    return 1.0 - 2.0 * (gt & seg).count / denom


def _segmentations(maps, threshold):
    return OrderedDict(
        (label, geometry.threshold(pmap, threshold))
        for label, pmap in maps.items() if label != 0
    )


def _base_loss(base, gt, maps, segs, weights, prob_min):
    """Base loss of a normalized task; multi-class CE/DSC run per class."""
    if base == constants.BASE_WCE:
        return wce_loss(gt, maps, weights, prob_min)

    values = []
    for label, seg in segs.items():
        truth = gt.one_vs_rest(label)
        if base == constants.BASE_CE:
            values.append(ce_loss(truth, maps[label], prob_min))
        else:
            values.append(dsc_loss(truth, seg))

    if base == constants.BASE_CE:
        return math.fsum(values)
    return math.fsum(values) / len(values)


def _piecewise_term(image, segs, cfg):
    """
    Per-class piecewise reports and the reason the term is unavailable, if
    it is.
    """
    per_class = OrderedDict()
    degenerate = None
    for label, seg in segs.items():
        if seg.is_empty:
            log.debug('class %r: empty segmentation', label)
            per_class[label] = None
            degenerate = degenerate or constants.DEGENERATE_EMPTY
            continue
        try:
            sectors = geometry.sectorize(seg, cfg.band_width, cfg.sectors)
            per_class[label] = piecewise_loss(
                image, sectors, cfg.mode, cfg.epsilon)
        except exc.DegenerateBandError:
            log.debug('class %r: degenerate bands', label)
            per_class[label] = None
            degenerate = degenerate or constants.DEGENERATE_BANDS
    return per_class, degenerate


def pta_loss(image, gt, pred, base=constants.BASE_DSC, cfg=None, weights=None):
    """
    Base loss plus ``lam`` times the piecewise boundary term.

    The segmentation of each foreground class is its probability map
    thresholded at ``cfg.threshold``; the piecewise term is computed per class
    and averaged. When a segmentation is empty, or none of its sectors can be
    evaluated, the report carries the base loss with ``l_pt`` and ``total``
    set to ``None`` and ``degenerate`` naming the reason.

    :param image:
        ``GrayImage``

    :param gt:
        ``BinaryMask`` or ``LabelMask`` ground truth for the base loss

    :param pred:
        Probability map(s), or a ``BinaryMask`` used as a 0/1 map

    :param base:
        One of ``'ce'``, ``'wce'``, ``'dsc'``

    :param cfg:
        ``PtaConfig``; defaults to the configured values

    :param weights:
        ``WceWeights`` for the ``'wce'`` base
    """
    base = validators.validate_choice(base, constants.BASES, 'base')
    if cfg is None:
        cfg = PtaConfig.from_settings()
    gt, maps = _class_maps(gt, pred)
    validators.validate_same_shape(image, gt)

    segs = _segmentations(maps, cfg.threshold)
    base_value = _base_loss(base, gt, maps, segs, weights, cfg.prob_min)
    per_class, degenerate = _piecewise_term(image, segs, cfg)

    report = LossReport(
        base, base_value, cfg.lam, per_class, degenerate=degenerate,
        config=cfg,
    )
    log.debug('pta_loss: %r', report)
    return report


def loss_grid(image, gt, pred, cfg=None, weights=None):
    """
    Every base loss combined with every additive term.

    Returns one row per ``(base, additive)`` pair: ``'none'`` is the bare base
    loss, ``'spta'`` adds the mean-difference term and ``'pta'`` the t-test
    term, both weighted by ``cfg.lam``.
    """
    if cfg is None:
        cfg = PtaConfig.from_settings()
    gt, maps = _class_maps(gt, pred)
    validators.validate_same_shape(image, gt)
    segs = _segmentations(maps, cfg.threshold)

    terms = {}
    for additive, mode in (('spta', constants.MODE_MEAN_DIFF),
                           ('pta', constants.MODE_TTEST)):
        terms[additive] = _piecewise_term(image, segs, cfg.replace(mode=mode))

    rows = []
    for base in constants.BASES:
        value = _base_loss(base, gt, maps, segs, weights, cfg.prob_min)
        for additive in constants.ADDITIVES:
            if additive == 'none':
                l_pt, total, degenerate = None, value, None
            else:
                per_class, degenerate = terms[additive]
                report = LossReport(
                    base, value, cfg.lam, per_class, degenerate=degenerate,
                    config=cfg,
                )
                l_pt, total = report.l_pt, report.total
            rows.append(OrderedDict([
                ('base', base),
                ('additive', additive),
                ('base_loss', value),
                ('l_pt', l_pt),
                ('total', total),
                ('degenerate', degenerate),
            ]))
    return rows
