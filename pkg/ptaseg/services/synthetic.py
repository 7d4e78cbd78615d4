"""
The synthetic boundary-offset experiment.

A square "organ" is drawn from one normal distribution on a background drawn
from another. Five candidate segmentations are compared against it: the exact
square, a dilated and an eroded copy, and copies shifted horizontally and
diagonally. For each case the piecewise boundary loss and the F1 score are
reported.
"""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
import math
import os

import numpy as np

from .. import exc, geometry, imageio
from ..api import renderers, serializers
from ..metrics import dsc_metric
from ..models import (
    BinaryMask, CaseResult, GrayImage, PtaConfig, SyntheticSpec
)
from ..models import constants
from ..piecewise import piecewise_loss
from .base import Service


__all__ = (
    'replicate_rng', 'generate_image', 'offset_cases', 'evaluate_cases',
    'run_table1', 'run_real_overlay', 'summarize', 'table_rows',
    'SimulationService',
)


def _simulation_config():
    from django.conf import settings
    return PtaConfig.from_settings(
        band_width=settings.PTASEG_SIMULATION_BAND_WIDTH)


def replicate_rng(seed, replicate):
    """
    Independent generator for one replicate.

    Each replicate draws from its own ``SeedSequence`` substream, so results
    do not depend on the order or the thread in which replicates run.
    """
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(replicate,)))


def generate_image(spec, seed=None, rng=None):
    """
    Draw a synthetic image and return it with its ground truth.

    :param spec:
        ``SyntheticSpec``

    :param seed:
        Seed of the generator; defaults to ``spec.seed``

    :param rng:
        A ``numpy.random.Generator`` to draw from instead
    """
    if rng is None:
        rng = np.random.default_rng(spec.seed if seed is None else seed)
    gt = BinaryMask.rectangle(spec.size, spec.size, spec.rect, spec.rect)
    z = rng.standard_normal((spec.size, spec.size))
    values = np.where(
        gt.bits,
        spec.mean_inside + spec.sigma_inside * z,
        spec.mean_outside + spec.sigma_outside * z,
    )
    return GrayImage(values), gt


def offset_cases(gt, offset, shift=None):
    """
    The five candidate segmentations of ``gt``, in case order.

    1. ``gt`` itself
    2. ``gt`` dilated by ``offset``
    3. ``gt`` eroded by ``offset``
    4. ``gt`` shifted right by ``shift``
    5. ``gt`` shifted right and down by ``shift``

    For a rectangle, dilation and erosion grow and shrink it by ``offset``
    pixels on every side.

    :param gt:
        Non-empty ``BinaryMask``

    :param offset:
        Dilation/erosion radius in pixels

    :param shift:
        Shift in pixels; defaults to ``offset``
    """
    if shift is None:
        shift = offset
    return [
        gt,
        geometry.dilate(gt, offset),
        geometry.erode(gt, offset),
        geometry.shift(gt, shift, 0),
        geometry.shift(gt, shift, shift),
    ]


def evaluate_cases(image, gt, masks, cfg, replicate=None):
    """Piecewise loss and F1 of each candidate mask."""
    results = []
    for case, mask in enumerate(masks, 1):
        sectors = geometry.sectorize(mask, cfg.band_width, cfg.sectors)
        report = piecewise_loss(image, sectors, cfg.mode, cfg.epsilon)
        results.append(
            CaseResult(case, report, dsc_metric(gt, mask), replicate))
    return results


def _run_replicate(spec, cfg, replicate):
    image, gt = generate_image(spec, rng=replicate_rng(spec.seed, replicate))
    masks = offset_cases(gt, spec.offset, spec.shift)
    return evaluate_cases(image, gt, masks, cfg, replicate)


def run_table1(spec=None, cfg=None, workers=1):
    """
    Run every replicate of the synthetic experiment.

    Returns the ``CaseResult`` list ordered by replicate, then case. The
    output is identical for any ``workers``.

    :param spec:
        ``SyntheticSpec``; defaults to the configured experiment

    :param cfg:
        ``PtaConfig``; defaults to the configured one with the simulation
        band width

    :param workers:
        Number of threads replicates are spread over
    """
    if spec is None:
        spec = SyntheticSpec.from_settings()
    if cfg is None:
        cfg = _simulation_config()

    replicates = range(spec.replicates)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_replicate = list(pool.map(
                lambda r: _run_replicate(spec, cfg, r), replicates))
    else:
        per_replicate = [_run_replicate(spec, cfg, r) for r in replicates]

    return [result for results in per_replicate for result in results]


def run_real_overlay(image, gt, offset=3, cfg=None):
    """
    The five offset cases on a supplied image and ground truth.

    Deterministic: nothing is drawn at random.

    :param image:
        ``GrayImage``

    :param gt:
        Non-empty ``BinaryMask`` of the same size

    :param offset:
        Offset in pixels for every case

    :param cfg:
        ``PtaConfig``
    """
    if cfg is None:
        cfg = _simulation_config()
    if gt.is_empty:
        raise exc.EmptyRegionError('Ground truth is empty.')
    masks = offset_cases(gt, offset, offset)
    return evaluate_cases(image, gt, masks, cfg)


def _mean(values):
    return math.fsum(values) / len(values) if values else None


def summarize(results):
    """
    Average the per-replicate results of each case.

    Returns ``{'cases': [...], 'ordering': {...}}``. Each case carries the
    mean and sample standard deviation (``ddof=1``) of the aggregate over
    replicates, the mean of each sector's loss over the replicates where it
    was valid and the F1 score. ``ordering`` gives the fraction of replicates
    in which the exact mask has the smallest aggregate and the diagonal shift
    the largest.
    """
    by_case = OrderedDict()
    by_replicate = OrderedDict()
    for result in results:
        by_case.setdefault(result.case, []).append(result)
        by_replicate.setdefault(result.replicate, {})[result.case] = result

    cases = []
    for case, rows in by_case.items():
        aggregates = np.array([r.aggregate for r in rows])
        per_sector = zip(*[r.losses for r in rows])
        cases.append(OrderedDict([
            ('case', case),
            ('name', constants.CASE_NAMES[case - 1]),
            ('replicates', len(rows)),
            ('aggregate_mean', float(aggregates.mean())),
            ('aggregate_std', (
                float(aggregates.std(ddof=1)) if len(rows) > 1 else None)),
            ('sector_means', [
                _mean([v for v in values if v is not None])
                for values in per_sector
            ]),
            ('f1', _mean([r.f1 for r in rows])),
        ]))

    minimal = maximal = 0
    for row in by_replicate.values():
        aggregates = {case: r.aggregate for case, r in row.items()}
        lowest = min(aggregates, key=aggregates.get)
        highest = max(aggregates, key=aggregates.get)
        minimal += lowest == 1
        maximal += highest == len(constants.CASE_NAMES)

    count = len(by_replicate)
    return OrderedDict([
        ('cases', cases),
        ('ordering', OrderedDict([
            ('case1_minimal', minimal / count if count else None),
            ('case5_maximal', maximal / count if count else None),
        ])),
    ])


def table_rows(results, num_sectors):
    """Yield one CSV row per result: case, replicate, losses, aggregate, f1."""
    yield (
        ['case', 'replicate'] +
        ['loss_%d' % i for i in range(1, num_sectors + 1)] +
        ['aggregate', 'f1']
    )
    for result in results:
        yield (
            [result.case, result.replicate] + list(result.losses) +
            [result.aggregate, result.f1]
        )


class SimulationService(Service):
    """
    Run the synthetic experiment and write its results to a directory.

    Writes ``table1.csv``, ``summary.json`` and ``sectors_case<N>.pgm`` (the
    sector partition of each case). With an image and ground truth, the
    overlay analysis is added as ``overlay.csv``.
    """
    name = 'simulate'

    def __init__(self, out_dir, spec=None, cfg=None, workers=1, image=None,
                 gt=None, overlay_offset=3, log=None):
        super(SimulationService, self).__init__(log=log)
        self.out_dir = out_dir
        self.spec = spec if spec is not None else SyntheticSpec.from_settings()
        self.cfg = cfg if cfg is not None else _simulation_config()
        self.workers = workers
        self.image = image
        self.gt = gt
        self.overlay_offset = overlay_offset

    def _path(self, name):
        return os.path.join(self.out_dir, name)

    def prepare(self):
        try:
            os.makedirs(self.out_dir, exist_ok=True)
        except OSError as err:
            raise exc.OutputError(
                'Unable to create %s: %s' % (self.out_dir, err))

    def write_visualizations(self):
        gt = BinaryMask.rectangle(
            self.spec.size, self.spec.size, self.spec.rect, self.spec.rect)
        masks = offset_cases(gt, self.spec.offset, self.spec.shift)
        paths = []
        for case, mask in enumerate(masks, 1):
            sectors = geometry.sectorize(
                mask, self.cfg.band_width, self.cfg.sectors)
            path = self._path('sectors_case%d.pgm' % case)
            imageio.write_labels(path, sectors.visualization())
            paths.append(path)
        return paths

    def run(self):
        self.prepare()
        self.log.info(
            'Running %d replicate(s) with seed %d on %d worker(s)',
            self.spec.replicates, self.spec.seed, self.workers,
        )
        results = run_table1(self.spec, self.cfg, self.workers)
        summary = summarize(results)

        renderers.write_csv(
            self._path('table1.csv'), table_rows(results, self.cfg.sectors))
        renderers.write_json(
            self._path('summary.json'),
            serializers.SimulationSummarySerializer({
                'spec': self.spec,
                'config': self.cfg,
                'summary': summary,
            }).data,
        )
        outputs = ['table1.csv', 'summary.json']
        outputs.extend(
            os.path.basename(p) for p in self.write_visualizations())

        if self.image is not None and self.gt is not None:
            overlay = run_real_overlay(
                self.image, self.gt, self.overlay_offset, self.cfg)
            renderers.write_csv(
                self._path('overlay.csv'),
                [['case', 'name', 'aggregate', 'f1']] + [
                    [r.case, r.name, r.aggregate, r.f1] for r in overlay
                ],
            )
            outputs.append('overlay.csv')

        self.log.info('Wrote %s to %s', ', '.join(outputs), self.out_dir)
        return summary
