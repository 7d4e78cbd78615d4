import logging
import os

import numpy as np
import pytest

from ptaseg import exc, geometry, imageio
from ptaseg.models import BinaryMask, PtaConfig, SyntheticSpec
from ptaseg.services.synthetic import (
    SimulationService, evaluate_cases, generate_image, offset_cases,
    replicate_rng, run_real_overlay, run_table1, summarize, table_rows,
)

from ..model_tests.fixtures import (
    cases, narrow_cfg, spec, square, synthetic, wide_cfg
)
from ..util import load_json


log = logging.getLogger(__name__)


@pytest.fixture(scope='module')
def table1():
    """Every replicate of the default experiment with the wide band."""
    return run_table1(SyntheticSpec(), PtaConfig(band_width=8.0))


def _by_case(results):
    out = {}
    for result in results:
        out.setdefault(result.case, []).append(result.aggregate)
    return dict((case, np.array(values)) for case, values in out.items())


def test_generate_image_is_seeded(spec):
    image, gt = generate_image(spec, seed=11)
    again, _ = generate_image(spec, seed=11)
    other, _ = generate_image(spec, seed=12)
    assert image == again
    assert image != other
    assert gt.count == 3600


def test_generate_image_distribution(synthetic):
    image, gt = synthetic
    inside = image.values[gt.bits]
    outside = image.values[~gt.bits]
    assert abs(inside.mean() - 3.5) < 4 * 2.0 / 60
    assert abs(outside.mean()) < 4 * 2.0 / np.sqrt(outside.size)
    assert abs(inside.std(ddof=1) - 2.0) < 0.2
    assert abs(outside.std(ddof=1) - 2.0) < 0.1


def test_replicate_streams_differ():
    a = replicate_rng(0, 0).standard_normal(5)
    b = replicate_rng(0, 1).standard_normal(5)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, replicate_rng(0, 0).standard_normal(5))


def test_offset_cases(square, cases):
    assert [m.count for m in cases] == [3600, 4096, 3136, 3600, 3600]
    assert cases[0] == square
    assert cases[3] == BinaryMask.rectangle(200, 200, (75, 135), (70, 130))
    assert cases[4] == BinaryMask.rectangle(200, 200, (75, 135), (75, 135))

    # The shift defaults to the offset.
    assert offset_cases(square, 2)[4].coords().min(axis=0).tolist() == [72, 72]


def test_evaluate_cases(synthetic, cases, wide_cfg):
    image, gt = synthetic
    results = evaluate_cases(image, gt, cases, wide_cfg, replicate=7)
    assert [r.case for r in results] == [1, 2, 3, 4, 5]
    assert [r.name for r in results] == [
        'correct', 'large', 'small', 'horizontal', 'diagonal']
    assert all(r.replicate == 7 for r in results)

    expected = [1.0, 0.93555, 0.93112, 0.91667, 0.84028]
    for result, f1 in zip(results, expected):
        assert result.f1 == pytest.approx(f1, abs=1e-5)
        assert len(result.losses) == 10


def test_workers_do_not_change_results():
    spec = SyntheticSpec(replicates=4, seed=3)
    cfg = PtaConfig(band_width=8.0)

    def rows(results):
        return [
            (r.case, r.replicate, r.aggregate, r.f1, r.losses)
            for r in results
        ]

    serial = run_table1(spec, cfg, workers=1)
    threaded = run_table1(spec, cfg, workers=3)
    assert len(serial) == 20
    assert rows(serial) == rows(threaded)
    assert [r.replicate for r in serial[:6]] == [0, 0, 0, 0, 0, 1]


def test_case_ordering(table1):
    aggregates = _by_case(table1)
    means = dict((case, v.mean()) for case, v in aggregates.items())
    log.debug('means = %r', means)

    assert means[1] < means[2] < means[4] < means[5]
    assert means[1] < means[3] < means[4]


def test_stronger_contrast_lowers_the_loss():
    cfg = PtaConfig(band_width=8.0)
    faint = _by_case(run_table1(SyntheticSpec(replicates=5), cfg))
    strong = _by_case(
        run_table1(SyntheticSpec(replicates=5, mean_inside=7.0), cfg))
    assert strong[1].mean() < faint[1].mean()


def test_worst_sector_is_on_the_misplaced_edge(table1, square, cases):
    """
    Case 4 is shifted sideways, so its left and right sectors carry the
    pixels it gets wrong; the top and bottom sectors sit on the true edge.
    """
    sectors = geometry.sectorize(cases[3], 8.0, 10)
    wrong = (cases[3] ^ square).bits
    touched = set(sectors.inner_labels[wrong].tolist())
    touched |= set(sectors.outer_labels[wrong].tolist())
    touched.discard(0)
    assert 0 < len(touched) < 10

    for result in table1:
        if result.case != 4:
            continue
        scored = [
            (loss, i) for i, loss in enumerate(result.losses, 1)
            if loss is not None
        ]
        worst = max(scored)[1]
        assert worst in touched, result


def test_summary(table1):
    summary = summarize(table1)
    cases = summary['cases']
    assert [c['case'] for c in cases] == [1, 2, 3, 4, 5]
    assert all(c['replicates'] == 20 for c in cases)
    assert all(len(c['sector_means']) == 10 for c in cases)
    assert cases[0]['f1'] == 1.0
    assert cases[4]['f1'] == pytest.approx(0.84028, abs=1e-5)
    assert cases[0]['aggregate_std'] > 0

    aggregates = _by_case(table1)
    assert cases[2]['aggregate_mean'] == pytest.approx(aggregates[3].mean())
    assert cases[2]['aggregate_std'] == pytest.approx(
        aggregates[3].std(ddof=1))

    assert summary['ordering']['case1_minimal'] >= 0.95
    assert summary['ordering']['case5_maximal'] >= 0.95


def test_summary_of_one_replicate(synthetic, cases, wide_cfg):
    image, gt = synthetic
    summary = summarize(evaluate_cases(image, gt, cases, wide_cfg, 0))
    assert summary['cases'][0]['aggregate_std'] is None


def test_table_rows(table1):
    rows = list(table_rows(table1, 10))
    assert rows[0] == (
        ['case', 'replicate'] + ['loss_%d' % i for i in range(1, 11)] +
        ['aggregate', 'f1']
    )
    assert len(rows) == 1 + 5 * 20
    assert rows[1][:2] == [1, 0]
    assert len(rows[1]) == 14


def test_real_overlay(synthetic, wide_cfg):
    image, gt = synthetic
    results = run_real_overlay(image, gt, offset=3, cfg=wide_cfg)
    assert [r.replicate for r in results] == [None] * 5
    assert results[1].f1 == pytest.approx(7200 / 7956)
    assert min(results, key=lambda r: r.aggregate).case == 1

    with pytest.raises(exc.EmptyRegionError):
        run_real_overlay(image, BinaryMask.empty(200, 200), cfg=wide_cfg)


def test_simulation_service(tmp_path, synthetic, wide_cfg):
    image, gt = synthetic
    out = str(tmp_path / 'run')
    service = SimulationService(
        out, spec=SyntheticSpec(replicates=3), cfg=wide_cfg, image=image,
        gt=gt)
    summary = service.run()
    assert len(summary['cases']) == 5

    expected = ['table1.csv', 'summary.json', 'overlay.csv'] + [
        'sectors_case%d.pgm' % i for i in range(1, 6)]
    assert sorted(os.listdir(out)) == sorted(expected)

    report = load_json(os.path.join(out, 'summary.json'))
    assert report['schema_version'] == '1.0'
    assert report['spec']['replicates'] == 3
    assert report['config']['band_width'] == 8.0
    assert len(report['summary']['cases']) == 5

    with open(os.path.join(out, 'table1.csv')) as f:
        assert len(f.read().splitlines()) == 1 + 5 * 3

    sectors = imageio.read_mask(
        os.path.join(out, 'sectors_case1.pgm'), labels=True)
    assert sectors.classes == list(range(1, 11)) + list(range(129, 139))


def test_simulation_service_output_error(tmp_path):
    blocker = tmp_path / 'file'
    blocker.write_text('')
    service = SimulationService(
        str(blocker / 'run'), spec=SyntheticSpec(replicates=1))
    with pytest.raises(exc.OutputError):
        service.run()
