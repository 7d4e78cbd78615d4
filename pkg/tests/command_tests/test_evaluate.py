import logging
import math
import os

from django.core.management import call_command
import pytest

from ptaseg.util.commands import CommandError

from ..util import load_json
from .fixtures import files, label_files


log = logging.getLogger(__name__)


def test_evaluate(files):
    out = files.path('report.json')
    call_command(
        'evaluate', '--gt', files['gt'], '--pred', files['case2'], '-o', out)

    report = load_json(out)
    assert report['schema_version'] == '1.0'
    assert report['units'] == 'pixels'
    assert report['gt'] == files['gt']
    assert report['pred'] == files['case2']

    metrics = report['per_class']['1']
    assert metrics['dsc'] == pytest.approx(0.93555, abs=1e-5)
    assert metrics['precision'] == pytest.approx(3600 / 4096)
    assert metrics['recall'] == 1.0
    assert metrics['hd'] == pytest.approx(math.sqrt(8))
    assert report['macro']['dsc'] == metrics['dsc']


def test_evaluate_batch(files):
    out = files.path('reports')
    # Globs pair in sorted order; every case against itself.
    call_command(
        'evaluate', '--gt', files.path('case*.pgm'),
        '--pred', files.path('case*.pgm'), '-o', out, '--workers', '2')
    assert sorted(os.listdir(out)) == [
        'case%d.json' % i for i in range(1, 6)]
    for i in range(1, 6):
        report = load_json(os.path.join(out, 'case%d.json' % i))
        assert report['per_class']['1']['dsc'] == 1.0


def test_evaluate_labels(label_files):
    out = label_files.path('labels.json')
    call_command(
        'evaluate', '--gt', label_files['gt'], '--pred', label_files['pred'],
        '--labels', '2', '-o', out)

    report = load_json(out)
    assert sorted(report['per_class']) == ['1', '2']
    assert report['per_class']['2']['dsc'] == 1.0
    assert report['per_class']['1']['dsc'] == pytest.approx(2 * 575 / 1250)
    assert report['macro']['dsc'] == pytest.approx(
        (1.0 + 2 * 575 / 1250) / 2)


def test_evaluate_without_distances(files):
    empty = files.path('empty.pgm')
    with open(empty, 'wb') as f:
        f.write(b'P5\n200 200\n255\n' + b'\x00' * 40000)

    out = files.path('report.json')
    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', files['gt'], '--pred', empty, '-o', out)
    assert err.value.returncode == 4

    call_command(
        'evaluate', '--gt', files['gt'], '--pred', empty, '-o', out,
        '--no-distances')
    report = load_json(out)
    assert report['per_class']['1']['dsc'] == 0.0
    assert 'hd' not in report['per_class']['1']


def test_evaluate_truncated_file(files):
    bad = files.path('bad.pgm')
    with open(files['gt'], 'rb') as f:
        data = f.read()
    with open(bad, 'wb') as f:
        f.write(data[:-100])

    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', bad, '--pred', files['case1'],
            '-o', files.path('r.json'))
    assert err.value.returncode == 2
    assert 'byte offset %d' % (len(data) - 100) in str(err.value)


def test_evaluate_dimension_mismatch(files, label_files):
    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', files['gt'], '--pred', label_files['pred'],
            '-o', files.path('r.json'))
    assert err.value.returncode == 3


def test_evaluate_output_error(files):
    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', files['gt'], '--pred', files['case1'],
            '-o', files.path('missing/dir/r.json'))
    assert err.value.returncode == 6


def test_evaluate_batch_errors(files):
    bad = files.path('case9.pgm')
    with open(bad, 'wb') as f:
        f.write(b'P5\n200 200\n255\n')

    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', files.path('case*.pgm'),
            '--pred', files.path('case*.pgm'), '-o', files.path('out'))
    assert err.value.returncode == 2
    assert '1 of 6 input(s) failed' in str(err.value)

    # The other inputs were still processed.
    assert len(os.listdir(files.path('out'))) == 5


def test_evaluate_unpaired_globs(files):
    with pytest.raises(CommandError) as err:
        call_command(
            'evaluate', '--gt', files['gt'], '--pred', files.path('case*.pgm'),
            '-o', files.path('out'))
    assert err.value.returncode == 1
