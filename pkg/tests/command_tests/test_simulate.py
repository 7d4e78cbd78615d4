import logging
import os

from django.core.management import call_command
import pytest

from ptaseg.util.commands import CommandError

from ..util import load_json
from .fixtures import files


log = logging.getLogger(__name__)


def _simulate(out, *args):
    call_command('simulate', '-r', '3', '-o', str(out), *args)
    with open(os.path.join(str(out), 'table1.csv'), 'rb') as f:
        return f.read()


def test_simulate(tmp_path):
    out = tmp_path / 'sim'
    table = _simulate(out, '-s', '11')

    assert sorted(os.listdir(str(out))) == sorted(
        ['table1.csv', 'summary.json'] +
        ['sectors_case%d.pgm' % i for i in range(1, 6)])

    # Header plus one row per case and replicate.
    assert len(table.splitlines()) == 1 + 5 * 3

    summary = load_json(str(out / 'summary.json'))
    assert summary['schema_version'] == '1.0'
    assert summary['spec']['seed'] == 11
    assert summary['spec']['replicates'] == 3
    assert summary['config']['band_width'] == 8.0
    assert len(summary['summary']['cases']) == 5


def test_simulate_is_deterministic(tmp_path):
    first = _simulate(tmp_path / 'a', '-s', '5', '-w', '1')
    second = _simulate(tmp_path / 'b', '-s', '5', '-w', '3')
    assert first == second

    other = _simulate(tmp_path / 'c', '-s', '6')
    assert other != first


def test_simulate_overlay(files, tmp_path):
    out = tmp_path / 'sim'
    _simulate(out, '--image', files['image'], '--gt', files['gt'])
    with open(str(out / 'overlay.csv')) as f:
        rows = f.read().splitlines()
    assert rows[0] == 'case,name,aggregate,f1'
    assert len(rows) == 6


def test_simulate_overlay_needs_both(files, tmp_path):
    with pytest.raises(CommandError) as err:
        call_command(
            'simulate', '--image', files['image'], '-o', str(tmp_path))
    assert err.value.returncode == 1


def test_simulate_bad_config(tmp_path):
    with pytest.raises(CommandError) as err:
        call_command('simulate', '-r', '0', '-o', str(tmp_path))
    assert err.value.returncode == 1


def test_simulate_output_error(tmp_path):
    blocker = tmp_path / 'file'
    blocker.write_text('x')
    with pytest.raises(CommandError) as err:
        call_command(
            'simulate', '-r', '1', '-o', str(blocker / 'sim'))
    assert err.value.returncode == 6
