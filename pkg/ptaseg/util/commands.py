"""
Customized base Django management command specialized for ptaseg.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import logging
import os
import time

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from .. import exc
from ..models import constants
from .core import expand_paths, parse_floats


__all__ = ('PtasegCommand', 'CommandError')


class PtasegCommand(BaseCommand):
    """
    Base management command for ptaseg.

    Sets up the ``ptaseg_cli`` logger from ``--verbosity`` and turns
    ``ptaseg.exc.Error`` into a ``CommandError`` whose ``returncode`` is the
    error's exit code.
    """
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        """Override default parser to include default values in help."""
        parser = super(PtasegCommand, self).create_parser(
            prog_name, subcommand, **kwargs
        )

        # So that we can see default values in the help text.
        parser.formatter_class = argparse.ArgumentDefaultsHelpFormatter

        return parser

    def get_loglevel(self, verbosity, as_string=False):
        """Get the log-level."""
        if verbosity < 1:
            level_name = 'notset'
        elif verbosity > 1:
            level_name = 'debug'
        else:
            level_name = 'info'

        if as_string:
            return level_name
        else:
            return getattr(logging, level_name.upper())

    def set_logging(self, verbosity):
        """Set the log-level."""
        log = logging.getLogger('ptaseg_cli')

        loglevel = self.get_loglevel(verbosity)
        log.setLevel(loglevel)

        self.log = log

    def execute(self, *args, **options):
        """Setup our logging object before execution."""
        self.set_logging(options.get('verbosity', 1))

        try:
            return super(PtasegCommand, self).execute(*args, **options)
        except exc.Error as err:
            raise CommandError(str(err), returncode=err.exit_code)

    ###########
    # Arguments
    ###########
    def add_pta_arguments(self, parser, band_width=None):
        """Flags shared by every command that evaluates the boundary term."""
        parser.add_argument(
            '-K', '--sectors',
            type=int,
            default=settings.PTASEG_SECTORS,
            help='Number of angular sectors.',
        )
        parser.add_argument(
            '-d', '--band-width',
            type=float,
            default=band_width or settings.PTASEG_BAND_WIDTH,
            help='Band width in pixels.',
        )
        parser.add_argument(
            '--mode',
            choices=constants.MODES,
            default=settings.PTASEG_MODE,
            help="Per-sector statistic ('mean-diff' is the simplified loss).",
        )
        parser.add_argument(
            '--epsilon',
            type=float,
            default=settings.PTASEG_EPSILON,
            help='Floor applied to the statistic before the reciprocal.',
        )

    def add_workers_argument(self, parser):
        parser.add_argument(
            '-w', '--workers',
            type=int,
            default=settings.PTASEG_NUM_WORKERS,
            help='Number of inputs processed concurrently.',
        )

    def parse_weights(self, value):
        if value is None:
            return None
        return parse_floats(value, 'weights')

    #########
    # Batches
    #########
    def expand_inputs(self, **patterns):
        """
        Expand each named glob and pair the matches in sorted order.

        Returns a list of ``{name: path}`` dicts, one per input set. Every
        pattern must match the same number of files.
        """
        expanded = dict(
            (name, expand_paths([pattern]))
            for name, pattern in patterns.items()
        )
        sizes = set(len(paths) for paths in expanded.values())
        if len(sizes) > 1:
            raise exc.ValidationError({
                'inputs': 'Patterns match different numbers of files: %s' % (
                    ', '.join('%s=%d' % (name, len(paths))
                              for name, paths in sorted(expanded.items())))
            })
        count = sizes.pop()
        return [
            dict((name, paths[i]) for name, paths in expanded.items())
            for i in range(count)
        ]

    def output_path(self, out, source, batch, ext='.json'):
        """
        Where the output for ``source`` goes: ``out`` itself for a single
        input, ``out/<source stem><ext>`` for a batch.
        """
        if not batch:
            return out
        try:
            os.makedirs(out, exist_ok=True)
        except OSError as err:
            raise exc.OutputError('Unable to create %s: %s' % (out, err))
        stem = os.path.splitext(os.path.basename(source))[0]
        return os.path.join(out, stem + ext)

    def run_batch(self, jobs, func, workers=1, label=None):
        """
        Call ``func(job)`` for every job, ``workers`` at a time.

        A single failing job raises its own error. For a batch, failures are
        logged and a ``CommandError`` with the highest exit code is raised
        once every job has finished.
        """
        if label is None:
            label = repr

        def call(job):
            start = time.time()
            try:
                func(job)
            except exc.Error as err:
                self.log.error('%s: %s', label(job), err)
                return err
            finally:
                self.log.info(
                    '%s: %.0fms', label(job), (time.time() - start) * 1000)
            return None

        if len(jobs) == 1:
            error = call(jobs[0])
            if error is not None:
                raise error
            return

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            errors = [e for e in pool.map(call, jobs) if e is not None]

        if errors:
            raise CommandError(
                '%d of %d input(s) failed: %s' % (
                    len(errors), len(jobs), '; '.join(str(e) for e in errors)),
                returncode=max(e.exit_code for e in errors),
            )
