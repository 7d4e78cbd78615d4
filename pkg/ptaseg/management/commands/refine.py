"""
Command to refine a mask by local search on the boundary loss.
"""

import os

from django.conf import settings

from ptaseg import imageio
from ptaseg.models import PtaConfig, RefineConfig
from ptaseg.models import constants
from ptaseg.services.refine import RefineService
from ptaseg.util.commands import PtasegCommand


class Command(PtasegCommand):
    help = (
        'Refine a segmentation by shifting runs of its edge to lower the '
        'piecewise boundary loss plus a fidelity penalty. Writes the final '
        'mask and a per-iteration trace CSV.'
    )

    def add_arguments(self, parser):
        parser.add_argument(
            '--image',
            required=True,
            help='Grayscale image file.',
        )
        parser.add_argument(
            '--init',
            required=True,
            help='Initial mask file.',
        )
        parser.add_argument(
            '--mu',
            type=float,
            default=settings.PTASEG_REFINE_MU,
            help='Fidelity weight per changed pixel, relative to |init|.',
        )
        parser.add_argument(
            '-n', '--iters',
            type=int,
            default=settings.PTASEG_REFINE_ITERATIONS,
            help='Number of iterations.',
        )
        parser.add_argument(
            '--moves',
            type=int,
            default=settings.PTASEG_REFINE_MOVES,
            help='Edge moves scored per iteration.',
        )
        parser.add_argument(
            '--acceptance',
            choices=constants.ACCEPTANCE_RULES,
            default=settings.PTASEG_REFINE_ACCEPTANCE,
            help='Acceptance rule.',
        )
        parser.add_argument(
            '--temperature',
            type=float,
            default=settings.PTASEG_REFINE_TEMPERATURE,
            help='Starting temperature for annealing.',
        )
        parser.add_argument(
            '--cooling',
            type=float,
            default=settings.PTASEG_REFINE_COOLING,
            help='Geometric cooling factor for annealing.',
        )
        parser.add_argument(
            '-s', '--seed',
            type=int,
            default=settings.PTASEG_SIMULATION_SEED,
            help='Seed of the move sampler.',
        )
        parser.add_argument(
            '-o', '--out',
            required=True,
            help='Output mask file (PGM/PNG).',
        )
        parser.add_argument(
            '--trace',
            default=None,
            help='Trace CSV file (default: <out stem>.trace.csv).',
        )
        self.add_pta_arguments(
            parser, band_width=settings.PTASEG_REFINE_BAND_WIDTH)

    def handle(self, **options):
        pta = PtaConfig.from_settings(
            sectors=options['sectors'],
            band_width=options['band_width'],
            epsilon=options['epsilon'],
            mode=options['mode'],
        )
        rc = RefineConfig.from_settings(
            pta=pta,
            mu=options['mu'],
            max_iters=options['iters'],
            moves_per_iter=options['moves'],
            acceptance=options['acceptance'],
            temperature=options['temperature'],
            cooling=options['cooling'],
            seed=options['seed'],
        )

        out = options['out']
        trace = options['trace']
        if trace is None:
            trace = os.path.splitext(out)[0] + '.trace.csv'

        imageio.format_for(out)
        image = imageio.read_image(options['image'])
        init = imageio.read_mask(options['init'])
        RefineService(image, init, out, trace, rc=rc, log=self.log).run()
