"""
Command to run the synthetic boundary-offset experiment.
"""

from django.conf import settings

from ptaseg import exc, imageio
from ptaseg.models import PtaConfig, SyntheticSpec
from ptaseg.services.synthetic import SimulationService
from ptaseg.util.commands import PtasegCommand


class Command(PtasegCommand):
    help = (
        'Compare the piecewise boundary loss of five offset segmentations of '
        'a synthetic square, over seeded replicates. Writes table1.csv, '
        'summary.json and per-case sector maps to --out; with --image and '
        '--gt the five cases are also recreated on that image (overlay.csv).'
    )

    def add_arguments(self, parser):
        parser.add_argument(
            '-s', '--seed',
            type=int,
            default=settings.PTASEG_SIMULATION_SEED,
            help='Root seed; replicate r draws from substream r.',
        )
        parser.add_argument(
            '-r', '--replicates',
            type=int,
            default=settings.PTASEG_SIMULATION_REPLICATES,
            help='Number of replicates.',
        )
        parser.add_argument(
            '--offset',
            type=int,
            default=settings.PTASEG_SIMULATION_OFFSET,
            help='Dilation/erosion offset of cases 2 and 3, in pixels.',
        )
        parser.add_argument(
            '--shift',
            type=int,
            default=settings.PTASEG_SIMULATION_SHIFT,
            help='Shift of cases 4 and 5, in pixels.',
        )
        parser.add_argument(
            '--image',
            default=None,
            help='Image for the overlay analysis.',
        )
        parser.add_argument(
            '--gt',
            default=None,
            help='Ground-truth mask for the overlay analysis.',
        )
        parser.add_argument(
            '--overlay-offset',
            type=int,
            default=settings.PTASEG_OVERLAY_OFFSET,
            help='Offset of every case in the overlay analysis.',
        )
        parser.add_argument(
            '-o', '--out',
            required=True,
            help='Output directory.',
        )
        self.add_pta_arguments(
            parser, band_width=settings.PTASEG_SIMULATION_BAND_WIDTH)
        self.add_workers_argument(parser)

    def handle(self, **options):
        spec = SyntheticSpec.from_settings(
            seed=options['seed'],
            replicates=options['replicates'],
            offset=options['offset'],
            shift=options['shift'],
        )
        cfg = PtaConfig.from_settings(
            sectors=options['sectors'],
            band_width=options['band_width'],
            epsilon=options['epsilon'],
            mode=options['mode'],
        )

        image = gt = None
        if bool(options['image']) != bool(options['gt']):
            raise exc.ValidationError({
                'overlay': '--image and --gt must be given together.'
            })
        if options['image']:
            image = imageio.read_image(options['image'])
            gt = imageio.read_mask(options['gt'])

        service = SimulationService(
            options['out'],
            spec=spec,
            cfg=cfg,
            workers=options['workers'],
            image=image,
            gt=gt,
            overlay_offset=options['overlay_offset'],
            log=self.log,
        )
        summary = service.run()

        for case in summary['cases']:
            self.log.info(
                'case %d (%s): L_PT %.3f +/- %s, F1 %.4f',
                case['case'], case['name'], case['aggregate_mean'],
                ('%.3f' % case['aggregate_std']
                 if case['aggregate_std'] is not None else 'n/a'),
                case['f1'],
            )
