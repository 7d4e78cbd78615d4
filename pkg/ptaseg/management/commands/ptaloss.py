"""
Command to compute the piecewise t-test augmented loss of a segmentation.
"""

from collections import OrderedDict

from django.conf import settings

from ptaseg import exc, geometry, imageio, losses
from ptaseg.api import renderers, serializers
from ptaseg.models import PtaConfig, WceWeights
from ptaseg.models import constants
from ptaseg.piecewise import band_summary
from ptaseg.util.commands import PtasegCommand


class Command(PtasegCommand):
    help = (
        'Compute a base segmentation loss, the piecewise boundary term and '
        'their blend for an image and a predicted mask or probability map. '
        'File arguments may be glob patterns; matches are paired in sorted '
        'order.'
    )

    def add_arguments(self, parser):
        parser.add_argument(
            '--image',
            required=True,
            help='Grayscale image file or glob (PGM/PNG/PFM).',
        )
        parser.add_argument(
            '--gt',
            required=True,
            help='Ground-truth mask the base loss is measured against.',
        )
        pred = parser.add_mutually_exclusive_group(required=True)
        pred.add_argument(
            '--mask',
            help='Predicted mask file or glob.',
        )
        pred.add_argument(
            '--probmap',
            action='append',
            help=(
                'Probability map file or glob. With --labels, give it once '
                'per foreground class in label order.'
            ),
        )
        parser.add_argument(
            '--labels',
            type=int,
            default=None,
            metavar='L',
            help='Multi-class task with class labels 0..L.',
        )
        parser.add_argument(
            '-t', '--threshold',
            type=float,
            default=settings.PTASEG_THRESHOLD,
            help='Probability threshold of the segmentation.',
        )
        parser.add_argument(
            '--base',
            choices=constants.BASES,
            default=constants.BASE_DSC,
            help='Base loss.',
        )
        parser.add_argument(
            '-l', '--lambda',
            type=float,
            dest='lam',
            default=settings.PTASEG_LAMBDA,
            help='Weight of the boundary term.',
        )
        parser.add_argument(
            '--weights',
            default=None,
            help=(
                'Comma-separated weighted cross-entropy weights by class '
                '(default: settings.PTASEG_WCE_WEIGHTS).'
            ),
        )
        parser.add_argument(
            '--grid',
            action='store_true',
            default=False,
            help='Also report every base loss with every additive term.',
        )
        parser.add_argument(
            '--bins',
            type=int,
            default=32,
            help='Histogram bins of the band intensity summary.',
        )
        parser.add_argument(
            '-o', '--out',
            required=True,
            help='Report file, or directory of reports for several inputs.',
        )
        self.add_pta_arguments(parser)
        self.add_workers_argument(parser)

    def read_prediction(self, job, labels):
        """Probability maps keyed by class label."""
        if 'mask' in job:
            if labels is None:
                return imageio.read_mask(job['mask']).to_probability_map()
            mask = imageio.read_mask(job['mask'], labels=True)
            mask.validate_range(labels)
            return dict(
                (c, mask.one_vs_rest(c).to_probability_map())
                for c in range(1, labels + 1)
            )

        keys = sorted(k for k in job if k.startswith('probmap_'))
        maps = [imageio.read_probability_map(job[k]) for k in keys]
        if labels is None:
            if len(maps) != 1:
                raise exc.ValidationError({
                    'probmap': 'A binary task takes one probability map.'
                })
            return maps[0]
        if len(maps) != labels:
            raise exc.ValidationError({
                'probmap': 'Expected %d probability maps, got %d.' % (
                    labels, len(maps))
            })
        return dict(zip(range(1, labels + 1), maps))

    def loss(self, job, cfg, weights, options, batch):
        labels = options['labels']
        image = imageio.read_image(job['image'])
        gt = imageio.read_mask(job['gt'], labels=labels is not None)
        if labels is not None:
            gt.validate_range(labels)
        pred = self.read_prediction(job, labels)

        report = losses.pta_loss(
            image, gt, pred, base=options['base'], cfg=cfg, weights=weights)
        context = {'epsilon': cfg.epsilon}
        data = serializers.LossReportSerializer(report, context=context).data

        bands = OrderedDict()
        for label, piecewise in report.per_class.items():
            if piecewise is None:
                continue
            seg = geometry.threshold(
                pred if labels is None else pred[label], cfg.threshold)
            summary = band_summary(
                image, geometry.compute_bands(seg, cfg.band_width),
                bins=options['bins'])
            bands[str(label)] = summary
        data['bands'] = bands

        if options['grid']:
            data['grid'] = losses.loss_grid(image, gt, pred, cfg, weights)

        data['inputs'] = job
        source = job.get('mask') or job['probmap_1']
        renderers.write_json(self.output_path(options['out'], source, batch),
                             data)

        if report.degenerate is not None:
            raise exc.DegenerateBandError(
                '%s: boundary term unavailable (%s); base %s loss = %r' % (
                    source, report.degenerate, report.base_name, report.base)
            )
        self.log.info(
            '%s: base=%r l_pt=%r total=%r', source, report.base, report.l_pt,
            report.total,
        )

    def handle(self, **options):
        cfg = PtaConfig.from_settings(
            lam=options['lam'],
            sectors=options['sectors'],
            band_width=options['band_width'],
            threshold=options['threshold'],
            epsilon=options['epsilon'],
            mode=options['mode'],
        )
        weights = self.parse_weights(options['weights'])
        if weights:
            weights = WceWeights(weights)
        else:
            weights = WceWeights.from_settings()

        patterns = {'image': options['image'], 'gt': options['gt']}
        if options['mask']:
            patterns['mask'] = options['mask']
        else:
            for i, pattern in enumerate(options['probmap'], 1):
                patterns['probmap_%d' % i] = pattern

        jobs = self.expand_inputs(**patterns)
        batch = len(jobs) > 1
        self.run_batch(
            jobs,
            lambda job: self.loss(job, cfg, weights, options, batch),
            workers=options['workers'],
            label=lambda job: job.get('mask') or job['probmap_1'],
        )
