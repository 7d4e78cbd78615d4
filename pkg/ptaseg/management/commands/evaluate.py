"""
Command to evaluate segmentations against their ground truth.
"""

from ptaseg import imageio, metrics
from ptaseg.api import renderers, serializers
from ptaseg.util.commands import PtasegCommand


class Command(PtasegCommand):
    help = (
        'Compute DSC, precision, recall, Hausdorff distance and ASSD of '
        'segmentation masks. --gt and --pred may be glob patterns; matches '
        'are paired in sorted order.'
    )

    def add_arguments(self, parser):
        parser.add_argument(
            '--gt',
            required=True,
            help='Ground-truth mask file or glob (PGM/PNG).',
        )
        parser.add_argument(
            '--pred',
            required=True,
            help='Predicted mask file or glob (PGM/PNG).',
        )
        parser.add_argument(
            '--labels',
            type=int,
            default=None,
            metavar='L',
            help=(
                'Treat pixel values as class labels 0..L and report every '
                'class plus macro averages. Without it any nonzero pixel is '
                'foreground.'
            ),
        )
        parser.add_argument(
            '--no-distances',
            action='store_false',
            dest='distances',
            default=True,
            help='Skip the Hausdorff distance and ASSD.',
        )
        parser.add_argument(
            '-o', '--out',
            required=True,
            help='Report file, or directory of reports for several inputs.',
        )
        self.add_workers_argument(parser)

    def evaluate(self, job, options, batch):
        labels = options['labels']
        if labels is None:
            gt = imageio.read_mask(job['gt'])
            pred = imageio.read_mask(job['pred'])
            report = metrics.evaluate(gt, pred, options['distances'])
        else:
            gt = imageio.read_mask(job['gt'], labels=True)
            pred = imageio.read_mask(job['pred'], labels=True)
            report = metrics.evaluate_labels(
                gt, pred, labels, options['distances'])

        data = serializers.MetricsReportSerializer(report).data
        data['gt'] = job['gt']
        data['pred'] = job['pred']
        out = self.output_path(options['out'], job['pred'], batch)
        renderers.write_json(out, data)
        self.log.debug('%s: %r', job['pred'], report.macro)

    def handle(self, **options):
        jobs = self.expand_inputs(gt=options['gt'], pred=options['pred'])
        batch = len(jobs) > 1
        self.run_batch(
            jobs,
            lambda job: self.evaluate(job, options, batch),
            workers=options['workers'],
            label=lambda job: job['pred'],
        )
