"""
Result objects returned by the statistics, losses, metrics, simulation and
refinement code.
"""

import math

from .. import exc
from . import constants


class SampleStats(object):
    """Size, mean and unbiased variance of a sample."""
    def __init__(self, n, mean, var=None):
        self.n = int(n)
        self.mean = float(mean)
        self.var = None if var is None else float(var)
        self.clean_fields()

    def clean_fields(self):
        if self.n < 1:
            raise exc.InsufficientSampleError(
                'A sample needs at least 1 value.')
        if self.var is not None:
            if self.n < constants.MIN_SAMPLE_SIZE:
                raise exc.InsufficientSampleError(
                    'Variance requires at least %d values.' %
                    constants.MIN_SAMPLE_SIZE
                )
            if self.var < 0:
                raise exc.ValidationError({'var': 'Variance must be >= 0.'})

    def __eq__(self, other):
        if not isinstance(other, SampleStats):
            return NotImplemented
        return (
            (self.n, self.mean, self.var) == (other.n, other.mean, other.var))

    __hash__ = None

    def __repr__(self):
        return 'SampleStats(n=%d, mean=%r, var=%r)' % (
            self.n, self.mean, self.var)

    def to_dict(self):
        return {'n': self.n, 'mean': self.mean, 'var': self.var}


class SectorStatistic(object):
    """
    Statistics of one sector of the boundary bands.

    ``t`` and ``v`` are ``None`` for invalid sectors; ``loss`` is ``None``
    when the sector is excluded from the aggregate.
    """
    def __init__(self, index, n_plus, n_minus, t=None, v=None, loss=None):
        self.index = index
        self.n_plus = n_plus
        self.n_minus = n_minus
        self.t = t
        self.v = v
        self.loss = loss

    @property
    def valid(self):
        return (
            self.n_plus >= constants.MIN_SAMPLE_SIZE and
            self.n_minus >= constants.MIN_SAMPLE_SIZE
        )

    def __repr__(self):
        return '<SectorStatistic %d t=%r loss=%r>' % (
            self.index, self.t, self.loss)

    def to_dict(self):
        return {
            'index': self.index,
            't': self.t,
            'v': self.v,
            'n_plus': self.n_plus,
            'n_minus': self.n_minus,
            'valid': self.valid,
            'loss': self.loss,
        }


class PiecewiseLossReport(object):
    """Per-sector statistics and their mean reciprocal loss."""
    def __init__(self, per_sector, mode):
        self.per_sector = list(per_sector)
        self.mode = mode
        valid = [s.loss for s in self.per_sector if s.valid]
        if not valid:
            raise exc.DegenerateBandError(
                'None of the %d sectors has 2 or more pixels in both bands.' %
                len(self.per_sector)
            )
        self.aggregate = math.fsum(valid) / len(valid)

    @property
    def skipped(self):
        return sum(1 for s in self.per_sector if not s.valid)

    @property
    def losses(self):
        """Per-sector losses in sector order, ``None`` where skipped."""
        return [s.loss for s in self.per_sector]

    def __repr__(self):
        return '<PiecewiseLossReport %s aggregate=%r skipped=%d>' % (
            self.mode, self.aggregate, self.skipped)

    def to_dict(self):
        return {
            'mode': self.mode,
            'aggregate': self.aggregate,
            'skipped': self.skipped,
            'per_sector': [s.to_dict() for s in self.per_sector],
        }


class LossReport(object):
    """
    Base loss, piecewise term and their blend.

    When the piecewise term cannot be computed, ``l_pt`` and ``total`` are
    ``None`` and ``degenerate`` names the reason.
    """
    def __init__(self, base_name, base, lam, per_class, degenerate=None,
                 config=None):
        self.base_name = base_name
        self.base = base
        self.lam = lam
        self.per_class = per_class
        self.degenerate = degenerate
        self.config = config

        available = [r.aggregate for r in per_class.values() if r is not None]
        if degenerate is None and available:
            self.l_pt = math.fsum(available) / len(available)
            self.total = base + lam * self.l_pt
        else:
            self.l_pt = None
            self.total = None

    @property
    def available(self):
        return self.l_pt is not None

    def __repr__(self):
        return '<LossReport %s base=%r l_pt=%r total=%r>' % (
            self.base_name, self.base, self.l_pt, self.total)

    def to_dict(self):
        return {
            'base_name': self.base_name,
            'base': self.base,
            'lam': self.lam,
            'l_pt': self.l_pt,
            'total': self.total,
            'available': self.available,
            'degenerate': self.degenerate,
            'per_class': {
                label: (r.to_dict() if r is not None else None)
                for label, r in self.per_class.items()
            },
        }


METRIC_NAMES = ('dsc', 'precision', 'recall', 'hd', 'assd')


class MetricsReport(object):
    """
    Evaluation metrics of a segmentation against its ground truth.

    ``per_class`` maps class labels to metric dicts; ``macro`` holds their
    means. For binary masks ``per_class`` has the single label 1.
    """
    def __init__(self, per_class):
        self.per_class = per_class
        self.macro = {}
        for name in METRIC_NAMES:
            values = [m[name] for m in per_class.values() if name in m]
            if values:
                self.macro[name] = math.fsum(values) / len(values)

    def __getattr__(self, name):
        if name in METRIC_NAMES:
            try:
                return self.__dict__['macro'][name]
            except KeyError:
                raise AttributeError(name)
        raise AttributeError(name)

    def to_dict(self):
        return {
            'per_class': self.per_class,
            'macro': self.macro,
        }


class CaseResult(object):
    """Piecewise loss and F1 of one offset case."""
    def __init__(self, case, report, f1, replicate=None):
        self.case = case
        self.report = report
        self.f1 = f1
        self.replicate = replicate

    @property
    def name(self):
        return constants.CASE_NAMES[self.case - 1]

    @property
    def aggregate(self):
        return self.report.aggregate

    @property
    def losses(self):
        return self.report.losses

    def __repr__(self):
        return '<CaseResult %d replicate=%r aggregate=%r f1=%r>' % (
            self.case, self.replicate, self.aggregate, self.f1)

    def to_dict(self):
        return {
            'case': self.case,
            'name': self.name,
            'replicate': self.replicate,
            'losses': self.losses,
            'aggregate': self.aggregate,
            'f1': self.f1,
        }


class RefineTrace(object):
    """Objective history of a refinement run."""
    def __init__(self):
        self.objective = []
        self.l_pt = []
        self.changed = []
        self.accepted = []
        self.final_mask = None

    def record(self, objective, l_pt, changed, accepted):
        self.objective.append(objective)
        self.l_pt.append(l_pt)
        self.changed.append(changed)
        self.accepted.append(accepted)

    def __len__(self):
        return len(self.objective)

    def accepted_objectives(self):
        """Objective values right after each accepted move (and the start)."""
        return [
            obj for obj, acc in zip(self.objective, self.accepted) if acc
        ]

    def rows(self):
        """Yield ``(iteration, objective, l_pt, changed, accepted)``."""
        for i in range(len(self)):
            yield (
                i, self.objective[i], self.l_pt[i], self.changed[i],
                self.accepted[i],
            )
