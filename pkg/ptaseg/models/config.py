"""
Configuration objects for losses, refinement and the synthetic experiment.

Constructor defaults follow the documented hyperparameters. ``from_settings()``
builds an object from the Django settings instead, so a configuration file
can change them.
"""

import numbers

from .. import exc, validators
from . import constants


def _settings():
    from django.conf import settings
    return settings


class PtaConfig(object):
    """Hyperparameters of the piecewise t-test augmented loss."""
    def __init__(self, lam=3.0, sectors=10, band_width=2.0, threshold=0.5,
                 epsilon=1e-6, mode=constants.MODE_TTEST, prob_min=1e-12):
        self.lam = lam
        self.sectors = sectors
        self.band_width = band_width
        self.threshold = threshold
        self.epsilon = epsilon
        self.mode = mode
        self.prob_min = prob_min
        self.clean_fields()

    @classmethod
    def from_settings(cls, **overrides):
        """Build a config from ``settings.PTASEG_*`` with ``overrides``."""
        settings = _settings()
        kwargs = dict(
            lam=settings.PTASEG_LAMBDA,
            sectors=settings.PTASEG_SECTORS,
            band_width=settings.PTASEG_BAND_WIDTH,
            threshold=settings.PTASEG_THRESHOLD,
            epsilon=settings.PTASEG_EPSILON,
            mode=settings.PTASEG_MODE,
            prob_min=settings.PTASEG_PROB_MIN,
        )
        kwargs.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**kwargs)

    def clean_fields(self):
        self.lam = validators.validate_nonnegative(self.lam, 'lambda')
        self.sectors = validators.validate_sectors(self.sectors)
        self.band_width = validators.validate_band_width(self.band_width)
        self.threshold = validators.validate_threshold(self.threshold)
        self.epsilon = validators.validate_nonnegative(self.epsilon, 'epsilon')
        if self.epsilon == 0:
            raise exc.ValidationError({'epsilon': 'Epsilon must be > 0.'})
        self.mode = validators.validate_mode(self.mode)
        self.prob_min = validators.validate_nonnegative(
            self.prob_min, 'prob_min')

    def replace(self, **changes):
        """Return a copy with ``changes`` applied."""
        kwargs = self.to_dict()
        kwargs.update(changes)
        return PtaConfig(**kwargs)

    def __eq__(self, other):
        if not isinstance(other, PtaConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    def __repr__(self):
        return 'PtaConfig(%s)' % ', '.join(
            '%s=%r' % kv for kv in sorted(self.to_dict().items()))

    def to_dict(self):
        return {
            'lam': self.lam,
            'sectors': self.sectors,
            'band_width': self.band_width,
            'threshold': self.threshold,
            'epsilon': self.epsilon,
            'mode': self.mode,
            'prob_min': self.prob_min,
        }


class WceWeights(object):
    """
    Weighted cross-entropy weights indexed by class label.

    Labels beyond the last weight reuse the last weight, so ``(0.1, 0.3)``
    weighs the background 0.1 and every foreground class 0.3.
    """
    def __init__(self, weights):
        self.weights = tuple(weights)
        self.clean_fields()

    @classmethod
    def from_settings(cls):
        return cls(_settings().PTASEG_WCE_WEIGHTS)

    def clean_fields(self):
        if not self.weights:
            raise exc.ValidationError({'weights': 'No weights given.'})
        weights = tuple(
            validators.validate_nonnegative(w, 'weights') for w in self.weights
        )
        if not any(w > 0 for w in weights):
            raise exc.ValidationError({
                'weights': 'At least one weight must be positive.'
            })
        self.weights = weights

    def weight(self, label):
        label = int(label)
        if label < len(self.weights):
            return self.weights[label]
        return self.weights[-1]

    def __repr__(self):
        return 'WceWeights(%r)' % (self.weights,)

    def to_dict(self):
        return {'weights': list(self.weights)}


class RefineConfig(object):
    """Settings for local-search refinement of a mask."""
    def __init__(self, mu=0.5, max_iters=2000, moves_per_iter=8,
                 acceptance=constants.ACCEPT_GREEDY, temperature=0.0,
                 cooling=0.995, seed=0, pta=None):
        self.mu = mu
        self.max_iters = max_iters
        self.moves_per_iter = moves_per_iter
        self.acceptance = acceptance
        self.temperature = temperature
        self.cooling = cooling
        self.seed = seed
        self.pta = pta if pta is not None else PtaConfig(band_width=8.0)
        self.clean_fields()

    @classmethod
    def from_settings(cls, pta=None, **overrides):
        settings = _settings()
        if pta is None:
            pta = PtaConfig.from_settings(
                band_width=settings.PTASEG_REFINE_BAND_WIDTH)
        kwargs = dict(
            mu=settings.PTASEG_REFINE_MU,
            max_iters=settings.PTASEG_REFINE_ITERATIONS,
            moves_per_iter=settings.PTASEG_REFINE_MOVES,
            acceptance=settings.PTASEG_REFINE_ACCEPTANCE,
            temperature=settings.PTASEG_REFINE_TEMPERATURE,
            cooling=settings.PTASEG_REFINE_COOLING,
            seed=settings.PTASEG_SIMULATION_SEED,
        )
        kwargs.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(pta=pta, **kwargs)

    def clean_fields(self):
        self.mu = validators.validate_nonnegative(self.mu, 'mu')
        self.max_iters = validators.validate_positive_int(
            self.max_iters, 'max_iters')
        self.moves_per_iter = validators.validate_positive_int(
            self.moves_per_iter, 'moves_per_iter')
        self.acceptance = validators.validate_choice(
            self.acceptance, constants.ACCEPTANCE_RULES, 'acceptance')
        self.temperature = validators.validate_nonnegative(
            self.temperature, 'temperature')
        self.cooling = validators.validate_nonnegative(self.cooling, 'cooling')
        if self.cooling > 1:
            raise exc.ValidationError({'cooling': 'Cooling must be <= 1.'})
        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise exc.ValidationError({
                'seed': 'Seed must be a non-negative integer.'
            })
        if not isinstance(self.pta, PtaConfig):
            raise exc.ValidationError({'pta': 'Expected a PtaConfig.'})

    def to_dict(self):
        return {
            'mu': self.mu,
            'max_iters': self.max_iters,
            'moves_per_iter': self.moves_per_iter,
            'acceptance': self.acceptance,
            'temperature': self.temperature,
            'cooling': self.cooling,
            'seed': self.seed,
            'pta': self.pta.to_dict(),
        }


class SyntheticSpec(object):
    """
    The synthetic square-organ experiment.

    The ground truth is the half-open square ``rect`` x ``rect`` inside a
    ``size`` x ``size`` domain; intensities are normal with the given means
    and standard deviations inside and outside it.
    """
    def __init__(self, size=200, rect=(70, 130), mean_inside=3.5,
                 sigma_inside=2.0, mean_outside=0.0, sigma_outside=2.0,
                 seed=0, replicates=20, offset=2, shift=5):
        self.size = size
        self.rect = tuple(rect)
        self.mean_inside = mean_inside
        self.sigma_inside = sigma_inside
        self.mean_outside = mean_outside
        self.sigma_outside = sigma_outside
        self.seed = seed
        self.replicates = replicates
        self.offset = offset
        self.shift = shift
        self.clean_fields()

    @classmethod
    def from_settings(cls, **overrides):
        settings = _settings()
        kwargs = dict(
            size=settings.PTASEG_SIMULATION_SIZE,
            rect=settings.PTASEG_SIMULATION_RECT,
            mean_inside=settings.PTASEG_SIMULATION_MEAN_INSIDE,
            sigma_inside=settings.PTASEG_SIMULATION_SIGMA_INSIDE,
            mean_outside=settings.PTASEG_SIMULATION_MEAN_OUTSIDE,
            sigma_outside=settings.PTASEG_SIMULATION_SIGMA_OUTSIDE,
            seed=settings.PTASEG_SIMULATION_SEED,
            replicates=settings.PTASEG_SIMULATION_REPLICATES,
            offset=settings.PTASEG_SIMULATION_OFFSET,
            shift=settings.PTASEG_SIMULATION_SHIFT,
        )
        kwargs.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**kwargs)

    def clean_fields(self):
        self.size = validators.validate_positive_int(self.size, 'size')
        if len(self.rect) != 2:
            raise exc.ValidationError({'rect': 'Expected (start, stop).'})
        start, stop = self.rect
        if not 0 <= start < stop <= self.size:
            raise exc.ValidationError({
                'rect': 'Rectangle %r must lie within the %d-pixel domain.' % (
                    self.rect, self.size)
            })
        for name in ('sigma_inside', 'sigma_outside'):
            value = validators.validate_nonnegative(getattr(self, name), name)
            if value == 0:
                raise exc.ValidationError({name: 'Must be > 0.'})
            setattr(self, name, value)
        self.mean_inside = float(self.mean_inside)
        self.mean_outside = float(self.mean_outside)
        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise exc.ValidationError({
                'seed': 'Seed must be a non-negative integer.'
            })
        self.replicates = validators.validate_positive_int(
            self.replicates, 'replicates')
        self.offset = validators.validate_positive_int(self.offset, 'offset')
        self.shift = validators.validate_positive_int(self.shift, 'shift')

    def replace(self, **changes):
        kwargs = self.to_dict()
        kwargs.update(changes)
        return SyntheticSpec(**kwargs)

    def to_dict(self):
        return {
            'size': self.size,
            'rect': list(self.rect),
            'mean_inside': self.mean_inside,
            'sigma_inside': self.sigma_inside,
            'mean_outside': self.mean_outside,
            'sigma_outside': self.sigma_outside,
            'seed': self.seed,
            'replicates': self.replicates,
            'offset': self.offset,
            'shift': self.shift,
        }
