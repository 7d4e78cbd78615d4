"""
Validators for validating object fields and command arguments.
"""

import math
import numbers

import numpy as np

from . import exc
from .models import constants


def validate_threshold(value):
    """Validate whether ``value`` is a probability threshold in [0, 1]."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise exc.ValidationError({
            'threshold': '%r is not a number.' % (value,)
        })
    if not 0.0 <= value <= 1.0:
        raise exc.ValidationError({
            'threshold': 'Threshold must be within [0, 1], got %r.' % value
        })
    return value


def validate_band_width(value):
    """Validate whether ``value`` is a positive, finite band width."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise exc.ValidationError({
            'band_width': '%r is not a number.' % (value,)
        })
    if not (math.isfinite(value) and value > 0):
        raise exc.ValidationError({
            'band_width': 'Band width must be > 0, got %r.' % value
        })
    return value


def validate_sectors(value):
    """Validate whether ``value`` is a positive integer sector count."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise exc.ValidationError({
            'sectors': '%r is not an integer.' % (value,)
        })
    if value < 1:
        raise exc.ValidationError({
            'sectors': 'At least one sector is required, got %r.' % value
        })
    return int(value)


def validate_nonnegative(value, name):
    """Validate whether ``value`` is a finite real >= 0."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise exc.ValidationError({name: '%r is not a number.' % (value,)})
    if not (math.isfinite(value) and value >= 0):
        raise exc.ValidationError({
            name: 'Must be a finite value >= 0, got %r.' % value
        })
    return value


def validate_positive_int(value, name):
    """Validate whether ``value`` is an integer >= 1."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise exc.ValidationError({name: '%r is not an integer.' % (value,)})
    if value < 1:
        raise exc.ValidationError({name: 'Must be >= 1, got %r.' % value})
    return int(value)


def validate_choice(value, choices, name):
    """Validate whether ``value`` is one of ``choices``."""
    if value not in choices:
        raise exc.ValidationError({
            name: '%r is not one of %s.' % (value, ', '.join(choices))
        })
    return value


def validate_mode(value):
    """Validate whether ``value`` is a piecewise statistic mode."""
    return validate_choice(value, constants.MODES, 'mode')


def validate_grid(values, name, dtype=float):
    """
    Validate a 2-D grid and return it as a read-only ``numpy`` array.

    :param values:
        Anything ``numpy.asarray`` accepts

    :param name:
        Field name used in error messages

    :param dtype:
        Target dtype
    """
    try:
        arr = np.array(values, dtype=dtype)
    except (TypeError, ValueError) as err:
        raise exc.ValidationError({name: str(err)})
    if arr.ndim != 2:
        raise exc.ValidationError({
            name: 'Expected a 2-D grid, got %d dimension(s).' % arr.ndim
        })
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise exc.ValidationError({
            name: 'Width and height must be >= 1, got %dx%d.' % (
                arr.shape[1], arr.shape[0])
        })
    arr.setflags(write=False)
    return arr


def validate_same_shape(*grids):
    """Raise ``DimensionMismatch`` unless every grid has the same shape."""
    shapes = {(g.width, g.height) for g in grids}
    if len(shapes) > 1:
        raise exc.DimensionMismatch(
            'Grid dimensions differ: %s' % ', '.join(
                '%dx%d' % s for s in sorted(shapes))
        )
    return grids
