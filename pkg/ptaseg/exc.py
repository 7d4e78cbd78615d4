"""
Exceptions raised by ptaseg.

Every error carries an ``exit_code`` so the command-line surface can map it to
a process exit status without inspecting the message.
"""

__all__ = (
    'Error', 'ValidationError', 'InsufficientSampleError', 'ZeroContrast',
    'MalformedFileError', 'DimensionMismatch', 'EmptyRegionError',
    'DegenerateBandError', 'OutputError',
)


class Error(Exception):
    """Baseclass for ptaseg exceptions."""
    exit_code = 1
    default_detail = 'An error occurred.'

    def __init__(self, detail=None):
        if detail is None:
            detail = self.default_detail
        self.detail = detail
        super(Error, self).__init__(detail)

    def __str__(self):
        return str(self.detail)


class ValidationError(Error, ValueError):
    """An argument is outside of its domain."""
    default_detail = 'Invalid input.'


class InsufficientSampleError(Error, ValueError):
    """A sample is too small for the requested statistic."""
    default_detail = 'At least 2 observations are required.'


class ZeroContrast(Error, ArithmeticError):
    """Both samples are constant and share the same mean."""
    default_detail = 'Samples are constant with equal means.'


class MalformedFileError(Error):
    """An input file could not be decoded."""
    exit_code = 2
    default_detail = 'Malformed file.'

    def __init__(self, detail=None, offset=None):
        if offset is not None and detail is not None:
            detail = '%s (at byte offset %d)' % (detail, offset)
        self.offset = offset
        super(MalformedFileError, self).__init__(detail)


class DimensionMismatch(Error, ValueError):
    """Two grids that must be aligned have different shapes."""
    exit_code = 3
    default_detail = 'Dimension mismatch.'


class EmptyRegionError(Error, ValueError):
    """A region that must contain pixels is empty."""
    exit_code = 4
    default_detail = 'Region is empty.'


class DegenerateBandError(Error):
    """No sector has enough pixels on both sides of the boundary."""
    exit_code = 5
    default_detail = 'Every sector is degenerate.'


class OutputError(Error, IOError):
    """An output location cannot be written."""
    exit_code = 6
    default_detail = 'Unable to write output.'
