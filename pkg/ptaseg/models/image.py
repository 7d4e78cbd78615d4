"""
Pixel grids: images, masks, probability maps and distance fields.

Grids are stored as read-only ``numpy`` arrays indexed ``[y, x]`` (row-major,
``height`` rows of ``width`` pixels). Points are ``(x, y)`` tuples.
"""

import logging

import numpy as np

from .. import exc, validators


log = logging.getLogger(__name__)


class Grid(object):
    """Base class for a 2-D grid with value semantics."""
    field_name = 'values'

    def __init__(self, values):
        self._data = self.clean_values(values)
        self.clean_fields()

    def clean_values(self, values):
        return validators.validate_grid(values, self.field_name)

    def clean_fields(self):
        pass

    @property
    def array(self):
        """The underlying read-only array."""
        return self._data

    @property
    def width(self):
        return self._data.shape[1]

    @property
    def height(self):
        return self._data.shape[0]

    @property
    def shape(self):
        return self._data.shape

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(self._data, other._data)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return '<%s %dx%d>' % (type(self).__name__, self.width, self.height)

    def to_dict(self):
        return {
            'width': self.width,
            'height': self.height,
            self.field_name: self._data.ravel().tolist(),
        }


class GrayImage(Grid):
    """Real-valued gray intensities over the image domain."""

    @classmethod
    def from_flat(cls, width, height, values):
        """Build an image from ``width * height`` row-major values."""
        values = np.asarray(values, dtype=float)
        if values.size != width * height:
            raise exc.ValidationError({
                'values': 'Expected %d values for %dx%d, got %d.' % (
                    width * height, width, height, values.size)
            })
        return cls(values.reshape(height, width))

    def clean_fields(self):
        if not np.all(np.isfinite(self._data)):
            raise exc.ValidationError({
                'values': 'Image intensities must be finite.'
            })

    @property
    def values(self):
        return self._data

    def affine(self, scale, offset):
        """Return a new image with intensities ``scale * I + offset``."""
        return GrayImage(scale * self._data + offset)


class BinaryMask(Grid):
    """Per-pixel membership of a region."""
    field_name = 'bits'

    def clean_values(self, values):
        return validators.validate_grid(values, self.field_name, dtype=bool)

    @classmethod
    def empty(cls, width, height):
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def from_coords(cls, coords, width, height):
        """
        Build a mask from an iterable of ``(x, y)`` points.

        :param coords:
            Iterable of integer ``(x, y)`` pixel coordinates

        :param width:
            Grid width

        :param height:
            Grid height
        """
        bits = np.zeros((height, width), dtype=bool)
        for x, y in coords:
            if not (0 <= x < width and 0 <= y < height):
                raise exc.ValidationError({
                    'coords': '(%r, %r) is outside %dx%d.' % (
                        x, y, width, height)
                })
            bits[y, x] = True
        return cls(bits)

    @classmethod
    def rectangle(cls, width, height, x_range, y_range):
        """Mask of the half-open rectangle ``x_range`` x ``y_range``."""
        bits = np.zeros((height, width), dtype=bool)
        bits[y_range[0]:y_range[1], x_range[0]:x_range[1]] = True
        return cls(bits)

    @property
    def bits(self):
        return self._data

    @property
    def count(self):
        """Number of member pixels."""
        return int(np.count_nonzero(self._data))

    @property
    def is_empty(self):
        return not self._data.any()

    def coords(self):
        """Return member pixels as an ``(n, 2)`` array of ``(x, y)``."""
        ys, xs = np.nonzero(self._data)
        return np.column_stack((xs, ys))

    def __contains__(self, point):
        x, y = point
        if not (0 <= x < self.width and 0 <= y < self.height):
            return False
        return bool(self._data[y, x])

    def __and__(self, other):
        validators.validate_same_shape(self, other)
        return BinaryMask(self._data & other._data)

    def __or__(self, other):
        validators.validate_same_shape(self, other)
        return BinaryMask(self._data | other._data)

    def __sub__(self, other):
        validators.validate_same_shape(self, other)
        return BinaryMask(self._data & ~other._data)

    def __xor__(self, other):
        validators.validate_same_shape(self, other)
        return BinaryMask(self._data ^ other._data)

    def __invert__(self):
        return BinaryMask(~self._data)

    def flip(self, x, y):
        """Return a copy with the membership of ``(x, y)`` inverted."""
        bits = self._data.copy()
        bits[y, x] = not bits[y, x]
        return BinaryMask(bits)

    def to_probability_map(self):
        """Express the mask as a 0/1 probability map."""
        return ProbabilityMap(self._data.astype(float))


class LabelMask(Grid):
    """Per-pixel class labels; 0 is background."""
    field_name = 'labels'

    def clean_values(self, values):
        return validators.validate_grid(
            values, self.field_name, dtype=np.int64)

    def clean_fields(self):
        if self._data.min() < 0:
            raise exc.ValidationError({
                'labels': 'Class labels must be >= 0.'
            })

    @classmethod
    def from_binary(cls, mask):
        return cls(mask.bits.astype(np.int64))

    @property
    def labels(self):
        return self._data

    @property
    def classes(self):
        """Sorted foreground class labels present in the mask."""
        return [int(c) for c in np.unique(self._data) if c != 0]

    @property
    def max_label(self):
        return int(self._data.max())

    def one_vs_rest(self, label):
        """Return the ``BinaryMask`` of pixels carrying ``label``."""
        return BinaryMask(self._data == label)

    def validate_range(self, num_labels=None):
        """
        Ensure the labels form the contiguous range ``0..L``.

        :param num_labels:
            Expected highest label ``L``; inferred from the data if omitted
        """
        top = self.max_label if num_labels is None else int(num_labels)
        present = set(int(c) for c in np.unique(self._data))
        if not present.issubset(range(top + 1)):
            raise exc.ValidationError({
                'labels': 'Labels %s exceed 0..%d.' % (
                    sorted(present - set(range(top + 1))), top)
            })
        return self


class ProbabilityMap(Grid):
    """Per-pixel foreground probability."""
    field_name = 'probs'

    def clean_fields(self):
        probs = self._data
        if not np.all(np.isfinite(probs)):
            raise exc.ValidationError({
                'probs': 'Probabilities must be finite.'
            })
        if probs.min() < 0.0 or probs.max() > 1.0:
            raise exc.ValidationError({
                'probs': 'Probabilities must lie within [0, 1].'
            })

    @classmethod
    def constant(cls, width, height, value):
        return cls(np.full((height, width), float(value)))

    @property
    def probs(self):
        return self._data


class DistanceField(Grid):
    """
    Exact Euclidean distance from every pixel to a reference pixel set.

    ``squared`` holds the integer squared distances; ``dist`` is their square
    root.
    """
    field_name = 'dist'

    def __init__(self, squared):
        squared = np.array(squared, dtype=np.int64)
        squared.setflags(write=False)
        self.squared = squared
        super(DistanceField, self).__init__(np.sqrt(squared))

    def clean_fields(self):
        if self.squared.min() < 0:
            raise exc.ValidationError({'dist': 'Distances must be >= 0.'})

    @property
    def dist(self):
        return self._data

    def at(self, x, y):
        return float(self._data[y, x])
