"""
Reading and writing grayscale images, masks and probability maps.

Supported formats:

* PGM, ASCII (``P2``) or binary (``P5``), 8 or 16 bits per pixel
* PNG grayscale, 8 or 16 bits per pixel (via ``pypng``)
* PFM single channel (``Pf``), 32-bit floats

Reading detects the format from the file's magic bytes; writing picks it from
the file extension.
"""

import logging
import os
import re
import zlib

import numpy as np
import png

from . import exc
from .models import BinaryMask, GrayImage, LabelMask, ProbabilityMap


log = logging.getLogger(__name__)


__all__ = (
    'load', 'save', 'read_image', 'read_mask', 'read_probability_map',
    'write_image', 'write_mask', 'write_labels', 'write_probability_map',
    'format_for', 'FORMATS',
)


PGM = 'pgm'
PNG = 'png'
PFM = 'pfm'

#: Output format by file extension.
FORMATS = {
    '.pgm': PGM,
    '.pnm': PGM,
    '.png': PNG,
    '.pfm': PFM,
}

PNG_SIGNATURE = b'\x89PNG\r\n\x1a\n'
WHITESPACE = b' \t\r\n\x0b\x0c'
TOKEN = re.compile(br'\S+')


class Raster(object):
    """Decoded pixel array plus the facts needed to interpret it."""
    def __init__(self, array, fmt, maxval=None):
        self.array = array
        self.format = fmt
        self.maxval = maxval

    def __repr__(self):
        height, width = self.array.shape
        return '<Raster %s %dx%d maxval=%r>' % (
            self.format, width, height, self.maxval)


#########
# Reading
#########
def _header(data, count):
    """
    Read ``count`` whitespace-separated header tokens, skipping ``#``
    comments. Returns ``(tokens, offset)`` where ``offset`` is the first
    byte after the single whitespace that ends the header.
    """
    tokens = []
    pos = 0
    size = len(data)
    while len(tokens) < count:
        while pos < size:
            if data[pos:pos + 1] == b'#':
                end = data.find(b'\n', pos)
                pos = size if end < 0 else end + 1
            elif data[pos:pos + 1] in WHITESPACE:
                pos += 1
            else:
                break
        if pos >= size:
            raise exc.MalformedFileError('Truncated header', offset=pos)
        match = TOKEN.match(data, pos)
        tokens.append((match.group(), pos))
        pos = match.end()

    if pos >= size or data[pos:pos + 1] not in WHITESPACE:
        raise exc.MalformedFileError(
            'Expected whitespace after header', offset=pos)
    return tokens, pos + 1


def _header_int(token, name, low, high):
    text, offset = token
    try:
        value = int(text)
    except ValueError:
        raise exc.MalformedFileError(
            'Invalid %s %r' % (name, text.decode('latin-1')), offset=offset)
    if not low <= value <= high:
        raise exc.MalformedFileError(
            '%s %d outside %d..%d' % (name.capitalize(), value, low, high),
            offset=offset,
        )
    return value


def _dimensions(tokens):
    width = _header_int(tokens[1], 'width', 1, 2 ** 31 - 1)
    height = _header_int(tokens[2], 'height', 1, 2 ** 31 - 1)
    return width, height


def _decode_pgm(data):
    tokens, offset = _header(data, 4)
    width, height = _dimensions(tokens)
    maxval = _header_int(tokens[3], 'maxval', 1, 65535)
    count = width * height

    if data.startswith(b'P2'):
        values = []
        for match in TOKEN.finditer(data, offset):
            if len(values) == count:
                break
            try:
                values.append(int(match.group()))
            except ValueError:
                raise exc.MalformedFileError(
                    'Invalid pixel value %r' % match.group().decode('latin-1'),
                    offset=match.start(),
                )
        if len(values) < count:
            raise exc.MalformedFileError(
                'Expected %d pixel values, found %d' % (count, len(values)),
                offset=len(data),
            )
        array = np.array(values, dtype=np.int64)
    else:
        dtype = np.dtype('u1') if maxval < 256 else np.dtype('>u2')
        needed = count * dtype.itemsize
        available = len(data) - offset
        if available < needed:
            raise exc.MalformedFileError(
                'Expected %d bytes of pixel data, found %d' % (
                    needed, available),
                offset=len(data),
            )
        array = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
        array = array.astype(np.int64)

    if array.max() > maxval:
        raise exc.MalformedFileError(
            'Pixel value %d exceeds maxval %d' % (array.max(), maxval))
    return Raster(array.reshape(height, width), PGM, maxval)


def _decode_pfm(data):
    if data.startswith(b'PF'):
        raise exc.MalformedFileError(
            'Color PFM is not supported; expected a single channel', offset=0)
    tokens, offset = _header(data, 4)
    width, height = _dimensions(tokens)
    text, scale_offset = tokens[3]
    try:
        scale = float(text)
    except ValueError:
        raise exc.MalformedFileError(
            'Invalid scale %r' % text.decode('latin-1'), offset=scale_offset)
    if scale == 0:
        raise exc.MalformedFileError('Scale must be nonzero',
                                     offset=scale_offset)

    # A negative scale marks little-endian data.
    dtype = np.dtype('<f4') if scale < 0 else np.dtype('>f4')
    count = width * height
    needed = count * dtype.itemsize
    available = len(data) - offset
    if available < needed:
        raise exc.MalformedFileError(
            'Expected %d bytes of pixel data, found %d' % (needed, available),
            offset=len(data),
        )
    array = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
    # Rows are stored bottom to top.
    array = np.flipud(array.reshape(height, width)).astype(np.float64)
    if not np.all(np.isfinite(array)):
        raise exc.MalformedFileError('PFM contains non-finite values')
    return Raster(array, PFM)


def _decode_png(data):
    try:
        width, height, rows, info = png.Reader(bytes=data).read()
        pixels = np.vstack([np.asarray(row, dtype=np.int64) for row in rows])
    except (png.Error, ValueError, EOFError, zlib.error) as err:
        raise exc.MalformedFileError('Invalid PNG: %s' % err)
    if not info['greyscale']:
        raise exc.MalformedFileError('Only grayscale PNG is supported')
    if pixels.shape[0] != height:
        raise exc.MalformedFileError(
            'Expected %d rows, found %d' % (height, pixels.shape[0]),
            offset=len(data),
        )
    # Drop the alpha plane, if any.
    array = pixels.reshape(height, width, info['planes'])[:, :, 0]
    return Raster(array, PNG, 2 ** info['bitdepth'] - 1)


def load(path):
    """
    Decode the raster stored at ``path``.

    :param path:
        File path
    """
    try:
        with open(path, 'rb') as f:
            data = f.read()
    except (IOError, OSError) as err:
        raise exc.MalformedFileError('Unable to read %s: %s' % (path, err))

    try:
        if data.startswith(PNG_SIGNATURE):
            raster = _decode_png(data)
        elif data[:2] in (b'P2', b'P5'):
            raster = _decode_pgm(data)
        elif data[:2] in (b'Pf', b'PF'):
            raster = _decode_pfm(data)
        else:
            raise exc.MalformedFileError('Unrecognized file format', offset=0)
    except exc.MalformedFileError as err:
        err.detail = '%s: %s' % (path, err.detail)
        raise

    log.debug('load: %s -> %r', path, raster)
    return raster


def read_image(path):
    """Read a ``GrayImage``; integer formats keep their raw values."""
    return GrayImage(load(path).array.astype(np.float64))


def _integer_raster(path, what):
    raster = load(path)
    if raster.format == PFM:
        raise exc.MalformedFileError(
            '%s: %s files must be PGM or PNG' % (path, what))
    return raster


def read_mask(path, labels=False):
    """
    Read a mask: any nonzero pixel is foreground, or, with ``labels``, each
    pixel value is its class label.

    :param path:
        PGM or PNG file

    :param labels:
        Return a ``LabelMask`` instead of a ``BinaryMask``
    """
    raster = _integer_raster(path, 'Mask')
    if labels:
        return LabelMask(raster.array)
    return BinaryMask(raster.array != 0)


def read_probability_map(path):
    """
    Read a ``ProbabilityMap``.

    Integer rasters are divided by their maximum value (255 for 8-bit, 65535
    for 16-bit); PFM floats are used as they are.
    """
    raster = load(path)
    if raster.format == PFM:
        return ProbabilityMap(raster.array)
    return ProbabilityMap(raster.array / float(raster.maxval))


#########
# Writing
#########
def format_for(path):
    ext = os.path.splitext(path)[1].lower()
    try:
        return FORMATS[ext]
    except KeyError:
        raise exc.ValidationError({
            'path': 'Unsupported extension %r; use one of %s.' % (
                ext, ', '.join(sorted(FORMATS)))
        })


def _integral(array):
    if not np.all(np.equal(np.mod(array, 1), 0)):
        raise exc.ValidationError({
            'values': 'PGM and PNG store integers; use .pfm for real values.'
        })
    array = array.astype(np.int64)
    if array.min() < 0 or array.max() > 65535:
        raise exc.ValidationError({
            'values': 'PGM and PNG store values within 0..65535.'
        })
    return array


def _encode_pgm(array, ascii, wide):
    height, width = array.shape
    maxval = 65535 if wide or array.max() > 255 else 255
    magic = 'P2' if ascii else 'P5'
    header = ('%s\n%d %d\n%d\n' % (magic, width, height, maxval)).encode()
    if ascii:
        body = '\n'.join(
            ' '.join(str(v) for v in row) for row in array.tolist()) + '\n'
        return header + body.encode()
    dtype = 'u1' if maxval == 255 else '>u2'
    return header + array.astype(dtype).tobytes()


def _encode_pfm(array):
    height, width = array.shape
    header = ('Pf\n%d %d\n-1.0\n' % (width, height)).encode()
    return header + np.flipud(array).astype('<f4').tobytes()


def save(path, array, ascii=False, wide=False):
    """
    Write ``array`` to ``path`` in the format named by its extension.

    :param path:
        Output path ending in ``.pgm``, ``.pnm``, ``.png`` or ``.pfm``

    :param array:
        2-D array of pixel values

    :param ascii:
        Write PGM as ``P2`` instead of ``P5``

    :param wide:
        Always use 16 bits per pixel for PGM and PNG
    """
    fmt = format_for(path)
    array = np.asarray(array)
    try:
        if fmt == PFM:
            with open(path, 'wb') as f:
                f.write(_encode_pfm(array))
        elif fmt == PGM:
            data = _encode_pgm(_integral(array), ascii, wide)
            with open(path, 'wb') as f:
                f.write(data)
        else:
            array = _integral(array)
            height, width = array.shape
            bitdepth = 16 if wide or array.max() > 255 else 8
            writer = png.Writer(
                width, height, greyscale=True, bitdepth=bitdepth)
            with open(path, 'wb') as f:
                writer.write(f, array.tolist())
    except (IOError, OSError) as err:
        raise exc.OutputError('Unable to write %s: %s' % (path, err))
    log.debug('save: %s (%s)', path, fmt)


def write_image(path, image, ascii=False):
    """Write a ``GrayImage``; PGM and PNG require integral intensities."""
    save(path, image.values, ascii=ascii)


def write_mask(path, mask, ascii=False):
    """Write a ``BinaryMask`` as 0/1 or a ``LabelMask`` as its labels."""
    if isinstance(mask, BinaryMask):
        save(path, mask.bits.astype(np.int64), ascii=ascii)
    else:
        save(path, mask.labels, ascii=ascii)


def write_labels(path, labels, ascii=False):
    """Write an integer label grid (e.g. a sector visualization)."""
    save(path, np.asarray(labels, dtype=np.int64), ascii=ascii)


def write_probability_map(path, pmap):
    """
    Write a ``ProbabilityMap``: as floats to PFM, or scaled to 16 bits for
    PGM and PNG.
    """
    if format_for(path) == PFM:
        save(path, pmap.probs)
    else:
        save(path, np.rint(pmap.probs * 65535).astype(np.int64), wide=True)
