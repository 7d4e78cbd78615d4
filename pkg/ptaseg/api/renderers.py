"""
Writers for report files: indented UTF-8 JSON and plain CSV.
"""

import csv
import logging
import math

from rest_framework.renderers import JSONRenderer

from .. import exc


log = logging.getLogger(__name__)


__all__ = ('ReportJSONRenderer', 'write_json', 'write_csv', 'format_cell')


class ReportJSONRenderer(JSONRenderer):
    """JSON renderer for report files: UTF-8, indented, newline-terminated."""
    charset = 'utf-8'
    ensure_ascii = False
    indent = 2

    def render(self, data, accepted_media_type=None, renderer_context=None):
        renderer_context = dict(renderer_context or {})
        renderer_context.setdefault('indent', self.indent)
        body = super(ReportJSONRenderer, self).render(
            data, accepted_media_type, renderer_context)
        return body + b'\n'


def _open_error(path, err):
    return exc.OutputError('Unable to write %s: %s' % (path, err))


def write_json(path, data):
    """
    Render ``data`` with ``ReportJSONRenderer`` and write it to ``path``.

    :param path:
        Output file

    :param data:
        Serializer output
    """
    body = ReportJSONRenderer().render(data)
    try:
        with open(path, 'wb') as f:
            f.write(body)
    except (IOError, OSError) as err:
        raise _open_error(path, err)
    log.debug('write_json: %s (%d bytes)', path, len(body))


def format_cell(value):
    """
    Text of one CSV cell: empty for ``None``, ``1``/``0`` for booleans and
    the shortest round-tripping form for reals.
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return repr(value)
    return str(value)


def write_csv(path, rows):
    """
    Write ``rows`` (the first being the header) with ``,`` separators and LF
    line endings.
    """
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            count = 0
            for row in rows:
                writer.writerow([format_cell(v) for v in row])
                count += 1
    except (IOError, OSError) as err:
        raise _open_error(path, err)
    log.debug('write_csv: %s (%d rows)', path, count)
