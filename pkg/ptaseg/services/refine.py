"""
Local-search refinement of a segmentation.

The objective is ``J(S) = L_PT(image, S) + mu * |S ^ init| / |init|``: the
piecewise boundary loss of the candidate plus a fidelity penalty for every
pixel that differs from the initial mask.

A move shifts one straight run of the mask's edge by a pixel, outward or
inward. Every pixel a move flips is on the boundary or 4-adjacent to it, so
moves are runs of the single-pixel flips allowed next to the boundary. Each
iteration scores a few of the available moves and takes the best one if the
acceptance rule allows it. Scores are kept until the mask changes, so
iterations that revisit a move cost nothing.
"""

import logging
import math
import os

import numpy as np
from scipy import ndimage

from .. import exc, geometry, imageio
from ..api import renderers
from ..models import BinaryMask, RefineConfig, RefineTrace
from ..models import constants
from ..piecewise import piecewise_loss
from .base import Service


log = logging.getLogger(__name__)


__all__ = ('objective', 'candidates', 'edge_moves', 'refine', 'RefineService')


#: Unit steps ``(dx, dy)`` of the four directions an edge can face
DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def objective(image, mask, init, rc):
    """
    Return ``(J, L_PT)`` of ``mask``.

    Raises ``EmptyRegionError`` for an empty mask and ``DegenerateBandError``
    when no sector can be evaluated.

    :param image:
        ``GrayImage``

    :param mask:
        Candidate ``BinaryMask``

    :param init:
        The initial ``BinaryMask``

    :param rc:
        ``RefineConfig``
    """
    cfg = rc.pta
    sectors = geometry.sectorize(mask, cfg.band_width, cfg.sectors)
    l_pt = piecewise_loss(image, sectors, cfg.mode, cfg.epsilon).aggregate
    fidelity = (mask ^ init).count / float(init.count)
    return l_pt + rc.mu * fidelity, l_pt


def candidates(mask):
    """
    Flat indices of the pixels a move may flip: the boundary of ``mask`` and
    its 4-neighbors.
    """
    boundary = geometry.extract_boundary(mask)
    near = ndimage.binary_dilation(
        boundary.bits, structure=geometry.FOUR_CONNECTED)
    return np.flatnonzero(near)


def _offset(bits, dx, dy):
    """``out[y, x] = bits[y - dy, x - dx]``, False off the grid."""
    height, width = bits.shape
    rows = slice(max(dy, 0), height + min(dy, 0))
    cols = slice(max(dx, 0), width + min(dx, 0))
    from_rows = slice(max(-dy, 0), height + min(-dy, 0))
    from_cols = slice(max(-dx, 0), width + min(-dx, 0))
    out = np.zeros_like(bits)
    out[rows, cols] = bits[from_rows, from_cols]
    return out


def _runs(layer):
    """Flat indices of each 8-connected run of ``layer``, ascending."""
    labels, count = ndimage.label(layer, structure=geometry.EIGHT_CONNECTED)
    if not count:
        return []
    flat = labels.ravel()
    order = np.argsort(flat, kind='stable')
    bounds = np.searchsorted(flat[order], np.arange(1, count + 2))
    return [order[bounds[i]:bounds[i + 1]] for i in range(count)]


def edge_moves(mask):
    """
    The moves available from ``mask``.

    For each direction, the pixels just beyond the edges that face it (a move
    outward) and the boundary pixels that face it (a move inward) are split
    into 8-connected runs. Each run is one move. Pixels on the grid border
    face outward. Returns flat-index arrays ordered by their lowest index.

    :param mask:
        ``BinaryMask``
    """
    bits = mask.bits
    layers = []
    for dx, dy in DIRECTIONS:
        layers.append(~bits & _offset(bits, dx, dy))
        layers.append(bits & ~_offset(bits, -dx, -dy))

    moves = {}
    for layer in layers:
        for run in _runs(layer):
            moves.setdefault(run.tobytes(), run)
    return sorted(moves.values(), key=lambda run: int(run[0]))


def _apply(mask, move):
    flat = mask.bits.ravel().copy()
    flat[move] = ~flat[move]
    return BinaryMask(flat.reshape(mask.shape))


def _score(image, mask, init, rc):
    """Objective of a candidate; ``inf`` for masks the search must avoid."""
    if mask.is_empty or mask.count == mask.width * mask.height:
        return math.inf, None
    try:
        return objective(image, mask, init, rc)
    except (exc.DegenerateBandError, exc.EmptyRegionError):
        return math.inf, None


def refine(image, init, rc=None):
    """
    Refine ``init`` by local search and return ``(mask, trace)``.

    Row 0 of the trace is the initial mask. Each iteration scores
    ``rc.moves_per_iter`` moves drawn from ``edge_moves`` of the current mask,
    in move order; the first of equally good moves wins. Under the greedy rule
    a move is taken only if it lowers ``J``; annealing also takes a worse move
    with probability ``exp(-delta / T)``, cooling ``T`` geometrically. The mask
    never becomes empty or covers the whole grid.

    :param image:
        ``GrayImage``

    :param init:
        Non-empty initial ``BinaryMask``

    :param rc:
        ``RefineConfig``; defaults to the configured one
    """
    if rc is None:
        rc = RefineConfig.from_settings()
    if init.is_empty:
        raise exc.EmptyRegionError('Initial mask is empty.')
    if image.shape != init.shape:
        raise exc.DimensionMismatch(
            'Image is %dx%d but the mask is %dx%d.' % (
                image.width, image.height, init.width, init.height)
        )

    rng = np.random.default_rng(rc.seed)
    current = init
    J, l_pt = objective(image, init, init, rc)
    trace = RefineTrace()
    trace.record(J, l_pt, 0, True)

    temperature = rc.temperature
    annealing = rc.acceptance == constants.ACCEPT_ANNEALING
    moves = edge_moves(current)
    scored = {}

    for iteration in range(1, rc.max_iters + 1):
        best = None
        if moves:
            picks = np.sort(rng.choice(
                len(moves), size=min(rc.moves_per_iter, len(moves)),
                replace=False))
            for pick in picks.tolist():
                if pick not in scored:
                    trial = _apply(current, moves[pick])
                    scored[pick] = _score(image, trial, init, rc) + (trial,)
                if best is None or scored[pick][0] < best[0]:
                    best = scored[pick]

        accepted = False
        if best is not None and math.isfinite(best[0]):
            delta = best[0] - J
            if delta < 0:
                accepted = True
            elif annealing and temperature > 0:
                accepted = rng.random() < math.exp(-delta / temperature)

        if accepted:
            J, l_pt, current = best
            moves = edge_moves(current)
            scored = {}
        trace.record(J, l_pt, (current ^ init).count, accepted)

        if annealing:
            temperature *= rc.cooling
        log.debug('iteration %d: J=%r accepted=%r', iteration, J, accepted)

    trace.final_mask = current
    return current, trace


class RefineService(Service):
    """Refine one mask and write the result and its trace."""
    name = 'refine'

    def __init__(self, image, init, mask_path, trace_path, rc=None, log=None):
        super(RefineService, self).__init__(log=log)
        self.image = image
        self.init = init
        self.mask_path = mask_path
        self.trace_path = trace_path
        self.rc = rc if rc is not None else RefineConfig.from_settings()

    def run(self):
        self.log.info(
            'Refining %d-pixel mask: mu=%r, %d iteration(s), %s',
            self.init.count, self.rc.mu, self.rc.max_iters,
            self.rc.acceptance,
        )
        mask, trace = refine(self.image, self.init, self.rc)

        directory = os.path.dirname(self.mask_path)
        if directory and not os.path.isdir(directory):
            raise exc.OutputError('No such directory: %s' % directory)
        imageio.write_mask(self.mask_path, mask)
        renderers.write_csv(
            self.trace_path,
            [['iteration', 'objective', 'l_pt', 'changed', 'accepted']] +
            [list(row) for row in trace.rows()],
        )
        self.log.info(
            'J %r -> %r after %d accepted move(s), %d pixel(s) changed; '
            'wrote %s and %s',
            trace.objective[0], trace.objective[-1],
            len(trace.accepted_objectives()) - 1, trace.changed[-1],
            self.mask_path, self.trace_path,
        )
        return mask, trace
