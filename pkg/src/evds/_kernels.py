"""Hot inner loops, each in a numba and a plain numpy/Python flavour.

The public names at the bottom (``udg_pairs``, ``hex_cells``,
``first_cover``) dispatch to one flavour, chosen once at import time.
Set ``EVDS_DISABLE_NUMBA=1`` to force the fallback path, e.g. when
debugging or on a platform without numba. Both flavours are always
importable under their explicit names so tests and the benchmark can
compare them.
"""

import itertools
import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("EVDS_DISABLE_NUMBA", "").strip().lower() not in (
    "1",
    "true",
    "yes",
    "on",
)


def _optional_njit(*args, **kwargs):
    def decorator(func):
        if HAVE_NUMBA:
            return njit(*args, **kwargs)(func)
        return func

    return decorator


def backend():
    return "numba" if USE_NUMBA else "numpy"


SQRT3 = math.sqrt(3.0)

# axial neighbour offsets of a flat-top hexagon, counter-clockwise from "upper right"
HEX_DIRECTIONS = ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))


# ---------------------------------------------------------------------------
# unit-distance pair scan


def _sort_by_x(xs, ys):
    order = np.argsort(xs, kind="stable").astype(np.int64)
    return order, xs[order], ys[order]


@_optional_njit(cache=True)
def _sweep_pairs(order, sx, sy):
    n = sx.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = sx[j] - sx[i]
            if dx > 1.0:
                break
            dy = sy[j] - sy[i]
            if dx * dx + dy * dy <= 1.0:
                count += 1
    out = np.empty((count, 2), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = sx[j] - sx[i]
            if dx > 1.0:
                break
            dy = sy[j] - sy[i]
            if dx * dx + dy * dy <= 1.0:
                a = order[i]
                b = order[j]
                if a < b:
                    out[k, 0] = a
                    out[k, 1] = b
                else:
                    out[k, 0] = b
                    out[k, 1] = a
                k += 1
    return out


def _finish_pairs(pairs):
    if pairs.shape[0] == 0:
        return pairs.reshape(0, 2)
    idx = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return np.ascontiguousarray(pairs[idx])


def udg_pairs_numba(xs, ys):
    """All index pairs (i < j) with squared distance <= 1, sorted lexicographically."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    order, sx, sy = _sort_by_x(xs, ys)
    return _finish_pairs(_sweep_pairs(order, sx, sy))


def udg_pairs_numpy(xs, ys, chunk=512):
    """Vectorised sweep: rows of a chunk are compared with their x-window at once."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    n = xs.shape[0]
    order, sx, sy = _sort_by_x(xs, ys)
    hi = np.searchsorted(sx, sx + 1.0, side="right")
    found = []
    for start in range(0, n, chunk):
        rows = np.arange(start, min(start + chunk, n))
        width = int((hi[rows] - rows).max()) - 1
        if width <= 0:
            continue
        cols = rows[:, None] + 1 + np.arange(width)[None, :]
        valid = cols < hi[rows][:, None]
        cols = np.where(valid, cols, rows[:, None])
        dx = sx[cols] - sx[rows][:, None]
        dy = sy[cols] - sy[rows][:, None]
        hit = valid & (dx * dx + dy * dy <= 1.0)
        r, c = np.nonzero(hit)
        a = order[rows[r]]
        b = order[cols[r, c]]
        found.append(np.stack([np.minimum(a, b), np.maximum(a, b)], axis=1))
    if not found:
        return np.empty((0, 2), dtype=np.int64)
    return _finish_pairs(np.concatenate(found).astype(np.int64))


# ---------------------------------------------------------------------------
# flat-top hexagon assignment
#
# Cell (q, r) has centre (ox + 1.5*s*q, oy + sqrt(3)*s*(r + q/2)). A point
# belongs to the nearest centre; exact ties go to the higher centre, then the
# one further right, so each hexagon owns its lower boundary edges.


@_optional_njit(cache=True)
def _hex_cells_loop(xs, ys, ox, oy, side):
    n = xs.shape[0]
    out = np.empty((n, 2), dtype=np.int64)
    h = SQRT3 * side
    for i in range(n):
        px = xs[i] - ox
        py = ys[i] - oy
        qf = (2.0 / 3.0) * px / side
        rf = (-px / 3.0 + SQRT3 / 3.0 * py) / side
        sf = -qf - rf
        q = round(qf)
        r = round(rf)
        s = round(sf)
        dq = abs(q - qf)
        dr = abs(r - rf)
        ds = abs(s - sf)
        if dq > dr and dq > ds:
            q = -r - s
        elif dr > ds:
            r = -q - s
        bq = 0
        br = 0
        bd = np.inf
        bcx = 0.0
        bcy = 0.0
        for k in range(7):
            if k == 0:
                cq = q
                cr = r
            else:
                cq = q + HEX_DIRECTIONS[k - 1][0]
                cr = r + HEX_DIRECTIONS[k - 1][1]
            cx = 1.5 * side * cq
            cy = h * (cr + 0.5 * cq)
            d = (px - cx) * (px - cx) + (py - cy) * (py - cy)
            if d < bd or (d == bd and (cy > bcy or (cy == bcy and cx > bcx))):
                bd = d
                bq = cq
                br = cr
                bcx = cx
                bcy = cy
        out[i, 0] = int(bq)
        out[i, 1] = int(br)
    return out


def hex_cells_numba(xs, ys, ox, oy, side):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    return _hex_cells_loop(xs, ys, float(ox), float(oy), float(side))


def hex_cells_numpy(xs, ys, ox, oy, side):
    px = np.asarray(xs, dtype=np.float64) - ox
    py = np.asarray(ys, dtype=np.float64) - oy
    qf = (2.0 / 3.0) * px / side
    rf = (-px / 3.0 + SQRT3 / 3.0 * py) / side
    sf = -qf - rf
    q, r, s = np.round(qf), np.round(rf), np.round(sf)
    dq, dr, ds = np.abs(q - qf), np.abs(r - rf), np.abs(s - sf)
    fix_q = (dq > dr) & (dq > ds)
    fix_r = ~fix_q & (dr > ds)
    q = np.where(fix_q, -r - s, q)
    r = np.where(fix_r, -q - s, r)

    h = SQRT3 * side
    best_q, best_r = q.copy(), r.copy()
    best_d = np.full(px.shape, np.inf)
    best_cx = np.zeros(px.shape)
    best_cy = np.zeros(px.shape)
    for dq_, dr_ in ((0, 0),) + HEX_DIRECTIONS:
        cq, cr = q + dq_, r + dr_
        cx = 1.5 * side * cq
        cy = h * (cr + 0.5 * cq)
        d = (px - cx) * (px - cx) + (py - cy) * (py - cy)
        take = (d < best_d) | ((d == best_d) & ((cy > best_cy) | ((cy == best_cy) & (cx > best_cx))))
        best_q = np.where(take, cq, best_q)
        best_r = np.where(take, cr, best_r)
        best_d = np.where(take, d, best_d)
        best_cx = np.where(take, cx, best_cx)
        best_cy = np.where(take, cy, best_cy)
    return np.stack([best_q, best_r], axis=1).astype(np.int64)


# ---------------------------------------------------------------------------
# lexicographically-first set cover of a fixed size
#
# masks[c] is the bitset (uint64 words) of target vertices candidate c
# ev-dominates. The search walks size-k index tuples in lexicographic order and
# prunes a subtree when the candidates still available cannot cover what is
# left, so the first hit is the lexicographically least feasible tuple.


@_optional_njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@_optional_njit(cache=True)
def _cover_search(masks, suffix, full, top_sum, k):
    m, w = masks.shape
    idx = np.full(k, -1, dtype=np.int64)
    cov = np.zeros((k + 1, w), dtype=np.uint64)
    level = 0
    while level >= 0:
        idx[level] += 1
        c = idx[level]
        if c > m - (k - level):
            level -= 1
            continue
        # candidates c.. must still be able to finish the cover
        reachable = True
        for t in range(w):
            if (cov[level, t] | suffix[c, t]) != full[t]:
                reachable = False
                break
        if not reachable:
            level -= 1
            continue
        missing = 0
        for t in range(w):
            cov[level + 1, t] = cov[level, t] | masks[c, t]
            missing += _popcount64(full[t] & ~cov[level + 1, t])
        if missing == 0:
            return idx[: level + 1].copy()
        if level == k - 1 or missing > top_sum[k - level - 1]:
            continue
        level += 1
        idx[level] = c
    return np.empty(0, dtype=np.int64)


def _bitset_tables(masks):
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    m, w = masks.shape
    suffix = np.zeros((m + 1, w), dtype=np.uint64)
    for c in range(m - 1, -1, -1):
        suffix[c] = suffix[c + 1] | masks[c]
    pops = np.array(
        [sum(bin(int(word)).count("1") for word in row) for row in masks], dtype=np.int64
    )
    top_sum = np.concatenate([[0], np.cumsum(np.sort(pops)[::-1])]).astype(np.int64)
    return masks, suffix, top_sum


def first_cover_numba(masks, full, k):
    """Lexicographically least k-subset (or smaller prefix) of rows covering ``full``.

    Returns the chosen row indices, or ``None`` when no subset of at most
    ``k`` rows taken in lexicographic order covers every bit.
    """
    if k <= 0:
        return None
    masks, suffix, top_sum = _bitset_tables(masks)
    full = np.ascontiguousarray(full, dtype=np.uint64)
    if masks.shape[0] == 0:
        return None
    found = _cover_search(masks, suffix, full, top_sum, int(min(k, masks.shape[0])))
    return None if found.shape[0] == 0 else found


def _to_int(row):
    value = 0
    for t, word in enumerate(row):
        value |= int(word) << (64 * t)
    return value


def first_cover_numpy(masks, full, k):
    """Same search as :func:`first_cover_numba`, on Python big-int bitsets."""
    if k <= 0:
        return None
    masks = np.asarray(masks, dtype=np.uint64)
    m = masks.shape[0]
    if m == 0:
        return None
    k = min(k, m)
    rows = [_to_int(row) for row in masks]
    target = _to_int(full)
    suffix = [0] * (m + 1)
    for c in range(m - 1, -1, -1):
        suffix[c] = suffix[c + 1] | rows[c]
    top_sum = [0] + list(itertools.accumulate(sorted((r.bit_count() for r in rows), reverse=True)))

    idx = [-1] * k
    cov = [0] * (k + 1)
    level = 0
    while level >= 0:
        idx[level] += 1
        c = idx[level]
        if c > m - (k - level) or (cov[level] | suffix[c]) != target:
            level -= 1
            continue
        cov[level + 1] = cov[level] | rows[c]
        missing = (target & ~cov[level + 1]).bit_count()
        if missing == 0:
            return np.array(idx[: level + 1], dtype=np.int64)
        if level == k - 1 or missing > top_sum[k - level - 1]:
            continue
        level += 1
        idx[level] = c
    return None


if USE_NUMBA:
    udg_pairs = udg_pairs_numba
    hex_cells = hex_cells_numba
    first_cover = first_cover_numba
else:
    udg_pairs = udg_pairs_numpy
    hex_cells = hex_cells_numpy
    first_cover = first_cover_numpy
