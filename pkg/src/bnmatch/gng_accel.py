"""Vectorized neighborhood-graph engine for large, spread-bounded inputs.

Strategy: a kd-tree supplies, per point, a generous ball of nearest
candidates (floating point, used only to *generate* candidates).  All
selection is then exact 64-bit integer arithmetic: per wedge the k-th
smallest candidate distance is found, every candidate at or below it is a
neighbor, and the result is *certified* sound when the exact threshold lies
strictly inside the ball with a conservative floating-point margin.  Points
whose ball was too small escalate to a larger ball and, ultimately, to an
exact full scan, so degenerate inputs (massive ties) stay correct, just
slower.

The int64 guarantees need the coordinate spread (max - min per axis) to be
at most SAFE_SPREAD: then squared distances stay below 2**63 and the
3*dx*dx term of the wedge sign tests does too.  Inputs beyond the bound use
the reference engine instead.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .geometry import ScaledPoint

SAFE_SPREAD = 1_750_000_000

_I64_MAX = np.iinfo(np.int64).max
# Relative slack covering kd float error plus int64->float rounding.
_CERT_MARGIN = (1.0 - 3e-12) * (1.0 - 1e-9)


def spread_safe(points: Sequence[ScaledPoint]) -> bool:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (max(xs) - min(xs)) <= SAFE_SPREAD and (max(ys) - min(ys)) <= SAFE_SPREAD


def _sign_i64(a: np.ndarray) -> np.ndarray:
    return np.sign(a).astype(np.int8)


def _sqrt3_sign_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vector form of geometry.sqrt3_sign, exact for |a|, |b| <= SAFE_SPREAD."""
    out = np.zeros(a.shape, dtype=np.int8)
    pos = a > 0
    neg = a < 0
    zero = ~pos & ~neg
    out[zero] = _sign_i64(b[zero])
    m = pos & (b >= 0)
    out[m] = 1
    m = pos & (b < 0)
    out[m] = _sign_i64(3 * a[m] * a[m] - b[m] * b[m])
    m = neg & (b <= 0)
    out[m] = -1
    m = neg & (b > 0)
    out[m] = _sign_i64(b[m] * b[m] - 3 * a[m] * a[m])
    return out


def _wedge_masks(dx: np.ndarray, dy: np.ndarray) -> list[np.ndarray]:
    s0 = _sign_i64(dy)
    sp = _sqrt3_sign_np(dx, -dy)
    sm = _sqrt3_sign_np(dx, dy)
    return [
        (s0 >= 0) & (sp >= 0),
        (sp <= 0) & (sm >= 0),
        (s0 >= 0) & (sm <= 0),
        (s0 <= 0) & (sp <= 0),
        (sp >= 0) & (sm <= 0),
        (s0 <= 0) & (sm >= 0),
    ]


def build_gng_accelerated(points: Sequence[ScaledPoint], k: int,
                          lengths_only: bool):
    """Exact neighborhood graph via candidate balls plus certification."""
    from .gng import NeighborhoodGraph

    n = len(points)
    xs = np.fromiter((p.x for p in points), dtype=np.int64, count=n)
    ys = np.fromiter((p.y for p in points), dtype=np.int64, count=n)
    xs -= xs.min()
    ys -= ys.min()
    if int(xs.max()) > SAFE_SPREAD or int(ys.max()) > SAFE_SPREAD:
        raise ValueError("coordinate spread exceeds the accelerated-engine bound")
    coords = np.stack([xs, ys], axis=1).astype(np.float64)
    tree = cKDTree(coords)

    frag_a: list[np.ndarray] = []
    frag_b: list[np.ndarray] = []
    frag_d: list[np.ndarray] = []
    needed = np.ones((n, 6), dtype=bool)
    pending = np.arange(n, dtype=np.int64)
    ball = min(n, max(64, 12 * k))
    while pending.size:
        chunk = max(1, 8_000_000 // ball)
        for c0 in range(0, pending.size, chunk):
            sub = pending[c0:c0 + chunk]
            _process(tree, coords, xs, ys, sub, ball, k, n, needed,
                     frag_a, frag_b, frag_d)
        pending = pending[needed[pending].any(axis=1)]
        if pending.size and ball >= n:
            raise AssertionError("full-ball pass left uncertified wedges")
        ball = min(n, ball * 4)

    if frag_d:
        a = np.concatenate(frag_a)
        b = np.concatenate(frag_b)
        d = np.concatenate(frag_d)
    else:
        a = np.empty(0, dtype=np.int64)
        b = np.empty(0, dtype=np.int64)
        d = np.empty(0, dtype=np.int64)
    lengths = np.unique(d)
    if lengths_only:
        return NeighborhoodGraph.from_arrays(n, k, None, None, lengths,
                                             lengths_only=True)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    key = lo * np.int64(n) + hi
    key, first = np.unique(key, return_index=True)
    edges = np.stack([key // n, key % n], axis=1)
    sqd = d[first]
    return NeighborhoodGraph.from_arrays(n, k, edges, sqd, lengths)


def _process(tree, coords, xs, ys, sub, ball, k, n, needed,
             frag_a, frag_b, frag_d) -> None:
    dist_f, idx = tree.query(coords[sub], k=ball, workers=-1)
    if ball == 1:
        dist_f = dist_f[:, None]
        idx = idx[:, None]
    ball_all = ball == n
    rho = (dist_f[:, -1] ** 2) * _CERT_MARGIN
    idx = idx.astype(np.int64)
    dx = xs[idx] - xs[sub][:, None]
    dy = ys[idx] - ys[sub][:, None]
    sq = dx * dx + dy * dy
    nonself = idx != sub[:, None]
    kk = min(k, ball)
    for w, mask in enumerate(_wedge_masks(dx, dy)):
        active = needed[sub, w]
        if not active.any():
            continue
        m = mask & nonself
        sqw = np.where(m, sq, _I64_MAX)
        part = np.partition(sqw, kk - 1, axis=1)
        dk = part[:, kk - 1]
        cnt = m.sum(axis=1)
        has_k = cnt >= k
        if ball_all:
            cert = np.ones(len(sub), dtype=bool)
        else:
            cert = has_k & (dk.astype(np.float64) < rho)
        cert &= active
        if not cert.any():
            continue
        thr = np.where(has_k, dk, _I64_MAX)
        hit = m & (sq <= thr[:, None]) & cert[:, None]
        rows, cols = np.nonzero(hit)
        frag_a.append(sub[rows])
        frag_b.append(idx[rows, cols])
        frag_d.append(sq[rows, cols])
        needed[sub[cert], w] = False
