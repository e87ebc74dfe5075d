"""Exact bounded nearest-neighbor queries over a fixed point subset.

A :class:`NeighborIndex` is built once per canonical subset of the wedge
range structure and answers two kinds of queries with exact integer
arithmetic:

* ``top_k``: the k closest members to a probe point, ranked by
  (squared distance, point index), together with the threshold distance and
  a flag telling whether further members are tied at that threshold.
* ``enumerate_at_distances``: every member whose squared distance to the
  probe lies in a given set of values.

Small subsets are scanned directly; larger ones use a static kd-tree whose
box pruning is also exact (integer squared distances to axis-aligned
boxes).  The tie-break (distance, index) is fixed globally so that every
layer of the pipeline agrees on rankings.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass
from typing import Sequence

from .geometry import ScaledPoint, SqDist, sq_dist

_FLAT_LIMIT = 32
_LEAF_SIZE = 8


@dataclass(frozen=True, slots=True)
class NeighborAnswer:
    """Result of a top-k query.

    ``witnesses`` holds min(k, |Q|) point ids sorted by (squared distance,
    id); ``d_max`` is the squared distance of the last witness;
    ``truncated_ties`` is True iff some non-witness member sits at exactly
    ``d_max``.
    """

    witnesses: tuple[int, ...]
    d_max: SqDist
    truncated_ties: bool


class _KdNode:
    __slots__ = ("lo", "hi", "axis", "left", "right", "xmin", "xmax",
                 "ymin", "ymax", "min_id")

    def __init__(self, lo, hi, axis, left, right, xmin, xmax, ymin, ymax, min_id):
        self.lo = lo
        self.hi = hi
        self.axis = axis
        self.left = left
        self.right = right
        self.xmin = xmin
        self.xmax = xmax
        self.ymin = ymin
        self.ymax = ymax
        self.min_id = min_id


def _box_min_sqdist(node: _KdNode, px: int, py: int) -> int:
    dx = node.xmin - px if px < node.xmin else (px - node.xmax if px > node.xmax else 0)
    dy = node.ymin - py if py < node.ymin else (py - node.ymax if py > node.ymax else 0)
    return dx * dx + dy * dy


def _box_max_sqdist(node: _KdNode, px: int, py: int) -> int:
    dx = max(px - node.xmin, node.xmax - px)
    dy = max(py - node.ymin, node.ymax - py)
    return dx * dx + dy * dy


class NeighborIndex:
    """Immutable exact nearest-neighbor structure over a canonical subset.

    ``points`` is the full point table; ``ids`` selects the subset.  Build
    cost is O(m log m) for m = |ids| and queries never use floating point.
    """

    __slots__ = ("points", "ids", "_perm", "_root")

    def __init__(self, points: Sequence[ScaledPoint], ids: Sequence[int]):
        if not ids:
            raise ValueError("neighbor index requires a non-empty subset")
        self.points = points
        self.ids = tuple(ids)
        if len(self.ids) <= _FLAT_LIMIT:
            self._perm = None
            self._root = None
            return
        by_x = sorted(self.ids, key=lambda i: (points[i].x, points[i].y, i))
        by_y = sorted(self.ids, key=lambda i: (points[i].y, points[i].x, i))
        self._perm: list[int] = []
        self._root = self._build(by_x, by_y)

    def _build(self, by_x: list[int], by_y: list[int]) -> _KdNode:
        pts = self.points
        m = len(by_x)
        xmin, xmax = pts[by_x[0]].x, pts[by_x[-1]].x
        ymin, ymax = pts[by_y[0]].y, pts[by_y[-1]].y
        lo = len(self._perm)
        if m <= _LEAF_SIZE:
            self._perm.extend(by_x)
            return _KdNode(lo, lo + m, -1, None, None,
                           xmin, xmax, ymin, ymax, min(by_x))
        if xmax - xmin >= ymax - ymin:
            axis, primary, secondary = 0, by_x, by_y
        else:
            axis, primary, secondary = 1, by_y, by_x
        mid = m // 2
        left_ids = set(primary[:mid])
        sec_left = [i for i in secondary if i in left_ids]
        sec_right = [i for i in secondary if i not in left_ids]
        if axis == 0:
            left = self._build(primary[:mid], sec_left)
            right = self._build(primary[mid:], sec_right)
        else:
            left = self._build(sec_left, primary[:mid])
            right = self._build(sec_right, primary[mid:])
        return _KdNode(lo, len(self._perm), axis, left, right,
                       xmin, xmax, ymin, ymax, min(left.min_id, right.min_id))

    def top_k(self, p: ScaledPoint, k: int) -> NeighborAnswer:
        """The min(k, |Q|) closest members, with threshold tie detection."""
        if k < 1:
            raise ValueError("k must be at least 1")
        pts = self.points
        # Search one extra rank so a tie at the threshold is observable.
        limit = k + 1
        best: list[tuple[int, int]] = []
        if self._root is None:
            for i in self.ids:
                d = sq_dist(p, pts[i])
                if len(best) < limit:
                    insort(best, (d, i))
                elif (d, i) < best[-1]:
                    insort(best, (d, i))
                    best.pop()
        else:
            px, py = p.x, p.y
            perm = self._perm

            def visit(node: _KdNode) -> None:
                if len(best) == limit:
                    worst = best[-1]
                    bmin = _box_min_sqdist(node, px, py)
                    if bmin > worst[0] or (bmin == worst[0] and node.min_id > worst[1]):
                        return
                if node.axis < 0:
                    for j in range(node.lo, node.hi):
                        i = perm[j]
                        d = sq_dist(p, pts[i])
                        if len(best) < limit:
                            insort(best, (d, i))
                        elif (d, i) < best[-1]:
                            insort(best, (d, i))
                            best.pop()
                    return
                a = node.left
                b = node.right
                if _box_min_sqdist(a, px, py) > _box_min_sqdist(b, px, py):
                    a, b = b, a
                visit(a)
                visit(b)

            visit(self._root)
        take = best[:k]
        d_max = take[-1][0]
        ties = len(best) > len(take) and best[len(take)][0] == d_max
        return NeighborAnswer(tuple(i for _, i in take), d_max, ties)

    def enumerate_at_distances(self, p: ScaledPoint, distances) -> list[int]:
        """All member ids whose squared distance to p is in ``distances``."""
        dsorted = sorted(set(distances))
        if not dsorted:
            raise ValueError("distance set must be non-empty")
        dset = set(dsorted)
        pts = self.points
        out: list[int] = []
        if self._root is None:
            for i in self.ids:
                if sq_dist(p, pts[i]) in dset:
                    out.append(i)
            out.sort()
            return out
        px, py = p.x, p.y
        perm = self._perm

        def visit(node: _KdNode) -> None:
            lo = _box_min_sqdist(node, px, py)
            hi = _box_max_sqdist(node, px, py)
            j = bisect_left(dsorted, lo)
            if j == len(dsorted) or dsorted[j] > hi:
                return
            if node.axis < 0:
                for t in range(node.lo, node.hi):
                    i = perm[t]
                    if sq_dist(p, pts[i]) in dset:
                        out.append(i)
                return
            visit(node.left)
            visit(node.right)

        visit(self._root)
        out.sort()
        return out


def build_neighbor_index(points: Sequence[ScaledPoint],
                         ids: Sequence[int]) -> NeighborIndex:
    """Build an exact neighbor index over the subset ``ids`` of ``points``."""
    return NeighborIndex(points, ids)


def top_k(idx: NeighborIndex, p: ScaledPoint, k: int) -> NeighborAnswer:
    return idx.top_k(p, k)


def enumerate_at_distances(idx: NeighborIndex, p: ScaledPoint,
                           distances) -> list[int]:
    return idx.enumerate_at_distances(p, distances)
