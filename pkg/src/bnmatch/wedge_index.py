"""Two-level range structure answering closed-wedge queries by canonical subsets.

For a fixed wedge direction i, membership of q in the closed wedge anchored
at p is a two-sided dominance test on the exact keys (u, v) from
:func:`bnmatch.geometry.wedge_keys`.  The structure therefore is:

* first level: a balanced segment tree over the points sorted by u
  (ties broken by point index);
* second level, per first-level node: the node's points sorted by v, with a
  segment tree over that order whose nodes are the canonical subsets; each
  canonical subset carries a :class:`~bnmatch.neighbors.NeighborIndex`.

A query at p decomposes {q : u(q) >= u(p)} into O(log n) first-level nodes
and, inside each, {q : v(q) >= v(p)} into O(log n) canonical suffix pieces,
for O(log^2 n) disjoint canonical subsets whose union is exactly
P intersected with the closed wedge at p, minus p itself.  When p is a
member of P its leaf is skipped at the first level, which keeps the pieces
pure and only doubles the number of first-level ranges.

Everything is immutable after construction; concurrent queries are safe.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

from .geometry import ScaledPoint, WedgeId, check_points, wedge_keys
from .neighbors import NeighborIndex


class _FirstNode:
    __slots__ = ("lo", "hi", "left", "right", "vids", "vkeys", "pieces")

    def __init__(self, lo: int, hi: int):
        self.lo = lo
        self.hi = hi
        self.left: "_FirstNode | None" = None
        self.right: "_FirstNode | None" = None
        self.vids: list[int] = []
        self.vkeys: list = []
        # second-level segment tree over positions of vids, stored as
        # (lo2, hi2, left_idx, right_idx, piece_id) tuples
        self.pieces: list[tuple[int, int, int, int, int]] = []


class WedgeRangeIndex:
    """Canonical-subset decomposition structure for one wedge direction."""

    def __init__(self, points: Sequence[ScaledPoint], wedge: WedgeId):
        if not points:
            raise ValueError("wedge index requires at least one point")
        check_points(points)
        self.points = list(points)
        self.wedge = wedge
        n = len(self.points)
        ukeys = []
        vkeys = []
        for p in self.points:
            u, v = wedge_keys(wedge, p)
            ukeys.append(u)
            vkeys.append(v)
        self._ukeys = ukeys
        self._vkeys = vkeys
        self._uorder = sorted(range(n), key=lambda i: (ukeys[i], i))
        self._usorted_keys = [ukeys[i] for i in self._uorder]
        self._upos = {self._uorder[t]: t for t in range(n)}
        self._coord_to_id = {(p.x, p.y): i for i, p in enumerate(self.points)}
        self._canonical_sets: list[tuple[int, ...]] = []
        self._neighbor_indexes: list[NeighborIndex] = []
        self.stored_multiplicity = 0
        self._root = self._build_first(0, n)

    # -- construction -----------------------------------------------------

    def _build_first(self, lo: int, hi: int) -> _FirstNode:
        node = _FirstNode(lo, hi)
        if hi - lo == 1:
            i = self._uorder[lo]
            node.vids = [i]
            node.vkeys = [self._vkeys[i]]
        else:
            mid = (lo + hi) // 2
            node.left = self._build_first(lo, mid)
            node.right = self._build_first(mid, hi)
            node.vids, node.vkeys = self._merge_by_v(node.left, node.right)
        self.stored_multiplicity += len(node.vids)
        self._build_second(node, 0, len(node.vids))
        return node

    def _merge_by_v(self, a: _FirstNode, b: _FirstNode):
        vk = self._vkeys
        ids: list[int] = []
        keys: list = []
        ia = ib = 0
        av, bv = a.vids, b.vids
        while ia < len(av) and ib < len(bv):
            x, y = av[ia], bv[ib]
            if (vk[x], x) <= (vk[y], y):
                ids.append(x)
                keys.append(vk[x])
                ia += 1
            else:
                ids.append(y)
                keys.append(vk[y])
                ib += 1
        for x in av[ia:]:
            ids.append(x)
            keys.append(vk[x])
        for y in bv[ib:]:
            ids.append(y)
            keys.append(vk[y])
        return ids, keys

    def _build_second(self, node: _FirstNode, lo2: int, hi2: int) -> int:
        """Create the canonical piece for [lo2, hi2) and recurse; returns its
        position inside ``node.pieces``."""
        members = tuple(node.vids[lo2:hi2])
        piece_id = len(self._canonical_sets)
        self._canonical_sets.append(members)
        self._neighbor_indexes.append(NeighborIndex(self.points, members))
        left_idx = right_idx = -1
        if hi2 - lo2 > 1:
            mid = (lo2 + hi2) // 2
            left_idx = self._build_second(node, lo2, mid)
            right_idx = self._build_second(node, mid, hi2)
        node.pieces.append((lo2, hi2, left_idx, right_idx, piece_id))
        return len(node.pieces) - 1

    # -- queries ----------------------------------------------------------

    def canonical_set(self, piece_id: int) -> tuple[int, ...]:
        return self._canonical_sets[piece_id]

    def neighbor_index(self, piece_id: int) -> NeighborIndex:
        return self._neighbor_indexes[piece_id]

    def canonical_decomposition(self, p: ScaledPoint) -> list[int]:
        """Disjoint canonical piece ids covering the closed wedge at p.

        The union of the returned canonical sets is exactly the set of
        points q of P with q in p + W_i, excluding p itself when p is a
        member of P (matched by coordinates).
        """
        n = len(self.points)
        ukey, vkey = wedge_keys(self.wedge, p)
        start = bisect_left(self._usorted_keys, ukey)
        if start >= n:
            return []
        own = self._coord_to_id.get((p.x, p.y))
        ranges: list[tuple[int, int]]
        if own is not None:
            pos = self._upos[own]
            ranges = [(start, pos), (pos + 1, n)] if pos >= start else [(start, n)]
        else:
            ranges = [(start, n)]
        first_nodes: list[_FirstNode] = []
        for a, b in ranges:
            if a < b:
                self._cover_first(self._root, a, b, first_nodes)
        out: list[int] = []
        for node in first_nodes:
            t = bisect_left(node.vkeys, vkey)
            if t < len(node.vids):
                self._cover_second(node, len(node.pieces) - 1, t, len(node.vids), out)
        return out

    def _cover_first(self, node: _FirstNode, a: int, b: int,
                     out: list[_FirstNode]) -> None:
        if b <= node.lo or node.hi <= a:
            return
        if a <= node.lo and node.hi <= b:
            out.append(node)
            return
        self._cover_first(node.left, a, b, out)
        self._cover_first(node.right, a, b, out)

    def _cover_second(self, node: _FirstNode, piece_idx: int, a: int, b: int,
                      out: list[int]) -> None:
        lo2, hi2, left_idx, right_idx, piece_id = node.pieces[piece_idx]
        if b <= lo2 or hi2 <= a:
            return
        if a <= lo2 and hi2 <= b:
            out.append(piece_id)
            return
        self._cover_second(node, left_idx, a, b, out)
        self._cover_second(node, right_idx, a, b, out)


def build_wedge_index(points: Sequence[ScaledPoint],
                      wedge: WedgeId) -> WedgeRangeIndex:
    """Build the canonical-subset structure for one wedge direction."""
    return WedgeRangeIndex(points, wedge)


def canonical_decomposition(idx: WedgeRangeIndex,
                            p: ScaledPoint) -> list[int]:
    return idx.canonical_decomposition(p)
