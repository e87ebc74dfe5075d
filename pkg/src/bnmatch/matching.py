"""Maximum-cardinality matching on general graphs and the threshold oracle.

The matcher is an iterative Edmonds blossom search over a CSR adjacency:
a greedy matching seeds the process, then one alternating-forest search is
grown from each remaining exposed vertex in ascending index order.  A
search that finds no augmenting path leaves its root exposed for good
(some maximum matching does the same), so each exposed vertex is processed
once.  Odd cycles are contracted by rebasing vertices onto the cycle's
base; stamped scratch arrays keep per-search resets cheap.

When numba is importable the search core is jit-compiled; otherwise the
identical Python source runs as-is, so both modes share one audited code
path.

``threshold_graph`` keeps exactly the pairs at squared distance <= r2,
either filtered from a candidate edge list that carries exact squared
lengths, or by an all-pairs scan.  ``has_perfect_matching`` is the decision
oracle used by the bottleneck search; it is monotone in r2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import ScaledPoint, SqDist, sq_dist

_I64_MAX = np.iinfo(np.int64).max


def _max_matching_core(n, indptr, indices, match):  # pragma: no cover - jitted
    # Greedy seed: pair each free vertex with its lowest-index free neighbor.
    for v in range(n):
        if match[v] < 0:
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if u != v and match[u] < 0:
                    match[v] = u
                    match[u] = v
                    break
    parent = np.full(n, -1, np.int64)
    base = np.arange(n)
    outer = np.zeros(n, np.uint8)
    inbl = np.zeros(n, np.int64)
    mark = np.zeros(n, np.int64)
    queue = np.empty(n, np.int64)
    ptouch = np.empty(n, np.int64)
    lca_stamp = 0
    bl_stamp = 0
    for root in range(n):
        if match[root] >= 0:
            continue
        head = 0
        tail = 0
        queue[tail] = root
        tail += 1
        outer[root] = 1
        pt_cnt = 0
        had_blossom = False
        finish = -1
        while head < tail and finish < 0:
            v = queue[head]
            head += 1
            for e in range(indptr[v], indptr[v + 1]):
                to = indices[e]
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    # Edge between two outer vertices closes an odd cycle.
                    lca_stamp += 1
                    a = v
                    while True:
                        a = base[a]
                        mark[a] = lca_stamp
                        if match[a] < 0:
                            break
                        a = parent[match[a]]
                    a = to
                    while True:
                        a = base[a]
                        if mark[a] == lca_stamp:
                            break
                        a = parent[match[a]]
                    cur = a
                    bl_stamp += 1
                    x = v
                    child = to
                    while base[x] != cur:
                        inbl[base[x]] = bl_stamp
                        inbl[base[match[x]]] = bl_stamp
                        parent[x] = child
                        child = match[x]
                        x = parent[match[x]]
                    x = to
                    child = v
                    while base[x] != cur:
                        inbl[base[x]] = bl_stamp
                        inbl[base[match[x]]] = bl_stamp
                        parent[x] = child
                        child = match[x]
                        x = parent[match[x]]
                    for i in range(n):
                        if inbl[base[i]] == bl_stamp:
                            base[i] = cur
                            if outer[i] == 0:
                                outer[i] = 1
                                queue[tail] = i
                                tail += 1
                    had_blossom = True
                elif parent[to] < 0:
                    parent[to] = v
                    ptouch[pt_cnt] = to
                    pt_cnt += 1
                    if match[to] < 0:
                        finish = to
                        break
                    u = match[to]
                    if outer[u] == 0:
                        outer[u] = 1
                        queue[tail] = u
                        tail += 1
        if finish >= 0:
            v = finish
            while v >= 0:
                pv = parent[v]
                nxt = match[pv]
                match[v] = pv
                match[pv] = v
                v = nxt
        if had_blossom:
            for i in range(n):
                parent[i] = -1
                outer[i] = 0
                base[i] = i
        else:
            for t in range(tail):
                outer[queue[t]] = 0
            for t in range(pt_cnt):
                parent[ptouch[t]] = -1
    return match


try:  # the jitted and plain variants share the same source
    from numba import njit

    _max_matching_jit = njit(cache=True)(_max_matching_core)
except ImportError:  # pragma: no cover - numba is a normal dependency
    _max_matching_jit = _max_matching_core


class AdjacencyGraph:
    """Undirected simple graph over vertices 0..n-1 in CSR form."""

    __slots__ = ("n", "indptr", "indices", "edges")

    def __init__(self, n: int, edges: np.ndarray):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("edge endpoint out of range")
            if bool((edges[:, 0] == edges[:, 1]).any()):
                raise ValueError("self-loops are not allowed")
            lo = np.minimum(edges[:, 0], edges[:, 1])
            hi = np.maximum(edges[:, 0], edges[:, 1])
            key = lo * np.int64(max(n, 1)) + hi
            key = np.unique(key)
            edges = np.stack([key // max(n, 1), key % max(n, 1)], axis=1)
        self.n = n
        self.edges = edges
        both_src = np.concatenate([edges[:, 0], edges[:, 1]])
        both_dst = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((both_dst, both_src))
        self.indices = both_dst[order]
        counts = np.bincount(both_src, minlength=n)
        self.indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges}


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edges given by the mate array."""

    mate: Sequence[int]
    size: int
    perfect: bool

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for v, u in enumerate(self.mate):
            u = int(u)
            if u > v:
                out.append((v, u))
        return out

    def validate(self, graph: AdjacencyGraph | None = None) -> None:
        mate = [int(u) for u in self.mate]
        n = len(mate)
        count = 0
        for v, u in enumerate(mate):
            if u == -1:
                continue
            if not 0 <= u < n or u == v or mate[u] != v:
                raise AssertionError("mate array is not an involution")
            count += 1
        if count != 2 * self.size:
            raise AssertionError("size disagrees with mate array")
        if self.perfect != (2 * self.size == n):
            raise AssertionError("perfect flag disagrees with size")
        if graph is not None:
            edge_set = graph.edge_set()
            for v, u in enumerate(mate):
                if u > v and (v, u) not in edge_set:
                    raise AssertionError("matched pair is not a graph edge")


def max_matching(g: AdjacencyGraph, init_mate: Sequence[int] | None = None) -> Matching:
    """Maximum-cardinality matching via blossom search.

    ``init_mate`` optionally seeds the search with a valid matching of the
    same graph (used to warm-start consecutive oracle calls); it never
    changes the result's cardinality.
    """
    n = g.n
    match = np.full(n, -1, dtype=np.int64)
    if init_mate is not None:
        seed = np.asarray(init_mate, dtype=np.int64)
        if seed.shape[0] != n:
            raise ValueError("init_mate length must equal the vertex count")
        match[:] = seed
    match = _max_matching_jit(n, g.indptr, g.indices, match)
    size = int((match >= 0).sum()) // 2
    return Matching(mate=match, size=size, perfect=(2 * size == n))


def _all_pairs_edges(points: Sequence[ScaledPoint], r2: SqDist) -> np.ndarray:
    n = len(points)
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    spread_ok = (
        n > 0
        and max(xs) - min(xs) <= 2_100_000_000
        and max(ys) - min(ys) <= 2_100_000_000
        and r2 < _I64_MAX
    )
    if spread_ok:
        ax = np.array(xs, dtype=np.int64)
        ay = np.array(ys, dtype=np.int64)
        ax -= ax.min()
        ay -= ay.min()
        out = []
        chunk = max(1, 4_000_000 // max(n, 1))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            dx = ax[lo:hi, None] - ax[None, :]
            dy = ay[lo:hi, None] - ay[None, :]
            sq = dx * dx + dy * dy
            rows, cols = np.nonzero(sq <= np.int64(r2))
            rows = rows + lo
            keep = rows < cols
            out.append(np.stack([rows[keep], cols[keep]], axis=1))
        if out:
            return np.concatenate(out)
        return np.empty((0, 2), dtype=np.int64)
    pairs = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if sq_dist(points[a], points[b]) <= r2
    ]
    return np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)


def _candidate_edges_within(candidate_edges, r2: SqDist) -> np.ndarray:
    if isinstance(candidate_edges, tuple) and len(candidate_edges) == 2 \
            and isinstance(candidate_edges[0], np.ndarray):
        edges, sqd = candidate_edges
        if isinstance(sqd, np.ndarray):
            if r2 >= _I64_MAX:
                return edges
            return edges[sqd <= np.int64(r2)]
        keep = [j for j, d in enumerate(sqd) if d <= r2]
        return edges[keep] if keep else np.empty((0, 2), dtype=np.int64)
    pairs = [(a, b) for a, b, d in candidate_edges if d <= r2]
    return np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)


def threshold_graph(points: Sequence[ScaledPoint], r2: SqDist,
                    candidate_edges=None) -> AdjacencyGraph:
    """Graph on the points keeping pairs at squared distance <= r2.

    With ``candidate_edges`` (triples (a, b, sqdist), or a pre-built
    (edges, sqdists) array pair) only those candidates are filtered; without
    it an all-pairs scan is used, which is meant for oracles and moderate n.
    """
    if r2 < 0:
        raise ValueError("threshold must be non-negative")
    if candidate_edges is not None:
        edges = _candidate_edges_within(candidate_edges, r2)
    else:
        edges = _all_pairs_edges(points, r2)
    return AdjacencyGraph(len(points), edges)


def has_perfect_matching(points: Sequence[ScaledPoint], r2: SqDist,
                         candidate_edges=None,
                         init_mate: Sequence[int] | None = None
                         ) -> tuple[bool, Matching | None]:
    """Decide whether the threshold graph admits a perfect matching.

    Returns the witness matching when the answer is yes.  Monotone in r2.
    """
    n = len(points)
    if n % 2 != 0:
        raise ValueError("perfect matching requires an even point count")
    g = threshold_graph(points, r2, candidate_edges)
    m = max_matching(g, init_mate=init_mate)
    return (True, m) if m.perfect else (False, None)
