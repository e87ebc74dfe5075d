"""Deliberately naive reference implementations used as ground truth in tests.

Each function restates a definition as directly as possible and shares no
machinery with the optimized pipeline beyond the exact predicates in
:mod:`bnmatch.geometry`.  They are the semantic anchors for property tests
and are only meant for small inputs.
"""

from __future__ import annotations

from typing import Sequence

from .geometry import ScaledPoint, WEDGE_IDS, sq_dist, wedge_membership
from .neighbors import NeighborAnswer


def brute_gng(points: Sequence[ScaledPoint], k: int):
    """Definitional geographic neighborhood graph.

    (p, q) is an edge iff for some wedge i containing q relative to p, at
    most k-1 points of that wedge (excluding p) are strictly closer to p,
    or symmetrically with the roles of p and q swapped.
    """
    from .gng import NeighborhoodGraph  # local import to keep layering flat

    n = len(points)
    edges: set[tuple[int, int]] = set()
    for a in range(n):
        p = points[a]
        for i in WEDGE_IDS:
            members = [
                b for b in range(n)
                if b != a and i in wedge_membership(p, points[b])
            ]
            dists = {b: sq_dist(p, points[b]) for b in members}
            for b in members:
                closer = sum(1 for c in members if dists[c] < dists[b])
                if closer <= k - 1:
                    edges.add((a, b) if a < b else (b, a))
    return NeighborhoodGraph.from_edges(n, k, sorted(edges), points)


def brute_bottleneck(points: Sequence[ScaledPoint]):
    """Exact bottleneck value and witness by enumerating perfect matchings."""
    from .matching import Matching
    from .search import BottleneckResult

    n = len(points)
    if n % 2 != 0 or n == 0:
        raise ValueError("brute bottleneck requires a positive even point count")
    if n > 12:
        raise ValueError("brute bottleneck is limited to n <= 12")
    d = [[sq_dist(points[a], points[b]) for b in range(n)] for a in range(n)]
    best_val: int | None = None
    best_pairs: list[tuple[int, int]] | None = None
    pairs: list[tuple[int, int]] = []
    used = [False] * n

    def rec(cur_max: int) -> None:
        nonlocal best_val, best_pairs
        if best_val is not None and cur_max >= best_val and pairs:
            # cannot improve: the longest edge so far already loses
            if cur_max > best_val:
                return
        a = next((i for i in range(n) if not used[i]), None)
        if a is None:
            if best_val is None or cur_max < best_val:
                best_val = cur_max
                best_pairs = list(pairs)
            return
        used[a] = True
        for b in range(a + 1, n):
            if used[b]:
                continue
            m = d[a][b] if d[a][b] > cur_max else cur_max
            if best_val is not None and m > best_val:
                continue
            used[b] = True
            pairs.append((a, b))
            rec(m)
            pairs.pop()
            used[b] = False
        used[a] = False

    rec(0)
    assert best_val is not None and best_pairs is not None
    mate = [-1] * n
    for a, b in best_pairs:
        mate[a] = b
        mate[b] = a
    matching = Matching(mate=mate, size=n // 2, perfect=True)
    return BottleneckResult(
        r_star_sq=best_val,
        matching=matching,
        oracle_calls=0,
        candidate_count=0,
        candidate_source="brute",
    )


def brute_knn(points: Sequence[ScaledPoint], ids: Sequence[int],
              p: ScaledPoint, k: int) -> NeighborAnswer:
    """Sort the subset by (squared distance, id) and truncate to k."""
    ranked = sorted(ids, key=lambda i: (sq_dist(p, points[i]), i))
    take = ranked[:k]
    d_max = sq_dist(p, points[take[-1]])
    ties = len(ranked) > len(take) and sq_dist(p, points[ranked[len(take)]]) == d_max
    return NeighborAnswer(tuple(take), d_max, ties)


def brute_max_matching(n: int, edges: Sequence[tuple[int, int]]) -> int:
    """Exact maximum matching size by recursion over the vertex set."""
    if n > 16:
        raise ValueError("brute matching is limited to small graphs")
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    memo: dict[int, int] = {}

    def rec(avail: int) -> int:
        if avail == 0:
            return 0
        got = memo.get(avail)
        if got is not None:
            return got
        v = (avail & -avail).bit_length() - 1
        best = rec(avail & ~(1 << v))  # leave v unmatched
        nbrs = adj[v] & avail & ~(1 << v)
        while nbrs:
            u = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            cand = 1 + rec(avail & ~(1 << v) & ~(1 << u))
            if cand > best:
                best = cand
        memo[avail] = best
        return best

    return rec((1 << n) - 1)
