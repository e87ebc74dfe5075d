"""End-to-end bottleneck matching: candidate lengths plus a monotone search.

The optimum threshold is the smallest pairwise distance at which the
threshold graph admits a perfect matching, and the distinct edge lengths of
the 17-geographic-neighborhood graph are guaranteed to contain it, so the
solver builds that graph, binary-searches its sorted length set with the
perfect-matching oracle, and re-derives the witness at the optimum.

By default the oracle runs on the neighborhood graph's edges filtered to
the probe threshold rather than on the full disk graph; the two decisions
agree because the neighborhood graph contains a bottleneck matching (this
equivalence is asserted in tests, not assumed silently).  A lengths-only
mode and an all-pairs variant trade that edge list for dense per-probe
scans, which keeps them exact but quadratic.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .geometry import ScaledPoint, SqDist, check_points, sq_dist
from .gng import NeighborhoodGraph, build_gng
from .matching import Matching, has_perfect_matching

_DENSE_LIMIT = 4096


@dataclass(frozen=True)
class CandidateDistances:
    """Sorted distinct squared distances guaranteed to contain the optimum."""

    values: object  # int64 array or tuple of Python ints, ascending
    source: str  # "gng_lengths" or "all_pairs"

    def __len__(self) -> int:
        return len(self.values)

    def value(self, idx: int) -> SqDist:
        return int(self.values[idx])


@dataclass(frozen=True)
class BottleneckResult:
    """Optimal squared threshold plus a witness matching that attains it."""

    r_star_sq: SqDist
    matching: Matching
    oracle_calls: int
    candidate_count: int
    candidate_source: str
    gng_edge_count: int | None = None

    def longest_matched_sq(self, points: Sequence[ScaledPoint]) -> SqDist:
        return max(
            sq_dist(points[a], points[b]) for a, b in self.matching.pairs()
        )


class _CountingOracle:
    """Wraps the decision oracle, counting calls and caching true witnesses."""

    def __init__(self, fn: Callable[[SqDist], tuple[bool, Matching | None]]):
        self._fn = fn
        self.calls = 0
        self.last_true: tuple[SqDist, Matching] | None = None

    def __call__(self, r2: SqDist) -> bool:
        self.calls += 1
        ok, witness = self._fn(r2)
        if ok:
            if self.last_true is None or r2 <= self.last_true[0]:
                self.last_true = (r2, witness)
        return ok


def binary_search_min_true(candidates: CandidateDistances,
                           oracle: Callable[[SqDist], bool]) -> SqDist:
    """Least candidate on which the monotone oracle is true.

    Uses at most ceil(log2(m)) + 1 oracle calls.  Raises ValueError when the
    oracle is false on every candidate, which signals a candidate set that
    misses the optimum.
    """
    m = len(candidates)
    if m == 0:
        raise ValueError("empty candidate set")
    lo, hi = 0, m - 1
    verified: int | None = None
    while lo < hi:
        mid = (lo + hi) // 2
        if oracle(candidates.value(mid)):
            hi = mid
            verified = mid
        else:
            lo = mid + 1
    if verified != lo:
        if not oracle(candidates.value(lo)):
            raise ValueError(
                "oracle rejected every candidate; the set misses the optimum"
            )
    return candidates.value(lo)


def _candidate_suffix(values, low: SqDist) -> object:
    """Drop candidates below a sound lower bound for the optimum."""
    if isinstance(values, np.ndarray):
        pos = int(np.searchsorted(values, np.int64(low), side="left"))
        return values[pos:]
    pos = bisect_left(values, low)
    return values[pos:]


def _require_even(points: Sequence[ScaledPoint]) -> None:
    if len(points) < 2:
        raise ValueError("bottleneck matching requires at least two points")
    if len(points) % 2 != 0:
        raise ValueError("bottleneck matching requires an even point count")
    check_points(points)


def _finish(points, oracle: _CountingOracle, r_star_sq: SqDist,
            candidate_count: int, source: str,
            gng_edge_count: int | None) -> BottleneckResult:
    if oracle.last_true is None or oracle.last_true[0] != r_star_sq:
        ok = oracle(r_star_sq)
        if not ok:  # pragma: no cover - guarded by the search invariant
            raise AssertionError("optimum threshold lost its matching")
    witness = oracle.last_true[1]
    longest = max(sq_dist(points[a], points[b]) for a, b in witness.pairs())
    if longest != r_star_sq:
        raise AssertionError(
            "witness bottleneck disagrees with the searched threshold"
        )
    return BottleneckResult(
        r_star_sq=r_star_sq,
        matching=witness,
        oracle_calls=oracle.calls,
        candidate_count=candidate_count,
        candidate_source=source,
        gng_edge_count=gng_edge_count,
    )


def bottleneck_matching(points: Sequence[ScaledPoint], k: int = 17,
                        lengths_only: bool = False,
                        engine: str = "auto") -> BottleneckResult:
    """Minimize the longest matched edge over all perfect matchings.

    Optimality is guaranteed for k = 17 (the default); smaller k values are
    exposed for experiments but the candidate set may then miss the optimum,
    in which case a ValueError is raised or a larger threshold is returned.
    """
    _require_even(points)
    graph = build_gng(points, k=k, lengths_only=lengths_only, engine=engine)
    if lengths_only:
        if len(points) > _DENSE_LIMIT:
            raise ValueError(
                "lengths-only mode runs the oracle on dense threshold "
                f"graphs and is limited to n <= {_DENSE_LIMIT}"
            )
        candidates = CandidateDistances(graph.lengths, "gng_lengths")
        oracle = _CountingOracle(lambda r2: has_perfect_matching(points, r2))
    else:
        values = _candidate_suffix(graph.lengths,
                                   graph.max_min_incident_sqdist())
        candidates = CandidateDistances(values, "gng_lengths")
        cand_pairs = (graph.edges, graph.edge_sqdists)
        oracle = _CountingOracle(
            lambda r2: has_perfect_matching(points, r2,
                                            candidate_edges=cand_pairs)
        )
    r_star_sq = binary_search_min_true(candidates, oracle)
    return _finish(points, oracle, r_star_sq, graph.length_count,
                   "gng_lengths", graph.edge_count)


def bottleneck_via_all_pairs(points: Sequence[ScaledPoint]) -> BottleneckResult:
    """Same optimum via the explicit set of all pairwise distances.

    Quadratic in both memory and per-probe work; intended for inputs up to
    a few thousand points and as a cross-check of the main pipeline.
    """
    _require_even(points)
    n = len(points)
    if n > _DENSE_LIMIT:
        raise ValueError(f"all-pairs variant is limited to n <= {_DENSE_LIMIT}")
    dists: set[SqDist] = set()
    for a in range(n):
        pa = points[a]
        for b in range(a + 1, n):
            dists.add(sq_dist(pa, points[b]))
    from .gng import _pack_values

    candidates = CandidateDistances(_pack_values(sorted(dists)), "all_pairs")
    oracle = _CountingOracle(lambda r2: has_perfect_matching(points, r2))
    r_star_sq = binary_search_min_true(candidates, oracle)
    return _finish(points, oracle, r_star_sq, len(candidates),
                   "all_pairs", None)
