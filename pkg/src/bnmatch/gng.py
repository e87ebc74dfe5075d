"""Geographic neighborhood graph construction with full tie handling.

The k-geographic-neighborhood graph over a planar point set P connects p to
q whenever, in one of the six closed 60-degree wedges anchored at p that
contain q, at most k-1 points of the wedge are strictly closer to p (or the
symmetric condition holds at q).  For tie-free inputs every (point, wedge)
pair contributes at most k edges; with ties the per-pair neighbor set can be
much larger, so construction runs in two rounds per (point, wedge):

* round 1 walks the canonical decomposition of the wedge and merges each
  canonical subset's k closest members into a running list of at most k,
  keeping the distinct distance values of the result (this equals the
  distance set of the k closest points in the whole wedge);
* round 2 revisits the decomposition and collects, by exact distance-set
  enumeration, every member whose distance appears in that set, which
  includes all threshold ties.

A lengths-only mode skips round 2: the union of the round-1 distance sets
equals the distinct edge lengths of the full graph exactly.

Two interchangeable engines produce the graph: the reference engine above
(exact Python integers throughout) and a vectorized engine in
:mod:`bnmatch.gng_accel` for large inputs, selected automatically.  Both
return identical edge sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import (
    ScaledPoint,
    SqDist,
    WEDGE_IDS,
    WedgeId,
    check_points,
    sq_dist,
)
from .wedge_index import WedgeRangeIndex, build_wedge_index

_I64_MAX = np.iinfo(np.int64).max
_ACCEL_MIN_POINTS = 256


@dataclass(frozen=True, slots=True)
class DeltaSet:
    """Sorted distinct squared distances of the k closest wedge members."""

    distances: tuple[SqDist, ...]

    def __post_init__(self):
        if list(self.distances) != sorted(set(self.distances)):
            raise ValueError("distance set must be sorted and distinct")


def _pack_values(values: Sequence[SqDist]):
    """Store squared distances as int64 when they fit, else Python ints."""
    if not len(values):
        return np.empty(0, dtype=np.int64)
    if isinstance(values, np.ndarray):
        return values
    if max(values) < _I64_MAX:
        return np.array([int(v) for v in values], dtype=np.int64)
    return tuple(int(v) for v in values)


@dataclass(frozen=True)
class NeighborhoodGraph:
    """Undirected neighborhood graph plus its distinct edge lengths.

    ``edges`` is an (E, 2) int64 array of index pairs a < b in lexicographic
    order, or None in lengths-only mode.  ``edge_sqdists`` aligns with
    ``edges``; ``lengths`` holds the sorted distinct squared lengths.  Both
    are int64 arrays when the values fit and tuples of Python ints
    otherwise (coordinates near the 2**40 bound).
    """

    n: int
    k: int
    edges: np.ndarray | None
    edge_sqdists: object
    lengths: object
    lengths_only: bool = False

    @property
    def edge_count(self) -> int | None:
        return None if self.edges is None else int(self.edges.shape[0])

    @property
    def length_count(self) -> int:
        return len(self.lengths)

    def edge_list(self) -> list[tuple[int, int]]:
        if self.edges is None:
            raise ValueError("graph was built in lengths-only mode")
        return [(int(a), int(b)) for a, b in self.edges]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edge_list())

    def lengths_list(self) -> list[SqDist]:
        return [int(v) for v in self.lengths]

    def sqdist_list(self) -> list[SqDist]:
        if self.edge_sqdists is None:
            raise ValueError("graph was built in lengths-only mode")
        return [int(v) for v in self.edge_sqdists]

    def edges_within(self, r2: SqDist) -> np.ndarray:
        """Index pairs of edges with squared length <= r2."""
        if self.edges is None:
            raise ValueError("graph was built in lengths-only mode")
        sqd = self.edge_sqdists
        if isinstance(sqd, np.ndarray):
            if r2 >= _I64_MAX:
                return self.edges
            return self.edges[sqd <= np.int64(r2)]
        keep = [j for j, d in enumerate(sqd) if d <= r2]
        if not keep:
            return np.empty((0, 2), dtype=np.int64)
        return self.edges[keep]

    def max_min_incident_sqdist(self) -> SqDist:
        """Largest, over vertices, of the shortest incident edge length.

        Every vertex has an incident edge (its nearest neighbor qualifies in
        whichever wedge contains it), so this is well defined, and it lower
        bounds any threshold at which a perfect matching can exist.
        """
        if self.edges is None:
            raise ValueError("graph was built in lengths-only mode")
        sqd = self.edge_sqdists
        if isinstance(sqd, np.ndarray):
            best = np.full(self.n, _I64_MAX, dtype=np.int64)
            np.minimum.at(best, self.edges[:, 0], sqd)
            np.minimum.at(best, self.edges[:, 1], sqd)
            if bool((best == _I64_MAX).any()):
                raise AssertionError("isolated vertex in neighborhood graph")
            return int(best.max())
        best: list[SqDist | None] = [None] * self.n
        for (a, b), d in zip(self.edges, sqd):
            a = int(a)
            b = int(b)
            if best[a] is None or d < best[a]:
                best[a] = d
            if best[b] is None or d < best[b]:
                best[b] = d
        if any(v is None for v in best):
            raise AssertionError("isolated vertex in neighborhood graph")
        return max(best)

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Sequence[tuple[int, int]],
                   points: Sequence[ScaledPoint]) -> "NeighborhoodGraph":
        pairs = sorted({(a, b) if a < b else (b, a) for a, b in edges})
        sqd = [sq_dist(points[a], points[b]) for a, b in pairs]
        arr = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
        return cls(n=n, k=k, edges=arr, edge_sqdists=_pack_values(sqd),
                   lengths=_pack_values(sorted(set(sqd))))

    @classmethod
    def from_arrays(cls, n: int, k: int, edges: np.ndarray, sqd: np.ndarray,
                    lengths: np.ndarray,
                    lengths_only: bool = False) -> "NeighborhoodGraph":
        if lengths_only:
            return cls(n=n, k=k, edges=None, edge_sqdists=None,
                       lengths=lengths, lengths_only=True)
        return cls(n=n, k=k, edges=edges, edge_sqdists=sqd, lengths=lengths)

    @classmethod
    def from_lengths(cls, n: int, k: int,
                     lengths: Sequence[SqDist]) -> "NeighborhoodGraph":
        return cls(n=n, k=k, edges=None, edge_sqdists=None,
                   lengths=_pack_values(sorted(set(lengths))),
                   lengths_only=True)


def _merged_witnesses(point: ScaledPoint, pieces: Sequence[int],
                      idx: WedgeRangeIndex, k: int) -> list[tuple[SqDist, int]]:
    """Running list of the k closest (distance, id) pairs across pieces."""
    running: list[tuple[SqDist, int]] = []
    pts = idx.points
    for piece in pieces:
        ans = idx.neighbor_index(piece).top_k(point, k)
        incoming = [(sq_dist(point, pts[i]), i) for i in ans.witnesses]
        running = sorted(running + incoming)[:k]
    return running


def round1_distances(p: int, i: WedgeId, idx: WedgeRangeIndex,
                     k: int = 17) -> DeltaSet:
    """Distinct distances of the k closest points in wedge i around point p."""
    if idx.wedge != i:
        raise ValueError("index was built for a different wedge")
    point = idx.points[p]
    pieces = idx.canonical_decomposition(point)
    running = _merged_witnesses(point, pieces, idx, k)
    return DeltaSet(tuple(sorted({d for d, _ in running})))


def round2_edges(p: int, i: WedgeId, delta: DeltaSet,
                 idx: WedgeRangeIndex) -> list[tuple[int, int]]:
    """All edges (p, q) with q in wedge i at a distance listed in ``delta``.

    Enumerating by exact distance membership subsumes both the tie-free case
    (at most k-1 closer witnesses) and the tied case (every point at the
    threshold distance is included).
    """
    if idx.wedge != i:
        raise ValueError("index was built for a different wedge")
    if not delta.distances:
        return []
    point = idx.points[p]
    out: list[tuple[int, int]] = []
    for piece in idx.canonical_decomposition(point):
        nbr = idx.neighbor_index(piece)
        out.extend((p, q) for q in nbr.enumerate_at_distances(point, delta.distances))
    return out


def build_wedge_indexes(points: Sequence[ScaledPoint]) -> dict[WedgeId, WedgeRangeIndex]:
    """The six per-direction structures over a common point list."""
    return {i: build_wedge_index(points, i) for i in WEDGE_IDS}


def _build_reference(points: Sequence[ScaledPoint], k: int,
                     lengths_only: bool,
                     general_position_fast_path: bool) -> NeighborhoodGraph:
    n = len(points)
    indexes = build_wedge_indexes(points)
    if lengths_only:
        lengths: set[SqDist] = set()
        for i, idx in indexes.items():
            for p in range(n):
                lengths.update(round1_distances(p, i, idx, k).distances)
        return NeighborhoodGraph.from_lengths(n, k, sorted(lengths))
    edges: set[tuple[int, int]] = set()
    for i, idx in indexes.items():
        for p in range(n):
            point = idx.points[p]
            if general_position_fast_path:
                # Trusts tie-free inputs: the merged witnesses are the
                # neighbor set, no second round.
                pieces = idx.canonical_decomposition(point)
                for _, q in _merged_witnesses(point, pieces, idx, k):
                    edges.add((p, q) if p < q else (q, p))
            else:
                delta = round1_distances(p, i, idx, k)
                for a, b in round2_edges(p, i, delta, idx):
                    edges.add((a, b) if a < b else (b, a))
    return NeighborhoodGraph.from_edges(n, k, sorted(edges), points)


def build_gng(points: Sequence[ScaledPoint], k: int = 17,
              lengths_only: bool = False, engine: str = "auto",
              general_position_fast_path: bool = False) -> NeighborhoodGraph:
    """Build the k-geographic-neighborhood graph of a duplicate-free set.

    ``engine`` is one of "auto", "reference" or "accelerated".  The
    reference engine is the audited tie-aware path; the accelerated engine
    produces the same exact graph through vectorized candidate generation
    and is chosen automatically for large inputs whose coordinate spread
    allows exact 64-bit arithmetic.  ``general_position_fast_path`` skips
    tie handling inside the reference engine and is only correct when no two
    members of a wedge are equidistant from its apex.
    """
    if len(points) < 2:
        raise ValueError("neighborhood graph requires at least two points")
    if k < 1:
        raise ValueError("k must be at least 1")
    check_points(points)
    if engine not in ("auto", "reference", "accelerated"):
        raise ValueError(f"unknown engine {engine!r}")
    use_accel = False
    if engine == "accelerated" or (
        engine == "auto"
        and len(points) >= _ACCEL_MIN_POINTS
        and not general_position_fast_path
    ):
        from . import gng_accel

        if gng_accel.spread_safe(points):
            use_accel = True
        elif engine == "accelerated":
            raise ValueError(
                "accelerated engine needs coordinate spread at most "
                f"{gng_accel.SAFE_SPREAD}; use the reference engine"
            )
    if use_accel:
        from . import gng_accel

        return gng_accel.build_gng_accelerated(points, k, lengths_only)
    return _build_reference(points, k, lengths_only, general_position_fast_path)
