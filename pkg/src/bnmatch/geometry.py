"""Exact planar primitives: squared distances and closed 60-degree wedge tests.

Coordinates are integers (decimal inputs are scaled by 10**6 at ingestion,
see :mod:`bnmatch.instances`).  Every predicate reduces to integer sign
tests, so results are exact and reproducible for |x|, |y| <= 2**40; at that
bound a squared distance still fits comfortably in a 128-bit signed integer,
and Python integers never overflow anyway.

The plane around a point is partitioned into six closed wedges of opening
angle 60 degrees, bounded by the three lines through the origin with slopes
0, +sqrt(3) and -sqrt(3).  Wedge i covers the closed angular sector
[(i-1)*60, i*60] degrees.  A direction lying on a bounding line belongs to
both adjacent wedges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

SCALE = 10**6
COORD_BOUND = 1 << 40

WEDGE_IDS = (1, 2, 3, 4, 5, 6)

# Exact squared Euclidean distance, always a non-negative int.
SqDist = int

# Wedge index in 1..6.
WedgeId = int


@dataclass(frozen=True, slots=True)
class ScaledPoint:
    """Planar point with integer (pre-scaled) coordinates."""

    x: int
    y: int


def sq_dist(p: ScaledPoint, q: ScaledPoint) -> SqDist:
    """Exact squared Euclidean distance between two points."""
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def cmp_dist(p: ScaledPoint, a: ScaledPoint, b: ScaledPoint) -> int:
    """Compare dist(p,a) against dist(p,b) exactly: -1, 0 or +1."""
    da = sq_dist(p, a)
    db = sq_dist(p, b)
    return (da > db) - (da < db)


def sqrt3_sign(a: int, b: int) -> int:
    """Sign of sqrt(3)*a + b for integers a, b, by integer arithmetic only.

    For a != 0 the value can be zero only when a = b = 0 (sqrt(3) is
    irrational), but the zero branch is kept so the test is total.
    """
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0:
        if b >= 0:
            return 1
        t = 3 * a * a - b * b
    else:
        if b <= 0:
            return -1
        t = b * b - 3 * a * a
    return (t > 0) - (t < 0)


def wedge_membership(p: ScaledPoint, q: ScaledPoint) -> set[WedgeId]:
    """All wedge indices i with q in p + W_i.

    Returns one index for interior directions and two when q - p lies on a
    bounding line (slope 0, +sqrt(3) or -sqrt(3)).  Raises ValueError for
    coincident points, where no direction exists.
    """
    dx = q.x - p.x
    dy = q.y - p.y
    if dx == 0 and dy == 0:
        raise ValueError("wedge membership is undefined for coincident points")
    s0 = (dy > 0) - (dy < 0)  # side of the slope-0 line
    sp = sqrt3_sign(dx, -dy)  # side of the slope +sqrt(3) line
    sm = sqrt3_sign(dx, dy)  # side of the slope -sqrt(3) line
    out: set[WedgeId] = set()
    if s0 >= 0 and sp >= 0:
        out.add(1)
    if sp <= 0 and sm >= 0:
        out.add(2)
    if s0 >= 0 and sm <= 0:
        out.add(3)
    if s0 <= 0 and sp <= 0:
        out.add(4)
    if sp >= 0 and sm <= 0:
        out.add(5)
    if s0 <= 0 and sm >= 0:
        out.add(6)
    return out


@total_ordering
@dataclass(frozen=True, slots=True, eq=False)
class WedgeKey:
    """Exact value of sqrt(3)*a + b, comparable by integer sign tests.

    Keys of two points are equal iff both components agree (sqrt(3) is
    irrational), which makes the order total and reproducible.
    """

    a: int
    b: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WedgeKey):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __lt__(self, other: "WedgeKey") -> bool:
        return sqrt3_sign(self.a - other.a, self.b - other.b) < 0

    def __hash__(self) -> int:
        return hash((self.a, self.b))


# Linear functionals (c, e) meaning sqrt(3)*c*x + e*y; membership in wedge i
# is exactly u(q) >= u(p) and v(q) >= v(p).
_WEDGE_KEY_COEFFS: dict[WedgeId, tuple[tuple[int, int], tuple[int, int]]] = {
    1: ((0, 1), (1, -1)),
    2: ((-1, 1), (1, 1)),
    3: ((0, 1), (-1, -1)),
    4: ((0, -1), (-1, 1)),
    5: ((1, -1), (-1, -1)),
    6: ((0, -1), (1, 1)),
}


def wedge_keys(i: WedgeId, p: ScaledPoint) -> tuple[WedgeKey, WedgeKey]:
    """Ordered key pair (u, v) of p for wedge i.

    q lies in p + W_i iff wedge_keys(i, q) dominates wedge_keys(i, p)
    componentwise (>= on both keys).  The comparator is a total preorder
    consistent with :func:`wedge_membership`.
    """
    (cu, eu), (cv, ev) = _WEDGE_KEY_COEFFS[i]
    return WedgeKey(cu * p.x, eu * p.y), WedgeKey(cv * p.x, ev * p.y)


def check_points(points: Sequence[ScaledPoint]) -> None:
    """Validate coordinate bounds and reject duplicate points."""
    seen: dict[tuple[int, int], int] = {}
    for idx, p in enumerate(points):
        if abs(p.x) > COORD_BOUND or abs(p.y) > COORD_BOUND:
            raise ValueError(
                f"point {idx} has a coordinate beyond the supported bound 2**40"
            )
        key = (p.x, p.y)
        if key in seen:
            raise ValueError(
                f"duplicate point {key} at indices {seen[key]} and {idx}"
            )
        seen[key] = idx


def as_points(pairs: Iterable[tuple[int, int]]) -> list[ScaledPoint]:
    """Convenience constructor from (x, y) integer pairs."""
    return [ScaledPoint(int(x), int(y)) for x, y in pairs]
