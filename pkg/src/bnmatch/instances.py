"""Instance file handling and deterministic instance generators.

Instance files are plain text with one point per line: two decimal numbers
separated by whitespace, at most six fractional digits, '#' starting a
comment line.  Values are scaled exactly by 10**6 into integers, so parsing
never touches floating point and round-trips are lossless.  Duplicate
points are rejected with their line numbers.

Generators emit instance text deterministically for a fixed seed:

* ``uniform``: integer micro-coordinates uniform in [0, 10**9).
* ``grid``: a unit-spaced square lattice (massively tied distances); the
  seed only shuffles the point order.
* ``cocircular``: lattice points on a common circle about the origin with
  exactly equal squared distances to the center, built from products of
  primes congruent 1 mod 4 via Gaussian-integer composition.
* ``clustered``: a few tight blobs around uniform centers.
"""

from __future__ import annotations

import re
from random import Random
from typing import Iterable, Sequence

from .geometry import COORD_BOUND, SCALE, ScaledPoint

GENERATOR_KINDS = ("uniform", "grid", "cocircular", "clustered")

_NUM_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)$")


def _parse_decimal_micro(token: str, line_no: int) -> int:
    """Exact decimal-to-integer scaling by 10**6."""
    if not _NUM_RE.match(token):
        raise ValueError(f"line {line_no}: not a plain decimal number: {token!r}")
    sign = -1 if token.startswith("-") else 1
    token = token.lstrip("+-")
    if "." in token:
        whole, frac = token.split(".")
    else:
        whole, frac = token, ""
    if len(frac) > 6:
        raise ValueError(
            f"line {line_no}: more than 6 fractional digits: {token!r}"
        )
    whole_val = int(whole) if whole else 0
    frac_val = int(frac.ljust(6, "0")) if frac else 0
    value = sign * (whole_val * SCALE + frac_val)
    if abs(value) > COORD_BOUND:
        raise ValueError(
            f"line {line_no}: coordinate exceeds the supported bound "
            f"(|value| <= {COORD_BOUND / SCALE:.0f})"
        )
    return value


def parse_instance_text(text: str) -> list[ScaledPoint]:
    """Parse instance text into scaled points, rejecting duplicates."""
    points: list[ScaledPoint] = []
    seen: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ValueError(
                f"line {line_no}: expected two decimal numbers, got {len(tokens)} tokens"
            )
        x = _parse_decimal_micro(tokens[0], line_no)
        y = _parse_decimal_micro(tokens[1], line_no)
        key = (x, y)
        if key in seen:
            raise ValueError(
                f"line {line_no}: duplicate of point on line {seen[key]}"
            )
        seen[key] = line_no
        points.append(ScaledPoint(x, y))
    return points


def load_instance(path: str) -> list[ScaledPoint]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def format_micro(value: int) -> str:
    """Render a micro-unit integer as a decimal with six fractional digits."""
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), SCALE)
    return f"{sign}{whole}.{frac:06d}"


def instance_text(points_micro: Iterable[tuple[int, int]]) -> str:
    lines = [f"{format_micro(x)} {format_micro(y)}" for x, y in points_micro]
    return "\n".join(lines) + "\n"


_CIRCLE_PRIMES = (
    (5, (2, 1)), (13, (3, 2)), (17, (4, 1)), (29, (5, 2)), (37, (6, 1)),
    (41, (5, 4)), (53, (7, 2)), (61, (6, 5)), (73, (8, 3)), (89, (8, 5)),
)


def circle_lattice_points(min_count: int) -> tuple[int, list[tuple[int, int]]]:
    """A radius R and >= min_count integer points with x*x + y*y == R*R.

    R is a product of the first few primes congruent 1 mod 4; the points are
    all Gaussian-integer products z = prod(f_j or conj(f_j), twice per
    prime) times the four units, which enumerates every representation.
    """
    if min_count < 1:
        raise ValueError("min_count must be positive")
    use = 0
    while use <= len(_CIRCLE_PRIMES):
        if 4 * 3**use >= min_count:
            break
        use += 1
    if use > len(_CIRCLE_PRIMES):
        raise ValueError("requested more cocircular points than supported")
    radius = 1
    for p, _ in _CIRCLE_PRIMES[:use]:
        radius *= p
    values = {(radius, 0)}
    for choice in range(3**use):
        re_, im = 1, 0
        c = choice
        for j in range(use):
            e = c % 3
            c //= 3
            a, b = _CIRCLE_PRIMES[j][1]
            for _ in range(e):
                re_, im = re_ * a - im * b, re_ * b + im * a
            for _ in range(2 - e):
                re_, im = re_ * a + im * b, -re_ * b + im * a
        assert re_ * re_ + im * im == radius * radius
        for x, y in ((re_, im), (-im, re_), (-re_, -im), (im, -re_)):
            values.add((x, y))
    points = sorted(values)
    if len(points) < min_count:  # pragma: no cover - count formula guarantees
        raise AssertionError("circle enumeration produced too few points")
    return radius, points


def generate_instance(kind: str, n: int, seed: int) -> list[tuple[int, int]]:
    """Deterministic micro-coordinate point list for the given kind."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = Random(seed)
    if kind == "uniform":
        pts: set[tuple[int, int]] = set()
        while len(pts) < n:
            pts.add((rng.randrange(10**9), rng.randrange(10**9)))
        out = sorted(pts)
        rng.shuffle(out)
        return out
    if kind == "grid":
        side = 1
        while side * side < n:
            side += 1
        out = [(i * SCALE, j * SCALE) for j in range(side) for i in range(side)]
        out = out[:n]
        rng.shuffle(out)
        return out
    if kind == "cocircular":
        _, pts = circle_lattice_points(n)
        rng.shuffle(pts)
        return pts[:n]
    if kind == "clustered":
        centers = max(1, round(n**0.5 / 2))
        spread = max(1000, 10**9 // (centers * 16))
        ctrs = [
            (rng.randrange(10**9), rng.randrange(10**9))
            for _ in range(centers)
        ]
        pts = set()
        while len(pts) < n:
            cx, cy = ctrs[rng.randrange(centers)]
            x = cx + round(rng.gauss(0.0, spread))
            y = cy + round(rng.gauss(0.0, spread))
            if 0 <= x < 15 * 10**8 and 0 <= y < 15 * 10**8:
                pts.add((x, y))
        out = sorted(pts)
        rng.shuffle(out)
        return out
    raise ValueError(f"unknown instance kind {kind!r}")


def generated_points(kind: str, n: int, seed: int) -> list[ScaledPoint]:
    return [ScaledPoint(x, y) for x, y in generate_instance(kind, n, seed)]
