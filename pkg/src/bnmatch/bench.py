"""Benchmark runner contrasting the sparse candidate pipeline with dense scans.

Rows report, per (size, kind, repetition): neighborhood-graph build time,
search time, oracle calls, sparse edge count, and optionally the dense disk
graph's edge count at the optimum plus one dense decision's wall time.
The first call warms up the jitted matcher and the vectorized engine on a
tiny instance so compilation cost never lands inside a timed section.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

from .geometry import ScaledPoint, sq_dist
from .gng import build_gng
from .instances import GENERATOR_KINDS, generated_points
from .matching import has_perfect_matching
from .search import bottleneck_matching

CSV_COLUMNS = (
    "n", "kind", "rep", "seed", "gng_build_ms", "search_ms",
    "oracle_calls", "edges_sparse", "edges_dense", "dense_decision_ms",
)

_warmed_up = False


def warmup() -> None:
    """Compile the jitted matcher and touch the vectorized engine once."""
    global _warmed_up
    if _warmed_up:
        return
    pts = generated_points("uniform", 300, 987654)
    bottleneck_matching(pts, engine="accelerated")
    bottleneck_matching(pts[:8], engine="reference")
    _warmed_up = True


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    kinds: tuple[str, ...] = ("uniform",)
    reps: int = 1
    seed: int = 1
    dense: bool = False
    k: int = 17


def _dense_edge_count(points: list[ScaledPoint], r2: int) -> int:
    import numpy as np
    from scipy.spatial import cKDTree

    coords = np.array([(p.x, p.y) for p in points], dtype=np.float64)
    radius = float(r2) ** 0.5 * (1.0 + 1e-9)
    pairs = cKDTree(coords).query_pairs(radius, output_type="ndarray")
    count = 0
    for a, b in pairs:
        if sq_dist(points[int(a)], points[int(b)]) <= r2:
            count += 1
    return count


def run_bench(cfg: BenchConfig) -> list[dict]:
    for kind in cfg.kinds:
        if kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown instance kind {kind!r}")
    warmup()
    rows: list[dict] = []
    for kind in cfg.kinds:
        for n in cfg.sizes:
            if n < 2 or n % 2 != 0:
                raise ValueError("benchmark sizes must be even and >= 2")
            for rep in range(cfg.reps):
                seed = cfg.seed + 7919 * rep
                points = generated_points(kind, n, seed)
                t0 = time.perf_counter()
                graph = build_gng(points, k=cfg.k)
                t1 = time.perf_counter()
                result = bottleneck_matching(points, k=cfg.k)
                t2 = time.perf_counter()
                row = {
                    "n": n,
                    "kind": kind,
                    "rep": rep,
                    "seed": seed,
                    "gng_build_ms": round((t1 - t0) * 1000.0, 3),
                    "search_ms": round((t2 - t1) * 1000.0, 3),
                    "oracle_calls": result.oracle_calls,
                    "edges_sparse": graph.edge_count,
                    "edges_dense": "",
                    "dense_decision_ms": "",
                }
                if cfg.dense:
                    row["edges_dense"] = _dense_edge_count(
                        points, result.r_star_sq)
                    t3 = time.perf_counter()
                    ok, _ = has_perfect_matching(points, result.r_star_sq)
                    t4 = time.perf_counter()
                    if not ok:
                        raise AssertionError(
                            "dense decision disagreed at the optimum")
                    row["dense_decision_ms"] = round((t4 - t3) * 1000.0, 3)
                rows.append(row)
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
