"""Command line interface: match, gng, gen and bench subcommands.

Exit codes: 0 on success, 2 for input errors (bad files, bad parameters),
3 for internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .bench import BenchConfig, CSV_COLUMNS, rows_to_csv, run_bench
from .gng import build_gng
from .instances import (
    GENERATOR_KINDS,
    generate_instance,
    instance_text,
    load_instance,
)
from .render_svg import matching_svg
from .search import bottleneck_matching, bottleneck_via_all_pairs


def cmd_match(args: argparse.Namespace) -> int:
    points = load_instance(args.input)
    t0 = time.perf_counter()
    if args.all_pairs:
        result = bottleneck_via_all_pairs(points)
    else:
        result = bottleneck_matching(points, k=args.k,
                                     lengths_only=args.lengths_only)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    pairs = result.matching.pairs()
    doc = {
        "n": len(points),
        "k": args.k,
        "r_star_sq": str(result.r_star_sq),
        "r_star": math.sqrt(result.r_star_sq) / 1e6,
        "matching": [[a, b] for a, b in pairs],
        "gng_edge_count": result.gng_edge_count,
        "oracle_calls": result.oracle_calls,
        "candidate_count": result.candidate_count,
        "candidate_source": result.candidate_source,
        # Null by default so solver output is byte-identical across runs.
        "timings": {"total_ms": round(elapsed_ms, 3)} if args.timings else None,
    }
    print(json.dumps(doc, indent=2))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(matching_svg(points, pairs))
    return 0


def cmd_gng(args: argparse.Namespace) -> int:
    points = load_instance(args.input)
    graph = build_gng(points, k=args.k, lengths_only=args.lengths_only)
    if args.lengths_only:
        for value in graph.lengths_list():
            print(value)
    else:
        sqd = graph.sqdist_list()
        for (a, b), d in zip(graph.edge_list(), sqd):
            print(f"{a} {b} {d}")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    pts = generate_instance(args.kind, args.n, args.seed)
    sys.stdout.write(instance_text(pts))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(","))
    kinds = tuple(args.kinds.split(","))
    cfg = BenchConfig(sizes=sizes, kinds=kinds, reps=args.reps,
                      seed=args.seed, dense=args.dense, k=args.k)
    rows = run_bench(cfg)
    sys.stdout.write(rows_to_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnmatch",
        description=(
            "Exact Euclidean bottleneck matching of planar point sets via "
            "geographic neighborhood graphs and a perfect-matching oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="solve one instance file")
    p_match.add_argument("input", help="instance file path")
    p_match.add_argument("--k", type=int, default=17,
                         help="neighborhood parameter (optimality needs 17)")
    p_match.add_argument("--all-pairs", action="store_true",
                         help="search all pairwise distances (cross-check)")
    p_match.add_argument("--lengths-only", action="store_true",
                         help="skip edge materialization; dense oracle probes")
    p_match.add_argument("--svg", metavar="PATH",
                         help="also write an SVG rendering of the matching")
    p_match.add_argument("--timings", action="store_true",
                         help="include wall-clock timings (non-reproducible bytes)")
    p_match.set_defaults(fn=cmd_match)

    p_gng = sub.add_parser("gng", help="emit the neighborhood graph")
    p_gng.add_argument("input", help="instance file path")
    p_gng.add_argument("--k", type=int, default=17)
    p_gng.add_argument("--lengths-only", action="store_true",
                       help="emit distinct squared lengths instead of edges")
    p_gng.set_defaults(fn=cmd_gng)

    p_gen = sub.add_parser("gen", help="generate an instance on stdout")
    p_gen.add_argument("kind", choices=GENERATOR_KINDS)
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("seed", type=int)
    p_gen.set_defaults(fn=cmd_gen)

    p_bench = sub.add_parser("bench", help="CSV timing report")
    p_bench.add_argument("--sizes", default="1000",
                         help="comma-separated even instance sizes")
    p_bench.add_argument("--kinds", default="uniform",
                         help=f"comma-separated kinds from {GENERATOR_KINDS}")
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.add_argument("--k", type=int, default=17)
    p_bench.add_argument("--dense", action="store_true",
                         help=f"also measure dense counts ({','.join(CSV_COLUMNS[-2:])})")
    p_bench.set_defaults(fn=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violations
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
