"""Command-line entry point: ``congrucut optimize|sweep|experiment|verify``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from .experiments import InvalidInput, triangle_optimum, trim_experiment
from .geom import TrimTooLarge
from .report import RunManifest, emit_partition_json, emit_sweep_csv, render_svg
from .search import BestPartition, SearchConfig
from .shapes import GridSpec, OutOfRegion, TriangleShape
from .sweep import Mode, best_coverage, region_map, sweep

EXIT_OK, EXIT_ARGS, EXIT_VERIFY, EXIT_RUNTIME = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for verification failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ARGS)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="congrucut", description="Maximum 2-coverage of triangles by congruent convex pieces.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    modes = [m.value for m in Mode]
    o = sub.add_parser("optimize", help="best partition of one triangle")
    o.add_argument("--x3", type=float, required=True)
    o.add_argument("--y3", type=float, required=True)
    o.add_argument("--mode", choices=modes, default="all")
    o.add_argument("--seed", type=int, default=42)
    o.add_argument("--json", metavar="PATH")
    o.add_argument("--svg", metavar="PATH")

    s = sub.add_parser("sweep", help="best coverage over a grid of shapes")
    s.add_argument("--step", type=float, required=True)
    s.add_argument("--ymin", type=float, required=True)
    s.add_argument("--mode", choices=modes, default="all")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--out", metavar="PATH", required=True)
    s.add_argument("--region-svg", metavar="PATH")
    s.add_argument("--refine", action="store_true")

    e = sub.add_parser("experiment", help="numerical experiments")
    esub = e.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    t = esub.add_parser("trim", help="trim corners A and B and re-optimize")
    t.add_argument("--x3", type=float, required=True)
    t.add_argument("--y3", type=float, required=True)
    t.add_argument("--eps", type=float, required=True)
    t.add_argument("--seed", type=int, default=42)

    v = sub.add_parser("verify", help="run the acceptance criteria")
    v.add_argument("--fast", action="store_true")
    return p


def _shape(x3: float, y3: float) -> TriangleShape:
    s = TriangleShape(x3, y3)
    s.check()
    return s


def _optimize(a) -> int:
    s = _shape(a.x3, a.y3)
    cfg = SearchConfig(rng_seed=a.seed)
    mode = Mode(a.mode)
    if mode is Mode.ALL:
        bp = triangle_optimum(s, cfg)
        part, runner_ups = bp.partition, bp.runner_ups
    else:
        bp = None
        part = best_coverage(s, mode, cfg).best
        runner_ups = []
    print(f"coverage {part.coverage:.6f}  family {part.family.value}  piece_class {part.piece_class}  "
          f"runner_ups {len(runner_ups)}")
    if a.json:
        manifest = RunManifest.build("optimize", cfg, mode=mode)
        emit_partition_json(bp or BestPartition(part), a.json, manifest)
    if a.svg:
        render_svg(part, a.svg)
    return EXIT_OK


def _sweep(a) -> int:
    g = GridSpec(a.step, a.ymin)
    cfg = SearchConfig(rng_seed=a.seed)
    mode = Mode(a.mode)
    r = sweep(g, mode, cfg, refine=a.refine, refine_cfg=replace(cfg, random_starts=8))
    emit_sweep_csv(r, a.out, RunManifest.build("sweep", cfg, g, mode))
    s = r.minimax_shape
    print(f"minimax ({s.x3:.4f}, {s.y3:.4f}) value {r.minimax_value:.6f}")
    if r.triple_point is not None:
        print(f"triple point ({r.triple_point.x:.3f}, {r.triple_point.y:.3f})")
    if a.region_svg:
        labels, triple = region_map(r, cfg.tie_tol)
        render_svg(labels, a.region_svg, step=g.step, triple=triple)
    return EXIT_OK


def _trim(a) -> int:
    s = _shape(a.x3, a.y3)
    rep = trim_experiment(s, a.eps, SearchConfig(rng_seed=a.seed))
    print(f"alpha {rep.alpha:.8f}\neps_hat {rep.eps_hat:.8f}\npredicted {rep.predicted:.8f}\n"
          f"observed {rep.observed:.8f}\ndiscrepancy {rep.discrepancy:.3e}")
    return EXIT_OK


def _verify(a) -> int:
    from .acceptance import run_all

    results = run_all(fast=a.fast, emit=lambda line: print(line, flush=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, stream=sys.stderr)
    handler = {"optimize": _optimize, "sweep": _sweep, "experiment": _trim, "verify": _verify}[a.command]
    try:
        return handler(a)
    except OutOfRegion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (InvalidInput, TrimTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
