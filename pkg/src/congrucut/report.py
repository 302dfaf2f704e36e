"""JSON, CSV and SVG writers."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

from . import __version__
from .geom import ConvexPolygon, Isometry, Point, SeparatingLine
from .partition import Family, Partition
from .search import BestPartition, SearchConfig
from .shapes import GridSpec
from .sweep import SweepResult

GREEN = "#2ca02c"
ORANGE = "#ff7f0e"
RED = "#d62728"
PX_PER_UNIT = 40
WINNER_COLOURS = {Family.BISECTOR: "#1f77b4", Family.QUAD: "#bcbd22", Family.SEARCH: "#9467bd"}

CSV_HEADER = ["x3", "y3", "cov_m1", "cov_m2", "cov_search", "cov_best", "winner", "piece_class"]


@dataclass
class RunManifest:
    command: str
    config: dict = field(default_factory=dict)
    tool_version: str = __version__
    rng_seed: int = 42

    @classmethod
    def build(cls, command: str, cfg: SearchConfig | None = None, grid: GridSpec | None = None,
              mode=None) -> "RunManifest":
        conf: dict = {}
        if cfg is not None:
            conf["search"] = asdict(cfg)
        if grid is not None:
            conf["grid"] = asdict(grid)
        if mode is not None:
            conf["mode"] = mode.value
        return cls(command, conf, __version__, cfg.rng_seed if cfg else 42)

    def as_dict(self) -> dict:
        return asdict(self)


def _poly(p: ConvexPolygon) -> list[list[float]]:
    return [[v.x, v.y] for v in p.vertices]


def partition_to_dict(p: Partition) -> dict:
    return {
        "triangle": _poly(p.region),
        "coverage": p.coverage,
        "family": p.family.value,
        "piece_class": p.piece_class,
        "line": {"anchor": [p.line.anchor.x, p.line.anchor.y], "angle": p.line.angle},
        "isometry": {"reflect": p.map.reflect, "theta": p.map.theta, "t": [p.map.t.x, p.map.t.y]},
        "piece1": _poly(p.piece1),
        "piece2": _poly(p.piece2),
        "waste": [_poly(w) for w in p.waste],
    }


def best_to_dict(bp: BestPartition, manifest: RunManifest | None = None) -> dict:
    out = partition_to_dict(bp.partition)
    out["runner_ups"] = [partition_to_dict(r) for r in bp.runner_ups]
    out["family_scores"] = {f.value: v for f, v in bp.family_scores.items()}
    if manifest is not None:
        out["manifest"] = manifest.as_dict()
    return out


def partition_from_dict(d: dict) -> Partition:
    """Inverse of :func:`partition_to_dict`; geometry is taken as stored."""
    iso = d["isometry"]
    return Partition(
        region=ConvexPolygon(tuple(Point(*v) for v in d["triangle"])),
        piece1=ConvexPolygon(tuple(Point(*v) for v in d["piece1"])),
        piece2=ConvexPolygon(tuple(Point(*v) for v in d["piece2"])),
        map=Isometry(iso["reflect"], iso["theta"], Point(*iso["t"])),
        line=SeparatingLine(Point(*d["line"]["anchor"]), d["line"]["angle"]),
        coverage=d["coverage"],
        waste=tuple(ConvexPolygon(tuple(Point(*v) for v in w)) for w in d["waste"]),
        family=Family(d["family"]),
        piece_class=d["piece_class"],
    )


def emit_partition_json(bp: BestPartition, path, manifest: RunManifest | None = None) -> Path:
    path = Path(path)
    with path.open("w") as fh:
        json.dump(best_to_dict(bp, manifest), fh, indent=2)
        fh.write("\n")
    return path


def load_partition_json(path) -> tuple[Partition, list[Partition], dict]:
    with Path(path).open() as fh:
        d = json.load(fh)
    return partition_from_dict(d), [partition_from_dict(r) for r in d.get("runner_ups", [])], d.get("manifest", {})


def _num(v: float | None) -> str:
    return "" if v is None else f"{v:.6f}"


def emit_sweep_csv(r: SweepResult, path, manifest: RunManifest | None = None) -> Path:
    """One row per evaluated cell; a ``#`` comment line carries the manifest."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        if manifest is not None:
            fh.write("# " + json.dumps(manifest.as_dict(), sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for rec in r.all_records():
            w.writerow([_num(rec.shape.x3), _num(rec.shape.y3), _num(rec.cov_m1), _num(rec.cov_m2),
                        _num(rec.cov_search), _num(rec.cov_best), rec.winner.value, rec.piece_class])
    return path


def read_sweep_csv(path) -> list[dict]:
    with Path(path).open() as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


class _Canvas:
    def __init__(self, xmin: float, ymin: float, xmax: float, ymax: float, margin: float = 0.5):
        self.xmin, self.ymax = xmin - margin, ymax + margin
        self.w = (xmax - xmin + 2 * margin) * PX_PER_UNIT
        self.h = (ymax - ymin + 2 * margin) * PX_PER_UNIT + 30
        self.items: list[str] = []

    def xy(self, p) -> tuple[float, float]:
        # screen y grows downward
        return (p[0] - self.xmin) * PX_PER_UNIT, (self.ymax - p[1]) * PX_PER_UNIT

    def polygon(self, pts, fill: str, stroke: str = "none", width: float = 1.0, opacity: float = 1.0):
        coords = " ".join("%.3f,%.3f" % self.xy(p) for p in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity}" '
                          f'stroke="{stroke}" stroke-width="{width}"/>')

    def text(self, x: float, y: float, s: str):
        self.items.append(f'<text x="{x:.1f}" y="{y:.1f}" font-family="sans-serif" font-size="14">{escape(s)}</text>')

    def cross(self, p, size: float = 8.0, colour: str = "black"):
        x, y = self.xy(p)
        self.items.append(f'<path d="M{x - size:.2f},{y - size:.2f} L{x + size:.2f},{y + size:.2f} '
                          f'M{x - size:.2f},{y + size:.2f} L{x + size:.2f},{y - size:.2f}" '
                          f'stroke="{colour}" stroke-width="2"/>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w:.0f}" height="{self.h:.0f}" '
                f'viewBox="0 0 {self.w:.0f} {self.h:.0f}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def partition_svg(p: Partition) -> str:
    xs = [v.x for v in p.region.vertices]
    ys = [v.y for v in p.region.vertices]
    cv = _Canvas(min(xs), min(ys), max(xs), max(ys))
    for w in p.waste:
        cv.polygon(w.vertices, RED)
    cv.polygon(p.piece1.vertices, GREEN)
    cv.polygon(p.piece2.vertices, ORANGE)
    cv.polygon(p.region.vertices, "none", "black", 2.0)
    cv.text(8, cv.h - 10, f"coverage {p.coverage:.6f}  ({p.family.value}, {p.piece_class}-gon pieces)")
    return cv.render()


def region_map_svg(labels: dict, triple: Point | None, step: float) -> str:
    shapes = list(labels)
    xs = [s.x3 for s in shapes] or [0.0]
    ys = [s.y3 for s in shapes] or [0.0]
    cv = _Canvas(min(xs) - step, min(ys) - step, max(xs) + step, max(ys) + step)
    half = step / 2.0
    for s in sorted(shapes, key=lambda s: (s.y3, s.x3)):
        c = WINNER_COLOURS[labels[s]]
        cv.polygon([(s.x3 - half, s.y3 - half), (s.x3 + half, s.y3 - half),
                    (s.x3 + half, s.y3 + half), (s.x3 - half, s.y3 + half)], c)
    if triple is not None:
        cv.cross(triple)
    legend = "  ".join(f"{f.value}" for f in WINNER_COLOURS)
    cv.text(8, cv.h - 10, f"winner by cell: {legend}" + ("" if triple is None else
                                                          f"; triple point ({triple.x:.2f}, {triple.y:.2f})"))
    return cv.render()


def render_svg(obj, path, step: float | None = None, triple: Point | None = None) -> Path:
    """Write a partition view or a region-map view (``obj`` a winner dict)."""
    path = Path(path)
    if isinstance(obj, BestPartition):
        obj = obj.partition
    if isinstance(obj, Partition):
        text = partition_svg(obj)
    else:
        if step is None:
            raise ValueError("region map needs the grid step")
        text = region_map_svg(obj, triple, step)
    path.write_text(text)
    return path


