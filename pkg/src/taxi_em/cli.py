"""``taxi-em`` command line.

Exit codes: 0 success, 1 a mathematical violation was found, 2 bad usage
or input.  Reports go to stdout (or ``--output``); diagnostics to stderr.
Settings resolve as flags > TAXI_EM_* environment > ``--config`` file
(key=value lines) > defaults.
"""

import argparse
import csv
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
import io
import json
import math
import os
import sys

from . import kernels as _k
from .bounds import COVERED, VertexRole
from .explorer import (
    CSV_COLUMNS,
    GeneralTriangle,
    SamplerConfig,
    general_edge_distances,
    general_em_ratio,
    general_vertex_distances,
    random_search,
    reproduce_counterexample,
)
from .metric import GeometryError, Point
from .qsqrt2 import QSqrt2
from .triangle import CanonicalTriangle, CaseTag, contains_interior, edge_distances, vertex_distances
from .verify import canonical_sweep, verify_infima, verify_tables

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tolerance: float = 1e-9
    grid_resolution: int = 400
    seed: int = 0
    output_format: str = "json"
    margin: float = 1e-6  # relative to the triangle's taxicab diameter

    def validate(self):
        if not self.tolerance > 0:
            raise UsageError(f"tolerance must be > 0, got {self.tolerance}")
        if self.grid_resolution < 2:
            raise UsageError(f"grid resolution must be >= 2, got {self.grid_resolution}")
        if self.margin < 0:
            raise UsageError(f"margin must be >= 0, got {self.margin}")
        if self.output_format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")
        return self


# config-file / env key -> RunConfig field
_KEYS = {
    "tolerance": "tolerance",
    "resolution": "grid_resolution",
    "grid_resolution": "grid_resolution",
    "seed": "seed",
    "format": "output_format",
    "output_format": "output_format",
    "margin": "margin",
}
_ENV = {
    "TAXI_EM_SEED": "seed",
    "TAXI_EM_TOLERANCE": "tolerance",
    "TAXI_EM_RESOLUTION": "grid_resolution",
}


def _convert(name, raw):
    typ = {f.name: f.type for f in fields(RunConfig)}[name]
    conv = {"float": float, "int": int, "str": str}.get(typ if isinstance(typ, str) else typ.__name__)
    try:
        return conv(raw)
    except ValueError:
        raise UsageError(f"bad value for {name}: {raw!r}") from None


def read_config_file(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, _, raw = line.partition("=")
                key = key.strip().lower()
                if key not in _KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                values[_KEYS[key]] = _convert(_KEYS[key], raw.strip())
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    return values


def resolve_config(args, environ=None):
    environ = os.environ if environ is None else environ
    values = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for var, name in _ENV.items():
        if environ.get(var):
            values[name] = _convert(name, environ[var])
    flags = {
        "tolerance": args.tolerance,
        "grid_resolution": args.resolution,
        "seed": args.seed,
        "output_format": args.format,
        "margin": args.margin,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**values).validate()


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, QSqrt2):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Point):
        return {"x": jsonable(obj.x), "y": jsonable(obj.y)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def dump_json(obj):
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: jsonable(row.get(k)) for k in columns})
    return buf.getvalue()


def dump_text_table(rows, columns):
    cells = [[str(jsonable(row.get(c))) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in cells)
    return "\n".join(lines) + "\n"


def emit(text, output=None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def exact_pair(v):
    return {"exact": str(v), "float": float(v)}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_counterexample(args, cfg):
    rep = reproduce_counterexample()
    order = ["R_A", "R_B", "R_C", "r_a", "r_b", "r_c", "L", "R"]
    if cfg.output_format == "json":
        out = {k: str(v) for k, v in rep["values"].items()}
        out.update({f"{k}_float": float(v) for k, v in rep["values"].items()})
        out.update({
            "triangle": {k: str(v) for k, v in rep["triangle"].items()},
            "point": {k: str(v) for k, v in rep["point"].items()},
            "ratio": str(rep["ratio"]),
            "ratio_float": float(rep["ratio"]),
            "deficit_w2": str(rep["deficit_w2"]),
            "surplus_w3_2": str(rep["surplus_w3_2"]),
            "violates_w2": rep["violates_w2"],
            "satisfies_w3_2": rep["satisfies_w3_2"],
            "mismatches": rep["mismatches"],
        })
        text = dump_json(out)
    else:
        rows = [{"quantity": k, "exact": rep["values"][k], "float": float(rep["values"][k])} for k in order]
        rows += [
            {"quantity": "L/R", "exact": rep["ratio"], "float": float(rep["ratio"])},
            {"quantity": "2R-L", "exact": rep["deficit_w2"], "float": float(rep["deficit_w2"])},
            {"quantity": "L-(3/2)R", "exact": rep["surplus_w3_2"], "float": float(rep["surplus_w3_2"])},
        ]
        if cfg.output_format == "csv":
            text = dump_csv(rows, ["quantity", "exact", "float"])
        else:
            head = "triangle A(0,30) B(-20,0) C(40,0), point M(0,2)\n\n"
            tail = (f"\nL >= 2R: {not rep['violates_w2']}   (w = 2 fails)\n"
                    f"L >= (3/2)R: {rep['satisfies_w3_2']}\n")
            text = head + dump_text_table(rows, ["quantity", "exact", "float"]) + tail
    emit(text, args.output)
    if not rep["ok"]:
        for k, diff in rep["mismatches"].items():
            print(f"mismatch {k}: expected {diff['expected']}, got {diff['got']}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify_tables(args, cfg):
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    cells = verify_tables(args.samples, cfg.seed)
    bad = [c for c in cells if c["passed"] != c["samples"]]
    if cfg.output_format == "json":
        text = dump_json({"samples_per_cell": args.samples, "seed": cfg.seed, "cells": cells, "all_passed": not bad})
    else:
        rows = [{"cell": c["cell"], "samples": c["samples"], "passed": c["passed"]} for c in cells]
        dump = dump_csv if cfg.output_format == "csv" else dump_text_table
        text = dump(rows, ["cell", "samples", "passed"])
    emit(text, args.output)
    for c in bad:
        print(f"cell {c['cell']} failed: {c['failures'][0]}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


BOUNDS_COLUMNS = ["case", "vertex", "formula", "M", "M_float", "attained", "sampled_min", "gap",
                  "below_M", "sharpness_gap", "attains_exactly"]


def cmd_bounds(args, cfg):
    rows = list(COVERED)
    if args.case:
        try:
            case = CaseTag.parse(args.case)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows = [(c, v) for c, v in rows if c == case]
    if args.vertex:
        try:
            vertex = VertexRole(args.vertex.upper())
        except ValueError:
            raise UsageError(f"unknown vertex {args.vertex!r}") from None
        rows = [(c, v) for c, v in rows if v is vertex]
    if not rows:
        raise UsageError("filter selects no (case, vertex) row")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    results = verify_infima(args.samples, cfg.seed, rows)
    for res in results:
        res["case"], res["vertex"] = res["row"].split("/")
    bad = [r for r in results if r["below_M"] or r["open_row_hits_M"] or r["attains_exactly"] is False]
    if cfg.output_format == "json":
        text = dump_json({"samples": args.samples, "seed": cfg.seed, "rows": results,
                          "global_bound": "3/2"})
    else:
        dump = dump_csv if cfg.output_format == "csv" else dump_text_table
        text = dump(results, BOUNDS_COLUMNS)
    emit(text, args.output)
    return EXIT_VIOLATION if bad else EXIT_OK


def parse_number(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def cmd_ratio(args, cfg):
    nums = [parse_number(v) for v in args.triangle]
    m = Point(*(parse_number(v) for v in args.point))
    if len(nums) == 3:
        t = CanonicalTriangle(*nums)
        if not contains_interior(t, m):
            raise GeometryError(f"point ({m.x}, {m.y}) is not strictly inside the triangle")
        R = list(vertex_distances(t, m))
        r = list(edge_distances(t, m))
    elif len(nums) == 6:
        g = GeneralTriangle.from_coords(nums)
        general_em_ratio(g, m)  # raises on exterior / boundary
        R = list(general_vertex_distances(g, m))
        r = list(general_edge_distances(g, m))
    else:
        raise UsageError("--triangle takes 3 numbers (p q r) or 6 (ax ay bx by cx cy)")
    L, S = sum(R), sum(r)
    out = {
        "R_A": exact_pair(R[0]), "R_B": exact_pair(R[1]), "R_C": exact_pair(R[2]),
        "r_a": exact_pair(r[0]), "r_b": exact_pair(r[1]), "r_c": exact_pair(r[2]),
        "L": exact_pair(L), "R": exact_pair(S),
        "ratio": exact_pair(L / S),
        "margin_w3_2": exact_pair(L - Fraction(3, 2) * S),
        "margin_w2": exact_pair(L - 2 * S),
    }
    if cfg.output_format == "json":
        text = dump_json(out)
    else:
        rows = [{"quantity": k, "exact": v["exact"], "float": v["float"]} for k, v in out.items()]
        dump = dump_csv if cfg.output_format == "csv" else dump_text_table
        text = dump(rows, ["quantity", "exact", "float"])
    emit(text, args.output)
    return EXIT_OK


def cmd_search(args, cfg):
    kern = _k.get_kernels(args.backend)
    if args.mode == "canonical-grid":
        if args.max_param < 1:
            raise UsageError("--max-param must be >= 1")
        res = canonical_sweep(args.max_param, cfg.grid_resolution, cfg.margin, cfg.tolerance,
                              exact=True, kernels=kern)
        res["min_worst_ratio"] = min(r["worst_ratio"] for r in res["rows"])
        if cfg.output_format == "json":
            text = dump_json(res)
        else:
            cols = ["p", "q", "r", "case", "worst_ratio", "argmin_x", "argmin_y", "exact_negative_points"]
            dump = dump_csv if cfg.output_format == "csv" else dump_text_table
            text = dump(res["rows"], cols)
        emit(text, args.output)
        for v in res["violations"]:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VIOLATION if res["violations"] else EXIT_OK

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    fixed = None
    if args.fixed_vertices:
        fixed = tuple(float(parse_number(v)) for v in args.fixed_vertices)
    config = SamplerConfig(args.box_lo, args.box_hi, args.angle_lo, args.angle_hi, fixed)
    if not config.box_lo < config.box_hi:
        raise UsageError("--box-lo must be below --box-hi")
    rep = random_search(cfg.seed, args.n, config, cfg.grid_resolution, cfg.margin, cfg.tolerance, kern)
    if cfg.output_format == "json":
        text = dump_json(rep.to_dict())
    elif cfg.output_format == "csv":
        text = dump_csv(rep.rows, CSV_COLUMNS)
    else:
        text = dump_text_table(rep.rows, CSV_COLUMNS) + (
            f"\nmin ratio seen: {rep.min_ratio_seen!r}\nfailures: {len(rep.failures)}\n")
    emit(text, args.output)
    for f in rep.failures:
        print(f"ratio below 3/2 (exactly rechecked): {f}", file=sys.stderr)
    return EXIT_VIOLATION if rep.failures else EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--resolution", type=int, default=None, help="grid resolution N")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--margin", type=float, default=None,
                        help="interior margin relative to the taxicab diameter")
    common.add_argument("--config", default=None, help="key=value config file")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="taxi-em",
        description="Weighted Erdos-Mordell inequality in the taxicab plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counterexample", parents=[common], help="exact w = 2 counterexample")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify-tables", parents=[common], help="exact check of the linear forms")
    p.add_argument("--samples", type=int, default=1000, help="samples per table cell")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("bounds", parents=[common], help="per-vertex weight infima")
    p.add_argument("--all", action="store_true", help="all 24 rows (the default)")
    p.add_argument("--case", default=None, help="e.g. 1a, 2c")
    p.add_argument("--vertex", default=None, help="A, B, C, D or O")
    p.add_argument("--samples", type=int, default=2000, help="random triangles per row")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("ratio", parents=[common], help="distances and ratio at one point")
    p.add_argument("--triangle", nargs="+", required=True, metavar="X",
                   help="p q r (canonical) or ax ay bx by cx cy")
    p.add_argument("--point", nargs=2, required=True, metavar=("X", "Y"))
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("search", parents=[common], help="worst-ratio searches")
    p.add_argument("--mode", choices=["canonical-grid", "general-random"], default="general-random")
    p.add_argument("--n", type=int, default=500, help="random triangles (general-random)")
    p.add_argument("--max-param", type=int, default=12, help="lattice bound (canonical-grid)")
    p.add_argument("--box-lo", type=float, default=-1.0)
    p.add_argument("--box-hi", type=float, default=1.0)
    p.add_argument("--angle-lo", type=float, default=0.0)
    p.add_argument("--angle-hi", type=float, default=math.pi / 2)
    p.add_argument("--fixed-vertices", nargs=6, default=None, metavar="C")
    p.add_argument("--backend", choices=["numba", "numpy"], default=None)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except (UsageError, GeometryError, ValueError, OverflowError) as exc:
        print(f"taxi-em: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"taxi-em: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
