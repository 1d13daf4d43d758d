"""Numerical exploration: the w = 2 counterexample, worst ratios over
triangle interiors, and seeded random search over arbitrary triangles.

Worst ratios are found on a barycentric lattice followed by local descent
(``kernels``), then re-evaluated in exact rational arithmetic at the final
point, so every reported ratio is the exact value at a concrete interior
point.  ``exact_worst_ratio`` gives the true infimum independently: inside
a triangle both distance sums are affine on every cell cut out by the
verticals and horizontals through the vertices, so the ratio's infimum
sits at a cell corner.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from . import kernels as _k
from .metric import (
    GeometryError,
    Point,
    line_through,
    signed_taxicab_line_offset,
    taxicab_distance,
    taxicab_point_line_distance,
)
from .triangle import (
    CanonicalTriangle,
    edge_distances,
    em_ratio,
    vertex_distances,
)

THREE_HALVES = Fraction(3, 2)
DEFAULT_MARGIN = 1e-6  # relative to the taxicab diameter
REFINE_FLOOR = 1e-10  # final descent step, in barycentric units


def to_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def fmt(v):
    """Exact string for a Fraction ('146/3', '92'); repr for floats."""
    if isinstance(v, Fraction):
        return str(v)
    return repr(v)


@dataclass(frozen=True)
class GeneralTriangle:
    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        if self.twice_area() == 0:
            raise GeometryError("degenerate (collinear) triangle")

    @classmethod
    def from_coords(cls, coords):
        ax, ay, bx, by, cx, cy = coords
        return cls(Point(ax, ay), Point(bx, by), Point(cx, cy))

    @classmethod
    def from_canonical(cls, t):
        return cls(t.A, t.B, t.C)

    @property
    def vertices(self):
        return (self.a, self.b, self.c)

    def coords(self):
        return [v for pt in self.vertices for v in pt]

    def twice_area(self):
        a, b, c = self.vertices
        return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)

    def edges(self):
        """Edge lines opposite a, b, c (BC, AC, AB)."""
        a, b, c = self.vertices
        return (line_through(b, c), line_through(a, c), line_through(a, b))

    def translated(self, v):
        # exact: float + Fraction would round
        shift = Point(to_fraction(v.x), to_fraction(v.y))
        return GeneralTriangle(*(pt + shift for pt in self.exact().vertices))

    def reflected(self, axis):
        """Mirror over the x axis (axis='x') or the y axis (axis='y')."""
        if axis == "x":
            return GeneralTriangle(*(Point(pt.x, -pt.y) for pt in self.vertices))
        if axis == "y":
            return GeneralTriangle(*(Point(-pt.x, pt.y) for pt in self.vertices))
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")

    def rotated(self, angle):
        c, s = math.cos(angle), math.sin(angle)
        return GeneralTriangle(
            *(Point(float(pt.x) * c - float(pt.y) * s, float(pt.x) * s + float(pt.y) * c)
              for pt in self.vertices)
        )

    def diameter(self):
        a, b, c = self.vertices
        return max(taxicab_distance(a, b), taxicab_distance(b, c), taxicab_distance(a, c))

    def exact(self):
        return GeneralTriangle(
            *(Point(to_fraction(pt.x), to_fraction(pt.y)) for pt in self.vertices)
        )


def general_vertex_distances(g, m):
    return tuple(taxicab_distance(m, v) for v in g.vertices)


def general_edge_distances(g, m):
    return tuple(taxicab_point_line_distance(m, line) for line in g.edges())


def general_interior_offsets(g, m):
    out = []
    for line, opposite in zip(g.edges(), g.vertices):
        s = signed_taxicab_line_offset(m, line)
        if signed_taxicab_line_offset(opposite, line) < 0:
            s = -s
        out.append(s)
    return tuple(out)


def general_contains(g, m, margin=0):
    return all(o > 0 and o >= margin for o in general_interior_offsets(g, m))


def general_em_ratio(g, m):
    if not general_contains(g, m):
        raise GeometryError(f"point ({m.x}, {m.y}) is not strictly inside the triangle")
    return sum(general_vertex_distances(g, m)) / sum(general_edge_distances(g, m))


# --------------------------------------------------------------------------
# counterexample
# --------------------------------------------------------------------------

COUNTEREXAMPLE_TRIANGLE = (-20, 40, 30)
COUNTEREXAMPLE_POINT = (0, 2)
COUNTEREXAMPLE_EXPECTED = {
    "R_A": Fraction(28),
    "R_B": Fraction(22),
    "R_C": Fraction(42),
    "r_a": Fraction(2),
    "r_b": Fraction(28),
    "r_c": Fraction(56, 3),
    "L": Fraction(92),
    "R": Fraction(146, 3),
}


def reproduce_counterexample():
    """Exact ledger of the p=-20, q=40, r=30, M(0, 2) counterexample to w = 2."""
    t = CanonicalTriangle(*COUNTEREXAMPLE_TRIANGLE)
    m = Point(*COUNTEREXAMPLE_POINT)
    R_A, R_B, R_C = vertex_distances(t, m)
    r_a, r_b, r_c = edge_distances(t, m)
    L = R_A + R_B + R_C
    R = r_a + r_b + r_c
    values = {"R_A": R_A, "R_B": R_B, "R_C": R_C, "r_a": r_a, "r_b": r_b, "r_c": r_c, "L": L, "R": R}
    mismatches = {
        k: {"expected": str(COUNTEREXAMPLE_EXPECTED[k]), "got": str(v)}
        for k, v in values.items()
        if v != COUNTEREXAMPLE_EXPECTED[k]
    }
    return {
        "triangle": {"p": t.p, "q": t.q, "r": t.r},
        "point": {"x": m.x, "y": m.y},
        "values": values,
        "ratio": L / R,
        "deficit_w2": 2 * R - L,
        "surplus_w3_2": L - THREE_HALVES * R,
        "violates_w2": L < 2 * R,
        "satisfies_w3_2": L >= THREE_HALVES * R,
        "mismatches": mismatches,
        "ok": not mismatches and L < 2 * R and L >= THREE_HALVES * R,
    }


# --------------------------------------------------------------------------
# worst ratio over the interior
# --------------------------------------------------------------------------

@dataclass
class RatioReport:
    worst_ratio: float
    exact_ratio: Fraction
    argmin_point: Point
    grid_resolution: int
    margin: float
    lattice_ratio: float
    tolerance: float = 1e-9

    @property
    def at_least_three_halves(self):
        return self.worst_ratio >= 1.5 - self.tolerance

    def to_dict(self):
        return {
            "worst_ratio": self.worst_ratio,
            "worst_ratio_exact": str(self.exact_ratio),
            "argmin_point": {
                "x": float(self.argmin_point.x),
                "y": float(self.argmin_point.y),
                "x_exact": str(self.argmin_point.x),
                "y_exact": str(self.argmin_point.y),
            },
            "grid_resolution": self.grid_resolution,
            "margin": self.margin,
            "lattice_ratio": self.lattice_ratio,
            "at_least_three_halves": self.at_least_three_halves,
        }


def _check_resolution(resolution):
    if int(resolution) != resolution or resolution < 2:
        raise ValueError(f"grid resolution must be an integer >= 2, got {resolution}")


def _general_inputs(g):
    """Float kernel inputs relative to vertex a, built from exact differences."""
    ex = g.exact()
    a, b, c = ex.vertices
    bx, by = float(b.x - a.x), float(b.y - a.y)
    cx, cy = float(c.x - a.x), float(c.y - a.y)
    tri = np.array([bx, by, cx, cy])
    lines = np.empty((3, 4))
    for row, (u, v) in enumerate((((bx, by), (cx, cy)), ((0.0, 0.0), (cx, cy)), ((0.0, 0.0), (bx, by)))):
        la = v[1] - u[1]
        lb = u[0] - v[0]
        lc = -(la * u[0] + lb * u[1])
        lines[row] = (la, lb, lc, 1.0 / max(abs(la), abs(lb)))
    return ex, tri, lines


def worst_ratio_general(g, resolution=400, margin=DEFAULT_MARGIN, tolerance=1e-9, kernels=None):
    """Smallest ratio found over points at least ``margin * diameter`` inside ``g``.

    An upper bound on the true infimum.  Distances come from the triangle's
    own vertices and edge lines; nothing is canonicalized.
    """
    _check_resolution(resolution)
    kern = kernels or _k.get_kernels()
    ex, tri, lines = _general_inputs(g)
    abs_margin = float(margin) * float(ex.diameter())
    lattice, j, k = kern.lattice_general(tri, lines, int(resolution), abs_margin)
    if j < 0:
        raise ValueError(f"no lattice point at resolution {resolution} clears margin {margin}")
    s, t, _ = kern.refine_general(j / resolution, k / resolution, 1.0 / resolution,
                                  REFINE_FLOOR, tri, lines, abs_margin)
    x_rel = s * tri[0] + t * tri[2]
    y_rel = s * tri[1] + t * tri[3]
    a = ex.a
    point = Point(a.x + Fraction(x_rel), a.y + Fraction(y_rel))
    exact = general_em_ratio(ex, point)
    return RatioReport(float(exact), exact, point, int(resolution), abs_margin, float(lattice), tolerance)


def worst_ratio_canonical(t, resolution=400, margin=DEFAULT_MARGIN, tolerance=1e-9, kernels=None):
    """As ``worst_ratio_general`` but evaluated through the canonical closed form."""
    _check_resolution(resolution)
    kern = kernels or _k.get_kernels()
    p, q, r = float(t.p), float(t.q), float(t.r)
    prm = np.array([p, q, r, max(r, q), max(r, abs(p))])
    diam = float(GeneralTriangle.from_canonical(t).diameter())
    abs_margin = float(margin) * diam
    lattice, j, k = kern.lattice_canonical(prm, int(resolution), abs_margin)
    if j < 0:
        raise ValueError(f"no lattice point at resolution {resolution} clears margin {margin}")
    s, tt, _ = kern.refine_canonical(j / resolution, k / resolution, 1.0 / resolution,
                                     REFINE_FLOOR, prm, abs_margin)
    x = s * p + tt * q
    y = (1.0 - s - tt) * r
    exact_t = CanonicalTriangle(to_fraction(t.p), to_fraction(t.q), to_fraction(t.r))
    point = Point(Fraction(x), Fraction(y))
    exact = em_ratio(exact_t, point)
    return RatioReport(float(exact), exact, point, int(resolution), abs_margin, float(lattice), tolerance)


def exact_worst_ratio(g):
    """Exact infimum of the ratio over the interior of ``g`` and a closed-triangle minimizer.

    Enumerates the corners of the cells cut by the axis-parallel lines
    through the vertices; the ratio is a quotient of affine functions on
    each cell, so its minimum is at one of them.
    """
    if isinstance(g, CanonicalTriangle):
        g = GeneralTriangle.from_canonical(g)
    ex = g.exact()
    verts = ex.vertices
    xs = sorted({v.x for v in verts})
    ys = sorted({v.y for v in verts})
    cands = list(verts)
    for u, v in ((verts[0], verts[1]), (verts[1], verts[2]), (verts[0], verts[2])):
        if u.x != v.x:
            for X in xs:
                lam = (X - u.x) / (v.x - u.x)
                if 0 < lam < 1:
                    cands.append(Point(X, u.y + lam * (v.y - u.y)))
        if u.y != v.y:
            for Y in ys:
                lam = (Y - u.y) / (v.y - u.y)
                if 0 < lam < 1:
                    cands.append(Point(u.x + lam * (v.x - u.x), Y))
    for X in xs:
        for Y in ys:
            cands.append(Point(X, Y))
    best = None
    for m in cands:
        if not all(o >= 0 for o in general_interior_offsets(ex, m)):
            continue
        val = sum(general_vertex_distances(ex, m)) / sum(general_edge_distances(ex, m))
        if best is None or val < best[0]:
            best = (val, m)
    return best


# --------------------------------------------------------------------------
# random search
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SamplerConfig:
    """Vertices uniform in [box_lo, box_hi]^2, then rotated about the origin
    by an angle uniform in [angle_lo, angle_hi).  ``fixed_vertices`` pins the
    pre-rotation triangle (six coordinates)."""

    box_lo: float = -1.0
    box_hi: float = 1.0
    angle_lo: float = 0.0
    angle_hi: float = math.pi / 2
    fixed_vertices: tuple = None

    def to_dict(self):
        return {
            "box": [self.box_lo, self.box_hi],
            "angle": [self.angle_lo, self.angle_hi],
            "fixed_vertices": None if self.fixed_vertices is None else [float(v) for v in self.fixed_vertices],
        }


def sample_general_triangle(seed, index, config):
    """Triangle for sample ``index``; depends only on (seed, index, config)."""
    rng = np.random.default_rng([int(seed), int(index)])
    while True:
        if config.fixed_vertices is not None:
            base = GeneralTriangle.from_coords(config.fixed_vertices)
        else:
            xy = rng.uniform(config.box_lo, config.box_hi, size=6)
            try:
                base = GeneralTriangle.from_coords([float(v) for v in xy])
            except GeometryError:
                continue
        if config.angle_hi > config.angle_lo:
            angle = float(rng.uniform(config.angle_lo, config.angle_hi))
        else:
            angle = float(config.angle_lo)
        if angle == 0.0:
            return base, angle
        try:
            return base.rotated(angle), angle
        except GeometryError:
            if config.fixed_vertices is not None:
                raise
            continue


@dataclass
class SearchReport:
    seed: int
    samples: int
    resolution: int
    margin: float
    tolerance: float
    config: SamplerConfig
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def min_ratio_seen(self):
        return min((row["worst_ratio"] for row in self.rows), default=math.inf)

    @property
    def min_exact_infimum(self):
        return min((row["exact_infimum"] for row in self.rows), default=math.inf)

    def to_dict(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "resolution": self.resolution,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "config": self.config.to_dict(),
            "min_ratio_seen": self.min_ratio_seen,
            "min_exact_infimum": self.min_exact_infimum,
            "failures": self.failures,
            "three_halves_holds_on_sample": not self.failures,
            "note": "numerical evidence only; no proof or refutation is implied",
            "rows": self.rows,
        }


CSV_COLUMNS = ["seed", "index", "angle", "ax", "ay", "bx", "by", "cx", "cy",
               "worst_ratio", "exact_infimum", "argmin_x", "argmin_y"]


def random_search(seed, n, config=None, resolution=400, margin=DEFAULT_MARGIN,
                  tolerance=1e-9, kernels=None):
    if n < 1:
        raise ValueError("random_search needs n >= 1")
    config = config or SamplerConfig()
    report = SearchReport(int(seed), int(n), int(resolution), float(margin), float(tolerance), config)
    for index in range(n):
        g, angle = sample_general_triangle(seed, index, config)
        rep = worst_ratio_general(g, resolution, margin, tolerance, kernels)
        exact_inf, exact_pt = exact_worst_ratio(g)
        coords = [float(v) for v in g.coords()]
        report.rows.append({
            "seed": int(seed),
            "index": index,
            "angle": angle,
            **dict(zip(("ax", "ay", "bx", "by", "cx", "cy"), coords)),
            "worst_ratio": rep.worst_ratio,
            "exact_infimum": float(exact_inf),
            "argmin_x": float(rep.argmin_point.x),
            "argmin_y": float(rep.argmin_point.y),
        })
        # float candidates are kept only if the exact value at the point agrees
        if rep.worst_ratio < 1.5 - tolerance and rep.exact_ratio < THREE_HALVES:
            report.failures.append({
                "kind": "lattice",
                "index": index,
                "vertices": coords,
                "point": [float(rep.argmin_point.x), float(rep.argmin_point.y)],
                "point_exact": [str(rep.argmin_point.x), str(rep.argmin_point.y)],
                "ratio": rep.worst_ratio,
                "ratio_exact": str(rep.exact_ratio),
            })
        if exact_inf < THREE_HALVES:
            report.failures.append({
                "kind": "cell-corner",
                "index": index,
                "vertices": coords,
                "point": [float(exact_pt.x), float(exact_pt.y)],
                "point_exact": [str(exact_pt.x), str(exact_pt.y)],
                "ratio": float(exact_inf),
                "ratio_exact": str(exact_inf),
            })
    report.failures.sort(key=lambda f: (f["ratio"], f["index"], f["kind"]))
    return report
