"""The canonical triangle A(0, r), B(p, 0), C(q, 0) and its case analysis."""

from dataclasses import dataclass
from enum import Enum

from .metric import (
    GeometryError,
    LineCoeffs,
    Point,
    exact,
    signed_taxicab_line_offset,
    taxicab_distance,
    taxicab_point_line_distance,
)


class TriangleType(Enum):
    TYPE1 = 1  # 0 <= p < q, r > 0
    TYPE2 = 2  # p < 0 < q, r > 0


class Subcase(Enum):
    A = "a"
    B = "b"
    C = "c"


@dataclass(frozen=True)
class CaseTag:
    triangle_type: TriangleType
    subcase: Subcase

    @property
    def label(self):
        return f"{self.triangle_type.value}{self.subcase.value}"

    @classmethod
    def parse(cls, text):
        """``"1a"`` / ``"Type2b"`` / ``"2<c>"`` -> CaseTag."""
        s = text.strip().lower().replace("type", "").replace("<", "").replace(">", "")
        if len(s) != 2 or s[0] not in "12" or s[1] not in "abc":
            raise ValueError(f"unknown case label {text!r}")
        return cls(TriangleType(int(s[0])), Subcase(s[1]))

    def __str__(self):
        return f"Type{self.triangle_type.value}<{self.subcase.value}>"


ALL_CASES = tuple(CaseTag(tt, sc) for tt in TriangleType for sc in Subcase)


@dataclass(frozen=True)
class DistanceTriple:
    a: object
    b: object
    c: object

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def total(self):
        return self.a + self.b + self.c


@dataclass(frozen=True)
class CanonicalTriangle:
    p: object
    q: object
    r: object

    def __post_init__(self):
        for name in ("p", "q", "r"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if not self.p < self.q:
            raise GeometryError(f"canonical triangle needs p < q, got p={self.p}, q={self.q}")
        if not self.r > 0:
            raise GeometryError(f"canonical triangle needs r > 0, got r={self.r}")

    @property
    def A(self):
        return Point(0 * self.r, self.r)

    @property
    def B(self):
        return Point(self.p, 0 * self.p)

    @property
    def C(self):
        return Point(self.q, 0 * self.q)

    @property
    def vertices(self):
        return (self.A, self.B, self.C)

    # Edge lines as written out for the counterexample; never normalized.
    @property
    def line_bc(self):
        return LineCoeffs(0, 1, 0)

    @property
    def line_ac(self):
        p, q, r = self.p, self.q, self.r
        return LineCoeffs(-r, -q, q * r)

    @property
    def line_ab(self):
        p, q, r = self.p, self.q, self.r
        return LineCoeffs(-r, -p, p * r)

    def scaled(self, lam):
        return CanonicalTriangle(lam * self.p, lam * self.q, lam * self.r)


def in_subcase(t, tag):
    """True iff (p, q, r) satisfies the inequality chain of ``tag`` as printed."""
    p, q, r = t.p, t.q, t.r
    sc = tag.subcase
    if tag.triangle_type is TriangleType.TYPE1:
        if sc is Subcase.A:
            return 0 < r <= p < q
        if sc is Subcase.B:
            return 0 <= p < r <= q
        return 0 <= p < q < r
    m = -p
    if sc is Subcase.A:
        return 0 < r <= m <= q
    if sc is Subcase.B:
        return 0 < m <= r <= q
    return 0 < m <= q < r


def classify(t):
    """Return the case whose chain holds, trying a, b, c in order.

    The only overlap between chains is Type2 with r == -p (both <a> and <b>);
    it resolves to <a>.  All table entries and bounds coincide there.
    """
    for tag in ALL_CASES:
        if in_subcase(t, tag):
            return tag
    raise GeometryError(
        f"triangle p={t.p}, q={t.q}, r={t.r} matches no analyzed configuration"
    )


def vertex_distances(t, m):
    return DistanceTriple(
        taxicab_distance(m, t.A), taxicab_distance(m, t.B), taxicab_distance(m, t.C)
    )


def edge_distances(t, m):
    return DistanceTriple(
        taxicab_point_line_distance(m, t.line_bc),
        taxicab_point_line_distance(m, t.line_ac),
        taxicab_point_line_distance(m, t.line_ab),
    )


def em_ratio(t, m):
    """(R_A + R_B + R_C) / (r_a + r_b + r_c) for a point off the boundary."""
    den = edge_distances(t, m).total()
    if den == 0:
        raise GeometryError(f"point ({m.x}, {m.y}) has zero edge-distance sum")
    if not contains_interior(t, m):
        raise GeometryError(f"point ({m.x}, {m.y}) is not strictly inside the triangle")
    return vertex_distances(t, m).total() / den


def interior_offsets(t, m):
    """Signed taxicab offsets of ``m`` from the three edges, positive inside."""
    out = []
    for line, opposite in ((t.line_bc, t.A), (t.line_ac, t.B), (t.line_ab, t.C)):
        s = signed_taxicab_line_offset(m, line)
        if signed_taxicab_line_offset(opposite, line) < 0:
            s = -s
        out.append(s)
    return tuple(out)


def contains_interior(t, m, margin=0):
    offsets = interior_offsets(t, m)
    return all(o > 0 and o >= margin for o in offsets)


def key_vertices(t):
    """[A, B, C, D] for Type1 or [A, B, C, O] for Type2.

    D = (p, r(q - p)/q) is where the vertical x = p meets AC.
    """
    tag = classify(t)
    p, q, r = t.p, t.q, t.r
    if tag.triangle_type is TriangleType.TYPE1:
        fourth = Point(p, r * (q - p) / q)
    else:
        fourth = Point(0 * p, 0 * p)
    return [t.A, t.B, t.C, fourth]
