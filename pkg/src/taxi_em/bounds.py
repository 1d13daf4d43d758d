"""Per-vertex weight bounds, their infima by subcase, and the global bound.

At a key vertex V of a canonical triangle the branch form f(V) is linear
in w with a negative w-coefficient, so f(V) >= 0 reads w <= omega(p, q, r).
``omega`` returns those closed forms; ``vertex_bound_from_form`` re-derives
each one by solving f(V) = 0 from the table coefficients, as an
independent check of the algebra.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import math

from .metric import GeometryError, Point
from .qsqrt2 import SQRT2, QSqrt2
from .reduction import Branch, coefficients
from .triangle import (
    ALL_CASES,
    CanonicalTriangle,
    CaseTag,
    Subcase,
    TriangleType,
    classify,
    in_subcase,
)


class VertexRole(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"  # Type1 only
    O = "O"  # Type2 only


class Attainment(Enum):
    CLOSED = "closed"  # omega in [M, oo)
    OPEN = "open"  # omega in (M, oo)


@dataclass(frozen=True)
class BoundResult:
    M: object  # Fraction or QSqrt2
    attained: Attainment

    @property
    def value(self):
        return float(self.M)


T1, T2 = TriangleType.TYPE1, TriangleType.TYPE2
A, B, C, D, O = VertexRole


def roles_for(triangle_type):
    fourth = D if triangle_type is T1 else O
    return (A, B, C, fourth)


def covered(case, vertex):
    return vertex in roles_for(case.triangle_type)


COVERED = tuple((case, v) for case in ALL_CASES for v in roles_for(case.triangle_type))

# The branch whose form is evaluated at each vertex.
_BRANCH = {
    (T1, A): Branch.PI1,
    (T1, B): Branch.PI2,
    (T1, C): Branch.PI2,
    (T1, D): Branch.PI2,
    (T2, A): Branch.PI2,
    (T2, B): Branch.PI1,
    (T2, C): Branch.PI2,
    (T2, O): Branch.PI2,
}


def vertex_point(t, vertex):
    p, q, r = t.p, t.q, t.r
    if vertex is A:
        return Point(0 * r, r)
    if vertex is B:
        return Point(p, 0 * p)
    if vertex is C:
        return Point(q, 0 * q)
    if vertex is D:
        return Point(p, r * (q - p) / q)
    return Point(0 * p, 0 * p)


def _require(case, vertex, t):
    if not covered(case, vertex):
        raise ValueError(f"vertex {vertex.value} is not a key vertex of {case}")
    if not in_subcase(t, case):
        raise GeometryError(f"triangle ({t.p}, {t.q}, {t.r}) is outside {case}")


def omega(case, vertex, t):
    """Closed-form upper bound on w from requiring f >= 0 at ``vertex``."""
    _require(case, vertex, t)
    p, q, r = t.p, t.q, t.r
    sc = case.subcase
    if case.triangle_type is T1:
        if vertex is A:
            return 2 + (p + q) / r
        if vertex is B:
            if sc is Subcase.C:
                return 1 + (p + r) / (q - p)
            return 1 + (q * q + p * r) / (r * (q - p))
        if vertex is C:
            if sc is Subcase.A:
                return (p / r) * (1 + (q + r) / (q - p))
            return 1 + (q + r) / (q - p)
        # D
        if sc is Subcase.A:
            return 1 + (q * q + p * r) / (2 * r * (q - p))
        return 1 + (q - p) / (r + p) + q / (q - p)
    if vertex is A:
        return 2 + (q - p) / r
    if vertex is B:
        if sc is Subcase.C:
            return 1 + (r - p) / (q - p)
        return (q / r) * (1 + (r - p) / (q - p))
    if vertex is C:
        if sc is Subcase.A:
            return (-p / r) * (1 + (q + r) / (q - p))
        return 1 + (q + r) / (q - p)
    # O
    if sc is Subcase.A:
        return Fraction(1, 2) + (q - p) / (2 * r)
    if sc is Subcase.B:
        return 1 + q / (r - p)
    return 1 + r / (q - p)


def vertex_bound_from_form(case, vertex, t, tables=None):
    """Solve f(vertex) = 0 for w using the branch form's coefficients."""
    _require(case, vertex, t)
    branch = _BRANCH[(case.triangle_type, vertex)]
    v = vertex_point(t, vertex)
    f1 = coefficients(t, 1, branch, case, tables)(v.x, v.y)
    f2 = coefficients(t, 2, branch, case, tables)(v.x, v.y)
    slope = f2 - f1
    if slope == 0:
        raise ArithmeticError(f"form at {vertex.value} does not depend on w for {case}")
    # f(w) = f1 + slope * (w - 1)
    return 1 - f1 / slope


_INFIMA = {
    # (case label, vertex): (M, attainment)
    ("1a", A): (Fraction(4), Attainment.OPEN),
    ("1b", A): (Fraction(3), Attainment.CLOSED),
    ("1c", A): (Fraction(2), Attainment.OPEN),
    ("2a", A): (Fraction(4), Attainment.CLOSED),
    ("2b", A): (Fraction(3), Attainment.OPEN),
    ("2c", A): (Fraction(2), Attainment.OPEN),
    ("1a", B): (3 + 2 * SQRT2, Attainment.CLOSED),
    ("1b", B): (Fraction(2), Attainment.CLOSED),
    ("1c", B): (Fraction(2), Attainment.OPEN),
    ("2a", B): (Fraction(2), Attainment.CLOSED),
    ("2b", B): (Fraction(2), Attainment.CLOSED),
    ("2c", B): (Fraction(2), Attainment.OPEN),
    ("1a", C): (Fraction(2), Attainment.OPEN),
    ("1b", C): (Fraction(2), Attainment.OPEN),
    ("1c", C): (Fraction(3), Attainment.OPEN),
    ("2a", C): (Fraction(2), Attainment.CLOSED),
    ("2b", C): (Fraction(2), Attainment.CLOSED),
    ("2c", C): (Fraction(2), Attainment.OPEN),
    ("1a", D): (2 + SQRT2, Attainment.CLOSED),
    ("1b", D): (Fraction(3, 2) + SQRT2, Attainment.CLOSED),
    ("1c", D): (Fraction(2), Attainment.OPEN),
    ("2a", O): (Fraction(3, 2), Attainment.CLOSED),
    ("2b", O): (Fraction(3, 2), Attainment.CLOSED),
    ("2c", O): (Fraction(3, 2), Attainment.OPEN),
}


_FORMULAS = {
    (T1, A, "abc"): "2 + (p+q)/r",
    (T2, A, "abc"): "2 + (q-p)/r",
    (T1, B, "ab"): "1 + (q^2+pr)/(r(q-p))",
    (T1, B, "c"): "1 + (p+r)/(q-p)",
    (T2, B, "ab"): "(q/r)(1 + (r-p)/(q-p))",
    (T2, B, "c"): "1 + (r-p)/(q-p)",
    (T1, C, "a"): "(p/r)(1 + (q+r)/(q-p))",
    (T1, C, "bc"): "1 + (q+r)/(q-p)",
    (T2, C, "a"): "(-p/r)(1 + (q+r)/(q-p))",
    (T2, C, "bc"): "1 + (q+r)/(q-p)",
    (T1, D, "a"): "1 + (q^2+pr)/(2r(q-p))",
    (T1, D, "bc"): "1 + (q-p)/(r+p) + q/(q-p)",
    (T2, O, "a"): "1/2 + (q-p)/(2r)",
    (T2, O, "b"): "1 + q/(r-p)",
    (T2, O, "c"): "1 + r/(q-p)",
}


def omega_formula(case, vertex):
    """Human-readable form of the bound ``omega`` uses for (case, vertex)."""
    for (tt, v, group), text in _FORMULAS.items():
        if tt is case.triangle_type and v is vertex and case.subcase.value in group:
            return text
    raise ValueError(f"vertex {vertex.value} is not a key vertex of {case}")


def subcase_infimum(case, vertex):
    try:
        M, att = _INFIMA[(case.label, vertex)]
    except KeyError:
        raise ValueError(f"vertex {vertex.value} is not a key vertex of {case}") from None
    return BoundResult(M, att)


def vertex_bounds(t):
    """{role: omega} over the four key vertices of ``t``'s own case."""
    case = classify(t)
    return {v: omega(case, v, t) for v in roles_for(case.triangle_type)}


def admissible_weight(t):
    """Largest w for which the inequality holds at every interior point of ``t``.

    The branch forms are linear, so checking the key vertices is enough.
    """
    return min(vertex_bounds(t).values())


def binding_vertex(t):
    bounds = vertex_bounds(t)
    best = min(bounds.values())
    return next(v for v, val in bounds.items() if val == best)


def global_bound():
    return Fraction(3, 2)


def _rational_sqrt2(eps):
    """A rational within ``eps`` of sqrt(2) (a continued-fraction convergent)."""
    s = Fraction(math.sqrt(2)).limit_denominator(max(2, int(4 / eps)))
    return s


def _qt(p, q, r):
    return CanonicalTriangle(QSqrt2.coerce(p), QSqrt2.coerce(q), QSqrt2.coerce(r))


# Parameter families driving omega toward its infimum as eps -> 0+.
# Each maps a small positive Fraction eps to a triangle inside the subcase.
SHARPNESS = {
    ("1a", A): lambda e: CanonicalTriangle(1, 1 + e, 1),  # q/p -> 1, r = p
    ("1b", A): lambda e: CanonicalTriangle(e, 1, 1),  # p -> 0, r = q
    ("1c", A): lambda e: CanonicalTriangle(0, 1, 1 / e),  # r -> oo
    ("2a", A): lambda e: CanonicalTriangle(-1, 1 + e, 1),
    ("2b", A): lambda e: CanonicalTriangle(-e, 1, 1),  # -p -> 0, r = q
    ("2c", A): lambda e: CanonicalTriangle(-1, 1, 1 / e),
    ("1a", B): lambda e: CanonicalTriangle(1, 1 + _rational_sqrt2(e), 1),  # p/(q-p) -> 1/sqrt2
    ("1b", B): lambda e: CanonicalTriangle(e, 1, 1),
    ("1c", B): lambda e: CanonicalTriangle(0, 1, 1 + e),
    ("2a", B): lambda e: CanonicalTriangle(-1, 1 + e, 1),
    ("2b", B): lambda e: CanonicalTriangle(Fraction(-1, 2), 1 + e, 1),
    ("2c", B): lambda e: CanonicalTriangle(-1, 1, 1 + e),  # r -> q+
    ("1a", C): lambda e: CanonicalTriangle(1, 1 / e, 1),  # q -> oo
    ("1b", C): lambda e: CanonicalTriangle(0, 1, e),  # r -> 0+
    ("1c", C): lambda e: CanonicalTriangle(0, 1, 1 + e),
    ("2a", C): lambda e: CanonicalTriangle(-1, 1 + e, 1),
    ("2b", C): lambda e: CanonicalTriangle(-1, 2, 1 + e),  # r -> -p
    ("2c", C): lambda e: CanonicalTriangle(-1, 1, 1 + e),
    ("1a", D): lambda e: CanonicalTriangle(1, 1 + _rational_sqrt2(e), 1),
    ("1b", D): lambda e: CanonicalTriangle(Fraction(3) - 2 * _rational_sqrt2(e), 1, 1),
    ("1c", D): lambda e: CanonicalTriangle(0, 1, 1 / e),
    ("2a", O): lambda e: CanonicalTriangle(-1, 1 + e, 1),
    ("2b", O): lambda e: CanonicalTriangle(-1, 1 + e, 1),
    ("2c", O): lambda e: CanonicalTriangle(-1, 1, 1 + e),
}

# Exact triangles where omega equals the infimum, for the closed rows.
ATTAINING = {
    ("1b", A): CanonicalTriangle(0, 1, 1),
    ("2a", A): CanonicalTriangle(-1, 1, 1),
    ("1a", B): _qt(1, 1 + SQRT2, 1),
    ("1b", B): CanonicalTriangle(0, 1, 1),
    ("2a", B): CanonicalTriangle(-1, 1, 1),
    ("2b", B): CanonicalTriangle(Fraction(-1, 2), 1, 1),
    ("2a", C): CanonicalTriangle(-1, 3, 1),
    ("2b", C): CanonicalTriangle(-1, 2, 1),
    ("1a", D): _qt(1, 1 + SQRT2, 1),
    ("1b", D): _qt(3 - 2 * SQRT2, 1, 1),
    ("2a", O): CanonicalTriangle(-1, 1, 1),
    ("2b", O): CanonicalTriangle(-1, 1, 1),
}


def sharpness_witness(case, vertex, eps):
    """omega on the sharpness family at ``eps`` (a Fraction)."""
    t = SHARPNESS[(case.label, vertex)](Fraction(eps))
    return t, omega(case, vertex, t)


def attaining_triangle(case, vertex):
    """Exact triangle with omega == M, or None for open rows."""
    return ATTAINING.get((case.label, vertex))
