"""Taxicab and Minkowski distances in the plane.

All functions are written against plain arithmetic so they work unchanged
on ``float``, ``fractions.Fraction`` and ``QSqrt2`` inputs.  Exact inputs
give exact outputs (except ``minkowski_distance`` for k not in {1, 2}).
"""

from dataclasses import dataclass
from fractions import Fraction
import math


class GeometryError(ValueError):
    """Invalid geometric input: degenerate line, triangle or point."""


def exact(v):
    """Promote ints to Fraction so later divisions stay exact."""
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


def _finite(v):
    try:
        return math.isfinite(float(v))
    except (TypeError, OverflowError):
        return False


@dataclass(frozen=True)
class Point:
    x: object
    y: object

    def __post_init__(self):
        object.__setattr__(self, "x", exact(self.x))
        object.__setattr__(self, "y", exact(self.y))
        if not (_finite(self.x) and _finite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, lam):
        return Point(lam * self.x, lam * self.y)


@dataclass(frozen=True)
class LineCoeffs:
    """The line ``a*x + b*y + c = 0``.  Coefficients are never normalized."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise GeometryError("line needs a != 0 or b != 0")

    def evaluate(self, m):
        return self.a * m.x + self.b * m.y + self.c

    def scaled(self, lam):
        if lam == 0:
            raise GeometryError("cannot scale a line by zero")
        return LineCoeffs(lam * self.a, lam * self.b, lam * self.c)


def taxicab_distance(a, b):
    return abs(a.x - b.x) + abs(a.y - b.y)


def minkowski_distance(a, b, k):
    """Order-k Minkowski distance, ``k >= 1``.

    k = 1 is routed through :func:`taxicab_distance` so the two agree
    exactly, and k = 2 through ``math.hypot``.
    """
    if not k >= 1:
        raise ValueError(f"Minkowski order must be >= 1, got {k}")
    if k == 1:
        return taxicab_distance(a, b)
    dx = abs(float(a.x) - float(b.x))
    dy = abs(float(a.y) - float(b.y))
    if k == 2:
        return math.hypot(dx, dy)
    big = max(dx, dy)
    if big == 0.0:
        return 0.0
    # factor out the larger term to avoid overflow for large k
    return big * (1.0 + (min(dx, dy) / big) ** k) ** (1.0 / k)


def taxicab_point_line_distance(m, line):
    """|a x + b y + c| / max(|a|, |b|)."""
    if line.a == 0 and line.b == 0:
        raise GeometryError("line needs a != 0 or b != 0")
    return abs(line.evaluate(m)) / max(abs(line.a), abs(line.b))


def signed_taxicab_line_offset(m, line):
    """Signed version of :func:`taxicab_point_line_distance`."""
    return line.evaluate(m) / max(abs(line.a), abs(line.b))


def line_through(a, b):
    if a == b:
        raise GeometryError("line_through needs two distinct points")
    ca = b.y - a.y
    cb = a.x - b.x
    cc = -(ca * a.x + cb * a.y)
    return LineCoeffs(ca, cb, cc)
