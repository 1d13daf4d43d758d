"""Branchwise linear forms of the weighted inequality on a canonical triangle.

Inside the triangle every absolute value in

    |x| + |y-r| + |x-p| + |x-q| + 2|y|
        >= w (|y| + |qr-rx-qy| / max(|r|,|q|) + |pr-rx-py| / max(|r|,|p|))

has a fixed sign except one (|x-p| for Type1, |x| for Type2), so the
difference LHS - w*RHS is linear on each side of the vertical x = x_i.
``TABLES`` holds the coefficients of those linear forms in their expanded,
unsimplified shape; the exact check in :func:`taxi_em.verify.verify_cell`
catches any slip in them.
"""

from dataclasses import dataclass
from enum import Enum

from .metric import GeometryError
from .triangle import (
    CaseTag,
    Subcase,
    TriangleType,
    classify,
    contains_interior,
)


class Branch(Enum):
    PI1 = 1  # x < x_i
    PI2 = 2  # x >= x_i


T1, T2 = TriangleType.TYPE1, TriangleType.TYPE2
SA, SB, SC = Subcase.A, Subcase.B, Subcase.C
P1, P2 = Branch.PI1, Branch.PI2

# (type, subcase, branch) -> (p, q, r, w) -> (alpha, beta, gamma)
TABLES = {
    (T1, SA, P1): lambda p, q, r, w: ((p - q) * w * r - p * q, -p * q * (w - 1), p * q * (p + q + r)),
    (T1, SA, P2): lambda p, q, r, w: ((p - q) * w * r + p * q, -p * q * (w - 1), p * q * (-p + q + r)),
    (T1, SB, P1): lambda p, q, r, w: (r * (w * (r - q) - q), q * (r - p * w), q * r * (w * (p - r) + p + q + r)),
    (T1, SB, P2): lambda p, q, r, w: (r * (w * (r - q) + q), q * (r - p * w), q * r * (w * (p - r) - p + q + r)),
    (T1, SC, P1): lambda p, q, r, w: (-r, w * (q - p - r) + r, r * (w * (p - q) + p + q + r)),
    (T1, SC, P2): lambda p, q, r, w: (r, w * (q - p - r) + r, r * (w * (p - q) - p + q + r)),
    (T2, SA, P1): lambda p, q, r, w: (p * q - (p + q) * w * r, -p * q * (w + 1), p * q * (2 * r * w + p - q - r)),
    (T2, SA, P2): lambda p, q, r, w: (-p * q - (p + q) * w * r, -p * q * (w + 1), p * q * (2 * r * w + p - q - r)),
    (T2, SB, P1): lambda p, q, r, w: (r * (w * (r - q) - q), q * (r - p * w), q * r * (w * (p - r) - p + q + r)),
    (T2, SB, P2): lambda p, q, r, w: (r * (w * (r - q) + q), q * (r - p * w), q * r * (w * (p - r) - p + q + r)),
    (T2, SC, P1): lambda p, q, r, w: (-r, w * (q - p - r) + r, r * (w * (p - q) - p + q + r)),
    (T2, SC, P2): lambda p, q, r, w: (r, w * (q - p - r) + r, r * (w * (p - q) - p + q + r)),
}

CELLS = tuple(TABLES)


@dataclass(frozen=True)
class LinearForm:
    alpha: object
    beta: object
    gamma: object
    branch: Branch
    case: CaseTag

    def __call__(self, x, y):
        return self.alpha * x + self.beta * y + self.gamma


def _check_weight(w):
    if not w > 0:
        raise ValueError(f"weight must be positive, got {w}")


def branch_split(t, case=None):
    """x_1 = p for Type1, x_2 = 0 for Type2."""
    case = case or classify(t)
    return t.p if case.triangle_type is TriangleType.TYPE1 else 0 * t.p


def branch_of(t, x, case=None):
    return Branch.PI1 if x < branch_split(t, case) else Branch.PI2


def coefficients(t, w, branch, case=None, tables=None):
    _check_weight(w)
    case = case or classify(t)
    tables = TABLES if tables is None else tables
    key = (case.triangle_type, case.subcase, branch)
    try:
        cell = tables[key]
    except KeyError:
        raise ValueError(f"no table cell for {case} / {branch.name}") from None
    alpha, beta, gamma = cell(t.p, t.q, t.r, w)
    return LinearForm(alpha, beta, gamma, branch, case)


def direct_margin(t, w, m):
    """LHS - w*RHS of the unreduced inequality, straight from the absolute values."""
    p, q, r = t.p, t.q, t.r
    x, y = m.x, m.y
    lhs = abs(x) + abs(y - r) + abs(x - p) + abs(x - q) + 2 * abs(y)
    rhs = (
        abs(y)
        + abs(q * r - r * x - q * y) / max(abs(r), abs(q))
        + abs(p * r - r * x - p * y) / max(abs(r), abs(p))
    )
    return lhs - w * rhs


def scale_factor(t, case=None):
    """Positive constant with  table form = scale_factor * direct_margin.

    max(r, q) * max(r, |p|) clears both denominators; in subcase <c> both
    maxima equal r and the tables carry one factor r only.
    """
    case = case or classify(t)
    p, q, r = t.p, t.q, t.r
    if case.subcase is Subcase.C:
        return r
    return max(r, q) * max(r, abs(p))


def reduced_margin(t, w, m, case=None, tables=None):
    case = case or classify(t)
    if not contains_interior(t, m):
        raise GeometryError(f"point ({m.x}, {m.y}) is not strictly inside the triangle")
    form = coefficients(t, w, branch_of(t, m.x, case), case, tables)
    return form(m.x, m.y)
