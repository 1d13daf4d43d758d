"""Seeded samplers of exact rational triangles, weights and interior points.

Every sampler takes a ``random.Random`` so callers control reproducibility;
nothing here touches global random state.
"""

from fractions import Fraction

from .metric import Point
from .reduction import Branch
from .triangle import CanonicalTriangle, Subcase, TriangleType


def rational(rng, lo=1, hi=1000, max_den=60):
    """Positive rational with mixed magnitudes: n/d, n in [lo, hi], d in [1, max_den]."""
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def increment(rng, allow_zero, zero_prob=0.1):
    if allow_zero and rng.random() < zero_prob:
        return Fraction(0)
    return rational(rng)


def sample_triangle(case, rng, positive_p=False):
    """Rational (p, q, r) satisfying the chain of ``case``.

    Non-strict links of the chain are hit with equality about one time in
    ten so the boundary of every region gets exercised.  ``positive_p``
    excludes p = 0 (where the left Type1 piece degenerates).
    """
    sc = case.subcase
    if case.triangle_type is TriangleType.TYPE1:
        if sc is Subcase.A:  # 0 < r <= p < q
            r = rational(rng)
            p = r + increment(rng, True)
            q = p + increment(rng, False)
        elif sc is Subcase.B:  # 0 <= p < r <= q
            p = increment(rng, not positive_p)
            r = p + increment(rng, False)
            q = r + increment(rng, True)
        else:  # 0 <= p < q < r
            p = increment(rng, not positive_p)
            q = p + increment(rng, False)
            r = q + increment(rng, False)
        return CanonicalTriangle(p, q, r)
    if sc is Subcase.A:  # 0 < r <= -p <= q
        r = rational(rng)
        m = r + increment(rng, True)
        q = m + increment(rng, True)
    elif sc is Subcase.B:  # 0 < -p <= r <= q
        m = rational(rng)
        r = m + increment(rng, True)
        q = r + increment(rng, True)
    else:  # 0 < -p <= q < r
        m = rational(rng)
        q = m + increment(rng, True)
        r = q + increment(rng, False)
    return CanonicalTriangle(-m, q, r)


def sample_weight(rng):
    return Fraction(rng.randint(1, 4000), rng.randint(1, 1000))


def branch_piece(t, case, branch):
    """Vertices of the sub-triangle of ``t`` on which ``branch`` applies."""
    p, q, r = t.p, t.q, t.r
    if case.triangle_type is TriangleType.TYPE1:
        split = Point(p, r * (q - p) / q)  # D
        if branch is Branch.PI1:
            return t.A, t.B, split
        return t.B, t.C, split
    split = Point(0, 0)  # O
    if branch is Branch.PI1:
        return t.A, t.B, split
    return t.A, t.C, split


def _combine(weights, pts):
    total = sum(weights)
    x = sum(wt * v.x for wt, v in zip(weights, pts)) / total
    y = sum(wt * v.y for wt, v in zip(weights, pts)) / total
    return Point(x, y)


def sample_interior_point(t, case, branch, rng, split_prob=0.1):
    """Rational point strictly inside ``t`` lying in ``branch``'s piece.

    For PI2 the open dividing segment x = x_i (which belongs to PI2) is
    sampled with probability ``split_prob``.
    """
    piece = branch_piece(t, case, branch)
    if branch is Branch.PI2 and rng.random() < split_prob:
        # piece[0] and piece[2] span the dividing segment (B-D or A-O)
        a, b = rng.randint(1, 1000), rng.randint(1, 1000)
        return _combine((a, 0, b), piece)
    weights = [rng.randint(1, 1000) for _ in range(3)]
    return _combine(weights, piece)
