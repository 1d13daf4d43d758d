"""Hot loops: Erdos-Mordell ratio over barycentric lattices, local descent,
and the exact integer margin sweep.

Each kernel exists twice: a scalar-loop version compiled with numba and a
vectorized numpy version.  ``get_kernels()`` returns the pair selected by
``TAXI_EM_BACKEND`` (see ``_backend``); tests and the benchmark compare both.

Points are parametrized as m = A + s (B - A) + t (C - A) with the triangle
translated so that A is the origin.  Working in (s, t) keeps the search
path identical under translations and axis reflections of the triangle.
"""

import math

import numpy as np

from ._backend import HAVE_NUMBA, USE_NUMBA, njit

# descent directions in (s, t): along AB, AC and BC, both ways
_DIRS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [1.0, -1.0], [-1.0, 1.0]])

INF = math.inf


# --------------------------------------------------------------------------
# scalar evaluators
# --------------------------------------------------------------------------

def _general_eval(s, t, tri, lines, margin):
    """Ratio at (s, t) for a general triangle, or inf outside the margin.

    tri = [bx, by, cx, cy] relative to A; lines[i] = [a, b, c, 1/max(|a|,|b|)]
    for the edges BC, AC, AB in that order.
    """
    u = 1.0 - s - t
    if s <= 0.0 or t <= 0.0 or u <= 0.0:
        return INF
    bx, by, cx, cy = tri[0], tri[1], tri[2], tri[3]
    x = s * bx + t * cx
    y = s * by + t * cy
    ra = abs(lines[0, 0] * x + lines[0, 1] * y + lines[0, 2]) * lines[0, 3]
    rb = abs(lines[1, 0] * x + lines[1, 1] * y + lines[1, 2]) * lines[1, 3]
    rc = abs(lines[2, 0] * x + lines[2, 1] * y + lines[2, 2]) * lines[2, 3]
    if ra < margin or rb < margin or rc < margin:
        return INF
    big = (abs(x) + abs(y)) + (abs(x - bx) + abs(y - by)) + (abs(x - cx) + abs(y - cy))
    return big / (ra + rb + rc)


def _canonical_eval(s, t, prm, margin):
    """Ratio at (s, t) for A(0,r), B(p,0), C(q,0) via the unreduced formula.

    prm = [p, q, r, max(r, q), max(r, |p|)].
    """
    u = 1.0 - s - t
    if s <= 0.0 or t <= 0.0 or u <= 0.0:
        return INF
    p, q, r, Q, P = prm[0], prm[1], prm[2], prm[3], prm[4]
    x = s * p + t * q
    y = u * r
    ra = abs(y)
    rb = abs(q * r - r * x - q * y) / Q
    rc = abs(p * r - r * x - p * y) / P
    if ra < margin or rb < margin or rc < margin:
        return INF
    lhs = abs(x) + abs(y - r) + abs(x - p) + abs(x - q) + 2.0 * abs(y)
    return lhs / (ra + rb + rc)


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

_general_eval_nb = njit(_general_eval)
_canonical_eval_nb = njit(_canonical_eval)


@njit
def _lattice_general_nb(tri, lines, n, margin):
    best = INF
    bj = -1
    bk = -1
    for j in range(1, n):
        for k in range(1, n - j):
            v = _general_eval_nb(j / n, k / n, tri, lines, margin)
            if v < best:
                best = v
                bj = j
                bk = k
    return best, bj, bk


@njit
def _lattice_canonical_nb(prm, n, margin):
    best = INF
    bj = -1
    bk = -1
    for j in range(1, n):
        for k in range(1, n - j):
            v = _canonical_eval_nb(j / n, k / n, prm, margin)
            if v < best:
                best = v
                bj = j
                bk = k
    return best, bj, bk


@njit
def _refine_general_nb(s, t, h, hmin, tri, lines, margin):
    cur = _general_eval_nb(s, t, tri, lines, margin)
    while h >= hmin:
        best = cur
        bs = s
        bt = t
        for d in range(6):
            ns = s + h * _DIRS[d, 0]
            nt = t + h * _DIRS[d, 1]
            v = _general_eval_nb(ns, nt, tri, lines, margin)
            if v < best:
                best = v
                bs = ns
                bt = nt
        if best < cur:
            cur = best
            s = bs
            t = bt
        else:
            h = 0.5 * h
    return s, t, cur


@njit
def _refine_canonical_nb(s, t, h, hmin, prm, margin):
    cur = _canonical_eval_nb(s, t, prm, margin)
    while h >= hmin:
        best = cur
        bs = s
        bt = t
        for d in range(6):
            ns = s + h * _DIRS[d, 0]
            nt = t + h * _DIRS[d, 1]
            v = _canonical_eval_nb(ns, nt, prm, margin)
            if v < best:
                best = v
                bs = ns
                bt = nt
        if best < cur:
            cur = best
            s = bs
            t = bt
        else:
            h = 0.5 * h
    return s, t, cur


@njit
def _int_margin_nb(p, q, r, n, wn, wd):
    """Min over strict-interior lattice points of wd*L*Q*P - wn*R*Q*P (exact int64)."""
    Q = max(r, q)
    P = max(r, abs(p))
    best = np.int64(1) << np.int64(62)
    bi = -1
    bj = -1
    negatives = 0
    for i in range(1, n):
        for j in range(1, n - i):
            k = n - i - j
            X = j * p + k * q
            Y = i * r
            L = abs(X) + abs(Y - n * r) + abs(X - n * p) + abs(X - n * q) + 2 * abs(Y)
            R = abs(Y) * Q * P + abs(n * q * r - r * X - q * Y) * P + abs(n * p * r - r * X - p * Y) * Q
            v = wd * L * Q * P - wn * R
            if v < 0:
                negatives += 1
            if v < best:
                best = v
                bi = i
                bj = j
    return best, bi, bj, negatives


# --------------------------------------------------------------------------
# numpy path
# --------------------------------------------------------------------------

def _lattice_jk(n):
    j, k = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    keep = (j + k) <= n - 1
    return j[keep], k[keep]


def _lattice_general_np(tri, lines, n, margin):
    j, k = _lattice_jk(n)
    if j.size == 0:
        return INF, -1, -1
    s = j / n
    t = k / n
    bx, by, cx, cy = tri
    x = s * bx + t * cx
    y = s * by + t * cy
    ra = np.abs(lines[0, 0] * x + lines[0, 1] * y + lines[0, 2]) * lines[0, 3]
    rb = np.abs(lines[1, 0] * x + lines[1, 1] * y + lines[1, 2]) * lines[1, 3]
    rc = np.abs(lines[2, 0] * x + lines[2, 1] * y + lines[2, 2]) * lines[2, 3]
    big = (np.abs(x) + np.abs(y)) + (np.abs(x - bx) + np.abs(y - by)) + (np.abs(x - cx) + np.abs(y - cy))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = big / (ra + rb + rc)
    ok = (ra >= margin) & (rb >= margin) & (rc >= margin) & ((1.0 - s - t) > 0.0)
    val = np.where(ok, val, INF)
    idx = int(np.argmin(val))  # first minimum in (j, k) row-major order, like the loop
    if not np.isfinite(val[idx]):
        return INF, -1, -1
    return float(val[idx]), int(j[idx]), int(k[idx])


def _lattice_canonical_np(prm, n, margin):
    j, k = _lattice_jk(n)
    if j.size == 0:
        return INF, -1, -1
    s = j / n
    t = k / n
    p, q, r, Q, P = prm
    u = 1.0 - s - t
    x = s * p + t * q
    y = u * r
    ra = np.abs(y)
    rb = np.abs(q * r - r * x - q * y) / Q
    rc = np.abs(p * r - r * x - p * y) / P
    lhs = np.abs(x) + np.abs(y - r) + np.abs(x - p) + np.abs(x - q) + 2.0 * np.abs(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = lhs / (ra + rb + rc)
    ok = (ra >= margin) & (rb >= margin) & (rc >= margin) & (u > 0.0)
    val = np.where(ok, val, INF)
    idx = int(np.argmin(val))
    if not np.isfinite(val[idx]):
        return INF, -1, -1
    return float(val[idx]), int(j[idx]), int(k[idx])


def _refine_py(evaluate, s, t, h, hmin):
    cur = evaluate(s, t)
    while h >= hmin:
        best, bs, bt = cur, s, t
        for ds, dt in _DIRS:
            ns = s + h * ds
            nt = t + h * dt
            v = evaluate(ns, nt)
            if v < best:
                best, bs, bt = v, ns, nt
        if best < cur:
            cur, s, t = best, bs, bt
        else:
            h = 0.5 * h
    return s, t, cur


def _refine_general_np(s, t, h, hmin, tri, lines, margin):
    return _refine_py(lambda a, b: _general_eval(a, b, tri, lines, margin), s, t, h, hmin)


def _refine_canonical_np(s, t, h, hmin, prm, margin):
    return _refine_py(lambda a, b: _canonical_eval(a, b, prm, margin), s, t, h, hmin)


def _int_margin_np(p, q, r, n, wn, wd):
    j, k = _lattice_jk(n)
    i = n - j - k
    keep = i >= 1
    i, j, k = i[keep].astype(np.int64), j[keep].astype(np.int64), k[keep].astype(np.int64)
    Q = max(r, q)
    P = max(r, abs(p))
    X = j * p + k * q
    Y = i * r
    L = np.abs(X) + np.abs(Y - n * r) + np.abs(X - n * p) + np.abs(X - n * q) + 2 * np.abs(Y)
    R = np.abs(Y) * Q * P + np.abs(n * q * r - r * X - q * Y) * P + np.abs(n * p * r - r * X - p * Y) * Q
    v = wd * L * Q * P - wn * R
    if v.size == 0:
        return 1 << 62, -1, -1, 0
    # loop order in the numba version is (i, j); match its tie-break
    order = np.lexsort((j, i))
    v, i, j = v[order], i[order], j[order]
    idx = int(np.argmin(v))
    return int(v[idx]), int(i[idx]), int(j[idx]), int(np.count_nonzero(v < 0))


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

class Kernels:
    def __init__(self, name, lattice_general, lattice_canonical, refine_general,
                 refine_canonical, int_margin):
        self.name = name
        self.lattice_general = lattice_general
        self.lattice_canonical = lattice_canonical
        self.refine_general = refine_general
        self.refine_canonical = refine_canonical
        self.int_margin = int_margin

    def __repr__(self):
        return f"Kernels({self.name!r})"


NUMPY = Kernels("numpy", _lattice_general_np, _lattice_canonical_np,
                _refine_general_np, _refine_canonical_np, _int_margin_np)

NUMBA = (
    Kernels("numba", _lattice_general_nb, _lattice_canonical_nb,
            _refine_general_nb, _refine_canonical_nb, _int_margin_nb)
    if HAVE_NUMBA
    else None
)


def get_kernels(name=None):
    if name is None:
        name = "numba" if USE_NUMBA else "numpy"
    if name == "numba":
        if NUMBA is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        return NUMBA
    if name == "numpy":
        return NUMPY
    raise ValueError(f"unknown backend {name!r}")


# int64 guard for the exact sweep: |values| stay below 2**62
def int_margin_fits(p, q, r, n, wn, wd):
    m = max(abs(p), abs(q), abs(r))
    return 16 * n * m ** 3 * max(abs(wn), abs(wd)) < (1 << 62)
