"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are
repeated in the terminal summary.
"""

from contextlib import contextmanager
from fractions import Fraction
import json
import math
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from taxi_em.bounds import COVERED
from taxi_em.cli import main
from taxi_em.explorer import (
    COUNTEREXAMPLE_EXPECTED,
    GeneralTriangle,
    SamplerConfig,
    general_em_ratio,
    reproduce_counterexample,
    sample_general_triangle,
    worst_ratio_general,
)
from taxi_em.metric import Point, minkowski_distance, taxicab_distance
from taxi_em.reduction import CELLS, Branch, branch_split, coefficients
from taxi_em.sampling import sample_triangle, sample_weight
from taxi_em.triangle import ALL_CASES, TriangleType
from taxi_em.verify import canonical_sweep, verify_infima, verify_vertex_bounds, verify_tables


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    ok = False
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        detail = f"{elapsed:.2f}s (limit {limit:g}s)"
        assert ok, f"criterion {number} over time: {detail}"
    except AssertionError as exc:
        if not detail:
            detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_criterion_1_counterexample():
    with criterion(1, "exact w = 2 counterexample", 1.0):
        res = reproduce_counterexample()
        assert res["values"] == COUNTEREXAMPLE_EXPECTED, res["mismatches"]
        L, R = res["values"]["L"], res["values"]["R"]
        assert L == 92 and R == Fraction(146, 3)
        assert L < 2 * R and L >= Fraction(3, 2) * R


def test_criterion_2_table_equivalence():
    with criterion(2, "12 table cells x 1000 exact samples", 30.0):
        cells = verify_tables(samples=1000, seed=0)
        assert len(cells) == len(CELLS) == 12
        bad = [c for c in cells if c["passed"] != c["samples"] or c["samples"] < 1000]
        assert not bad, bad[0]


def test_criterion_3_vertex_bound_algebra():
    with criterion(3, "vertex bound from form == omega, 1000 per row", 30.0):
        rows = verify_vertex_bounds(samples=1000, seed=0)
        assert len(rows) == len(COVERED) == 24
        bad = [r for r in rows if r["passed"] != r["samples"]]
        assert not bad, bad[0]


def test_criterion_4_infima():
    with criterion(4, "24 infima: 10^4 samples, sharpness, attainment", 60.0):
        rows = verify_infima(samples=10_000, seed=0)
        assert len(rows) == 24
        for r in rows:
            assert r["below_M"] == 0, r["row"]
            assert r["open_row_hits_M"] == 0, r["row"]
            assert r["sharp"] and 0 <= r["sharpness_gap"] <= 0.01, r["row"]
            if r["attained"] == "closed":
                assert r["attains_exactly"] is True, r["row"]


def test_criterion_5_canonical_sweep():
    with criterion(5, "canonical lattice at resolution 60, worst >= 3/2 and exact margins", 120.0):
        res = canonical_sweep(max_param=12, resolution=60)
        rows = res["rows"]
        per_type = {tt: sum(1 for r in rows if r["case"].startswith(str(tt.value))) for tt in TriangleType}
        assert all(n >= 500 for n in per_type.values()), per_type
        assert min(r["worst_ratio"] for r in rows) >= 1.5 - 1e-9
        assert all(r["exact_negative_points"] == 0 for r in rows)
        assert not res["violations"]


def test_criterion_6_metric():
    with criterion(6, "taxicab axioms, Minkowski monotonicity and consistency", 5.0):
        rng = random.Random(6)

        def rp():
            return Point(Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 100)),
                         Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 100)))

        for _ in range(10_000):
            a, b, c = rp(), rp(), rp()
            ab, bc, ac = taxicab_distance(a, b), taxicab_distance(b, c), taxicab_distance(a, c)
            assert ab >= 0 and taxicab_distance(a, a) == 0
            assert (ab == 0) == (a == b)
            assert ab == taxicab_distance(b, a)
            assert ac <= ab + bc
        orders = [1, 1.5, 2, 3, 10]
        for _ in range(10_000):
            a = Point(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
            b = Point(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
            vals = [float(minkowski_distance(a, b, k)) for k in orders]
            assert all(hi <= lo * (1 + 1e-12) for lo, hi in zip(vals, vals[1:]))
            dx, dy = a.x - b.x, a.y - b.y
            assert abs(vals[0] - (abs(dx) + abs(dy))) <= 1e-12 * max(1.0, vals[0])
            assert abs(vals[2] - math.sqrt(dx * dx + dy * dy)) <= 1e-12 * max(1.0, vals[2])


def test_criterion_7_random_search(tmp_path):
    with criterion(7, "general-random seed 0, n 500: deterministic, failures exactly rechecked", 300.0):
        outs = []
        for i in range(2):
            path = tmp_path / f"run{i}.json"
            code = main(["search", "--mode", "general-random", "--seed", "0", "--n", "500",
                         "--output", str(path)])
            assert code in (0, 1)
            outs.append(path.read_bytes())
        assert outs[0] == outs[1], "search report is not deterministic"
        rep = json.loads(outs[0])
        assert rep["samples"] == 500 and len(rep["rows"]) == 500
        assert (code == 1) == bool(rep["failures"])
        for f in rep["failures"]:
            g, _ = sample_general_triangle(0, f["index"], SamplerConfig())
            pt = Point(*(Fraction(v) for v in f["point_exact"]))
            assert Fraction(f["ratio_exact"]) < Fraction(3, 2)
            if f["kind"] == "lattice":
                assert general_em_ratio(g.exact(), pt) == Fraction(f["ratio_exact"])
        print(f"  min ratio seen {rep['min_ratio_seen']!r}, failures {len(rep['failures'])}")


def test_criterion_8_invariance():
    with criterion(8, "translation/reflection invariance, branch continuity", 30.0):
        rng = random.Random(8)
        cfg = SamplerConfig()
        for i in range(100):
            g, _ = sample_general_triangle(8, i, cfg)
            base = worst_ratio_general(g, 60)
            shift = Point(Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)),
                          Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)))
            for other in (g.translated(shift), g.reflected("x"), g.reflected("y")):
                rep = worst_ratio_general(other, 60)
                assert rep.exact_ratio == base.exact_ratio and rep.worst_ratio == base.worst_ratio
        for i in range(1000):
            case = ALL_CASES[i % len(ALL_CASES)]
            t = sample_triangle(case, rng)
            w = sample_weight(rng)
            x = branch_split(t, case)
            y = Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 100))
            f1 = coefficients(t, w, Branch.PI1, case)
            f2 = coefficients(t, w, Branch.PI2, case)
            assert f1(x, y) == f2(x, y)
