from fractions import Fraction

import pytest

from ripshadow.complexes import build_rips
from ripshadow.errors import AuditError
from ripshadow.fixtures import (
    annulus_ring_points,
    audit_crossing_triangle,
    cross_polytope_points,
    cross_polytope_report,
    crossing_triangle_fixture,
    four_d_points,
    hexagon_points,
    hexagon_report,
    rational_sqrt,
)
from ripshadow.geometry import dist2
from ripshadow.homology import betti_numbers, integer_h1
from ripshadow.shadow import build_shadow, shadow_betti

F = Fraction


def test_rational_sqrt_accuracy():
    x = F(3) / 4
    s = rational_sqrt(x)
    assert abs(s * s - x) < F(1, 2**30)


def test_hexagon_exact_relations():
    pts = hexagon_points(F(11, 20))
    x1, x2, x3, x4, x5, x6 = pts
    assert x4 == (-x1[0], -x1[1])
    assert x5 == (-x2[0], -x2[1])
    assert x6 == (-x3[0], -x3[1])
    assert x2 == (x1[0] + x3[0], x1[1] + x3[1])
    assert (x1[0] + x3[0] + x5[0], x1[1] + x3[1] + x5[1]) == (0, 0)


def test_hexagon_is_octahedron():
    pts = hexagon_points(F(11, 20))
    c = build_rips(pts, F(1), dim_cap=3)
    assert c.counts() == (6, 12, 8, 0)
    assert betti_numbers(c, "Q", 2).b == (1, 0, 1)
    s = build_shadow(c)
    assert shadow_betti(s) == (1, 0)


def test_hexagon_precondition():
    with pytest.raises(ValueError):
        hexagon_points(F(1, 2))  # r^2 = 1/4 violates 1/4 < r^2
    with pytest.raises(ValueError):
        hexagon_points(F(3, 5))  # 3 r^2 > 1


def test_hexagon_report_margins_positive():
    rep = hexagon_report()
    assert all(m > 0 for m in rep.margins.values())
    assert rep.census["edges"] == 12


def test_cross_polytope_k3_matches_hexagon_combinatorics():
    pts = cross_polytope_points(3)
    c = build_rips(pts, F(1), dim_cap=3)
    assert c.counts() == (6, 12, 8, 0)
    assert betti_numbers(c, "Q", 2).b == (1, 0, 1)


def test_cross_polytope_k4_sphere():
    pts = cross_polytope_points(4)
    c = build_rips(pts, F(1), dim_cap=4)
    assert c.counts()[:5] == (8, 24, 32, 16, 0)
    assert betti_numbers(c, "Q", 3).b == (1, 0, 0, 1)


def test_cross_polytope_antipodal_sums():
    for k in (2, 3, 4):
        pts = cross_polytope_points(k)
        for i in range(k):
            assert (pts[i][0] + pts[i + k][0], pts[i][1] + pts[i + k][1]) == (0, 0)


def test_cross_polytope_bad_radius_audits():
    with pytest.raises(AuditError):
        cross_polytope_points(4, F(3, 5))  # too wide: non-antipodal pair exceeds 1


def test_four_d_rips_census_and_betti():
    pts = four_d_points()
    assert all(len(p) == 4 for p in pts)
    c = build_rips(pts, F(1), dim_cap=3)
    assert c.counts() == (6, 12, 8, 0)
    b = betti_numbers(c, "Q", 2).b
    assert b == (1, 0, 1)
    assert b[1] == 0  # simply connected at homology level


def test_four_d_barycenters_coincide_exactly():
    pts = four_d_points()
    b_odd = tuple(sum(pts[v][c] for v in (0, 2, 4)) for c in range(4))
    b_even = tuple(sum(pts[v][c] for v in (1, 3, 5)) for c in range(4))
    assert b_odd == b_even == (0, 0, 0, 0)


def test_crossing_triangle_quasi_and_shadow():
    from ripshadow.quasi import build_quasi

    pts, interval, policy = crossing_triangle_fixture()
    rq = build_quasi(pts, interval, policy, dim_cap=2)
    assert betti_numbers(rq, "Q", 1).b == (3, 0)
    s = build_shadow(rq)
    assert shadow_betti(s) == (1, 1)
    # removing the uncertainty restores the certificate
    r3 = build_rips(pts, F(3), dim_cap=3)
    rb = betti_numbers(r3, "Q", 1).b
    sb = shadow_betti(build_shadow(r3))
    assert (rb[0], rb[1]) == sb
    assert integer_h1(r3).torsion == ()


def test_crossing_triangle_band_margins():
    pts, _, _ = crossing_triangle_fixture()
    margins = audit_crossing_triangle(pts)
    assert min(margins.values()) > F(1, 10)


def test_annulus_ring_chord_structure():
    pts = annulus_ring_points()
    n = len(pts)
    for i in range(n):
        d2 = dist2(pts[i], pts[(i + 1) % n])
        assert d2 <= F(49, 100)
    c = build_rips(pts, F(7, 10))
    assert betti_numbers(c, "Q", 1).b == (1, 1)
