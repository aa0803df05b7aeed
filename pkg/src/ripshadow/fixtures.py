"""Exact-rational generators for the named benchmark configurations.

Regular polygons are replaced by rational points that satisfy the exact
linear symmetries the constructions actually use (antipodality, the hexagon
relation x2 = x1 + x3), and every threshold comparison is audited exactly.
A fixture either realizes its intended edge census with positive slack or
raises AuditError; nothing drifts silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Dict, List, Sequence, Tuple

from .errors import AuditError
from .geometry import Point, dist2, orient, segment_intersection

F = Fraction


@dataclass(frozen=True)
class FixtureReport:
    name: str
    points: Tuple[Point, ...]
    census: Dict[str, int]
    margins: Dict[str, Fraction]  # positive slack of each audited comparison


def rational_sqrt(x: Fraction, bits: int = 32) -> Fraction:
    """Rational approximation of sqrt(x) with error below 2**-bits-ish."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits
    n = isqrt((x.numerator * scale * scale) // x.denominator)
    return F(n, scale)


def _approx(value: float, max_den: int = 10**6) -> Fraction:
    return F(value).limit_denominator(max_den)


def hexagon_points(r: Fraction) -> Tuple[Point, ...]:
    """Six rational points with the exact relations of a regular hexagon.

    x4 = -x1, x5 = -x2, x6 = -x3 and x2 = x1 + x3, so x1 + x3 + x5 = 0
    exactly.  The height s is a rational surrogate for r*sqrt(3)/2; the
    audit then certifies that the Rips complex at scale 1 is exactly the
    octahedron (sides and short diagonals in, long diagonals out).
    """
    r = F(r)
    if not (r * r > F(1, 4) and 3 * r * r <= 1):
        raise ValueError("need 1/4 < r^2 and 3 r^2 <= 1")
    s = rational_sqrt(3 * r * r / 4)
    x1 = (r, F(0))
    x3 = (-r / 2, s)
    x2 = (x1[0] + x3[0], x1[1] + x3[1])
    pts = [x1, x2, x3, (-x1[0], -x1[1]), (-x2[0], -x2[1]), (-x3[0], -x3[1])]
    audit_hexagon(pts)
    return tuple(pts)


def audit_hexagon(pts: Sequence[Point]) -> Dict[str, Fraction]:
    margins: Dict[str, Fraction] = {}
    for i, j in combinations(range(6), 2):
        d2 = dist2(pts[i], pts[j])
        gap = (j - i) % 6 if (j - i) % 6 <= 3 else 6 - (j - i) % 6
        label = f"d2({i},{j})"
        if gap == 3:  # long diagonal: strictly outside
            if d2 <= 1:
                raise AuditError(f"long diagonal {i},{j} has d2={d2} <= 1")
            margins[label] = d2 - 1
        else:  # side or short diagonal: inside (closed)
            if d2 > 1:
                raise AuditError(f"pair {i},{j} has d2={d2} > 1")
            margins[label] = 1 - d2
    return margins


def hexagon_report(r: Fraction = F(11, 20)) -> FixtureReport:
    pts = hexagon_points(r)
    return FixtureReport(
        name="hexagon",
        points=pts,
        census={"vertices": 6, "edges": 12, "triangles": 8, "tetrahedra": 0},
        margins=audit_hexagon(pts),
    )


def _default_cross_polytope_radius(k: int) -> Fraction:
    upper = 1 / (2 * math.cos(math.pi / (2 * k)))
    return _approx((0.5 + upper) / 2, 1000)


def cross_polytope_points(k: int, r: Fraction | None = None) -> Tuple[Point, ...]:
    """2k rational points on a circle whose Rips complex at scale 1 is the
    boundary of the k-dimensional cross-polytope.

    Points come in exact antipodal pairs (p_{i+k} = -p_i); only those k
    pairs exceed unit distance.  Rational points are taken exactly on the
    circle via the tangent half-angle parametrization.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    r = F(r) if r is not None else _default_cross_polytope_radius(k)
    half: List[Point] = []
    for i in range(k):
        t = _approx(math.tan(math.pi * i / (2 * k)))
        den = 1 + t * t
        half.append((r * (1 - t * t) / den, r * 2 * t / den))
    pts = half + [(-x, -y) for x, y in half]
    audit_cross_polytope(pts, k)
    return tuple(pts)


def audit_cross_polytope(pts: Sequence[Point], k: int) -> Dict[str, Fraction]:
    margins: Dict[str, Fraction] = {}
    n = 2 * k
    for i, j in combinations(range(n), 2):
        d2 = dist2(pts[i], pts[j])
        label = f"d2({i},{j})"
        if j - i == k:  # antipodal
            if d2 <= 1:
                raise AuditError(f"antipodal pair {i},{j} has d2={d2} <= 1")
            margins[label] = d2 - 1
        else:
            if d2 > 1:
                raise AuditError(f"pair {i},{j} has d2={d2} > 1")
            margins[label] = 1 - d2
    return margins


def cross_polytope_report(k: int, r: Fraction | None = None) -> FixtureReport:
    pts = cross_polytope_points(k, r)
    n = 2 * k
    return FixtureReport(
        name=f"cross_polytope_{k}",
        points=pts,
        census={"vertices": n, "edges": n * (n - 1) // 2 - k},
        margins=audit_cross_polytope(pts, k),
    )


def four_d_points(
    r: Fraction = F(11, 20), eps4: Fraction = F(1, 100)
) -> Tuple[Point, ...]:
    """Six points in R^4 whose Rips complex is still the octahedron but whose
    planar projection identifies the two big-triangle barycenters.

    Alternate hexagon vertices are lifted by eps4 in the second coordinate
    plane; the audit re-certifies the octahedron census in R^4 and the exact
    coincidence of the {0,2,4} and {1,3,5} barycenters at the origin.
    """
    hex_pts = hexagon_points(r)
    scale = F(eps4) / F(r)
    pts: List[Point] = []
    for i, (x, y) in enumerate(hex_pts):
        if i % 2 == 0:
            pts.append((x, y, scale * x, scale * y))
        else:
            pts.append((x, y, F(0), F(0)))
    audit_four_d(pts)
    return tuple(pts)


def audit_four_d(pts: Sequence[Point]) -> Dict[str, Fraction]:
    margins: Dict[str, Fraction] = {}
    for i, j in combinations(range(6), 2):
        d2 = dist2(pts[i], pts[j])
        gap = (j - i) % 6 if (j - i) % 6 <= 3 else 6 - (j - i) % 6
        label = f"d2({i},{j})"
        if gap == 3:
            if d2 <= 1:
                raise AuditError(f"long diagonal {i},{j} has d2={d2} <= 1 in R^4")
            margins[label] = d2 - 1
        else:
            if d2 > 1:
                raise AuditError(f"pair {i},{j} has d2={d2} > 1 in R^4")
            margins[label] = 1 - d2
    for tri in ((0, 2, 4), (1, 3, 5)):
        sums = tuple(sum(pts[v][c] for v in tri) for c in range(4))
        if any(x != 0 for x in sums):
            raise AuditError(f"barycenter of {tri} is not the origin: {sums}")
    return margins


def four_d_report() -> FixtureReport:
    pts = four_d_points()
    return FixtureReport(
        name="four_d",
        points=pts,
        census={"vertices": 6, "edges": 12, "triangles": 8, "tetrahedra": 0},
        margins=audit_four_d(pts),
    )


def crossing_triangle_fixture():
    """Three long quasi-edges whose images pairwise cross around a central
    triangle: each component is contractible but the shadow has a hole.

    The segments have length 12/5, inside the uncertainty band of the
    interval (1, 3), and are selected explicitly as quasi links; all twelve
    cross-segment endpoint distances are audited to lie strictly inside the
    band, so no forced edge ever joins two segments.  (Unit-length segments
    cannot do this: if two of them crossed, one endpoint of each would land
    within distance 1 of the other, forcing a link.)

    Returns (points, interval, policy) ready for build_quasi.
    """
    from .quasi import EdgePolicy, UncertaintyInterval

    pts = [
        (F(-36, 25), F(0)),
        (F(36, 25), F(0)),
        (F(-33, 50), F(-26, 25)),
        (F(39, 50), F(22, 25)),
        (F(33, 50), F(-26, 25)),
        (F(-39, 50), F(22, 25)),
    ]
    interval = UncertaintyInterval(F(1), F(3))
    policy = EdgePolicy.explicit([(0, 1), (2, 3), (4, 5)])
    audit_crossing_triangle(pts)
    return tuple(pts), interval, policy


def audit_crossing_triangle(pts: Sequence[Point]) -> Dict[str, Fraction]:
    margins: Dict[str, Fraction] = {}
    segments = [(0, 1), (2, 3), (4, 5)]
    for i, j in combinations(range(6), 2):
        d2 = dist2(pts[i], pts[j])
        label = f"d2({i},{j})"
        if not (1 < d2 < 9):
            raise AuditError(f"pair {i},{j} has d2={d2}, not in the open band (1,9)")
        margins[label] = min(d2 - 1, 9 - d2)
    crossings = set()
    for (a, b), (x, y) in combinations(segments, 2):
        res = segment_intersection((pts[a], pts[b]), (pts[x], pts[y]))
        if res.kind != "point":
            raise AuditError(f"segments {(a,b)} and {(x,y)} do not cross: {res.kind}")
        crossings.add(res.point)
    if len(crossings) != 3:
        raise AuditError("crossings are not three distinct points")
    p1, p2, p3 = sorted(crossings)
    if orient(p1, p2, p3) == 0:
        raise AuditError("central triangle is degenerate")
    return margins


def crossing_triangle_report() -> FixtureReport:
    pts, _, _ = crossing_triangle_fixture()
    return FixtureReport(
        name="crossing_triangle",
        points=pts,
        census={"vertices": 6, "quasi_edges": 3, "crossings": 3},
        margins=audit_crossing_triangle(pts),
    )


def annulus_ring_points(n: int = 12, radius: Fraction = F(13, 10)) -> Tuple[Point, ...]:
    """n rational points around a circle, exactly antipodally symmetric,
    whose consecutive gaps are audited short and all other chords long.

    With radius 13/10 and n = 12: adjacent chords fall below 7/10, the
    second chord is about 13/10, so at scales between those the complex is
    the bare 12-cycle and its hole persists well beyond scale 19/10.
    """
    if n % 2 != 0:
        raise ValueError("n must be even for exact antipodal symmetry")
    radius = F(radius)
    half: List[Point] = []
    for i in range(n // 2):
        t = _approx(math.tan(math.pi * i / n))
        den = 1 + t * t
        half.append((radius * (1 - t * t) / den, radius * 2 * t / den))
    pts = half + [(-x, -y) for x, y in half]
    audit_annulus_ring(pts)
    return tuple(pts)


def audit_annulus_ring(pts: Sequence[Point]) -> Dict[str, Fraction]:
    """Adjacent chords <= 7/10 and every other pair >= 9/10 (squared)."""
    margins: Dict[str, Fraction] = {}
    n = len(pts)
    lo2 = F(49, 100)
    hi2 = F(81, 100)
    for i, j in combinations(range(n), 2):
        d2 = dist2(pts[i], pts[j])
        adjacent = (j - i) % n in (1, n - 1)
        label = f"d2({i},{j})"
        if adjacent:
            if d2 > lo2:
                raise AuditError(f"adjacent pair {i},{j} has d2={d2} > 49/100")
            margins[label] = lo2 - d2
        else:
            if d2 < hi2:
                raise AuditError(f"chord {i},{j} has d2={d2} < 81/100")
            margins[label] = d2 - hi2
    return margins
