"""Exact rational geometry kernel: points, predicates, segment intersection.

All coordinates are `fractions.Fraction` (or plain ints, which Fraction
arithmetic absorbs), so every predicate below is decided exactly.  Nothing
in this module ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

Scalar = Fraction  # or int; the two mix freely
Point = Tuple[Scalar, ...]
Segment = Tuple[Point, Point]


class DimensionMismatch(ValueError):
    pass


def make_point(coords: Iterable) -> Point:
    """Build a point of exact rationals from strings, ints, or Fractions.

    Strings may be either rationals ("11/20") or decimals ("0.55"); both
    parse exactly.
    """
    return tuple(Fraction(c) for c in coords)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def dist2(p: Point, q: Point) -> Scalar:
    """Exact squared Euclidean distance."""
    if len(p) != len(q):
        raise DimensionMismatch(f"dimension mismatch: {len(p)} vs {len(q)}")
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def cross(u: Point, v: Point) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> Scalar:
    return sum(a * b for a, b in zip(u, v))


def _sign(x: Scalar) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q-p, r-p): +1 counterclockwise, 0 collinear, -1 clockwise."""
    return _sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def on_segment(x: Point, a: Point, b: Point) -> bool:
    """True iff x lies on the closed segment [a, b] (2-D, exact)."""
    lo0, hi0 = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
    if not lo0 <= x[0] <= hi0:
        return False
    lo1, hi1 = (a[1], b[1]) if a[1] <= b[1] else (b[1], a[1])
    if not lo1 <= x[1] <= hi1:
        return False
    return orient(a, b, x) == 0


@dataclass(frozen=True)
class SegmentIntersection:
    """Exact classification of how two segments meet.

    kind is one of "disjoint", "point", "shared_endpoint", "overlap".
    `point` is set for point/shared_endpoint, `segment` for overlap.
    """

    kind: str
    point: Optional[Point] = None
    segment: Optional[Segment] = None


def _line_meet(a: Point, b: Point, x: Point, y: Point) -> Point:
    """Intersection point of the supporting lines; caller guarantees non-parallel."""
    r = sub(b, a)
    s = sub(y, x)
    denom = cross(r, s)
    t = Fraction(cross(sub(x, a), s), 1) / denom
    return (a[0] + t * r[0], a[1] + t * r[1])


def segment_intersection(s: Segment, t: Segment) -> SegmentIntersection:
    """Classify the intersection of two 2-D segments, exactly.

    shared_endpoint is reported only when the meeting point is an endpoint
    of both segments; a T-junction (endpoint of one interior to the other)
    is an ordinary "point".  Collinear overlap is reported with its exact
    overlap segment, never merged into one of the other cases.
    """
    a, b = s
    x, y = t
    o1 = orient(a, b, x)
    o2 = orient(a, b, y)
    o3 = orient(x, y, a)
    o4 = orient(x, y, b)

    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # collinear: order along the line by a dot product with the direction
        d = sub(b, a)
        if d == (0, 0):
            raise ValueError("degenerate segment")
        pts = sorted({a, b, x, y}, key=lambda p: (dot(p, d), p))
        lo_s, hi_s = sorted((a, b), key=lambda p: (dot(p, d), p))
        lo_t, hi_t = sorted((x, y), key=lambda p: (dot(p, d), p))
        lo = max(lo_s, lo_t, key=lambda p: (dot(p, d), p))
        hi = min(hi_s, hi_t, key=lambda p: (dot(p, d), p))
        if dot(lo, d) > dot(hi, d):
            return SegmentIntersection("disjoint")
        if lo == hi:
            return SegmentIntersection("shared_endpoint", point=lo)
        del pts
        return SegmentIntersection("overlap", segment=(lo, hi))

    if o1 * o2 > 0 or o3 * o4 > 0:
        return SegmentIntersection("disjoint")

    # transversal (possibly at endpoints); supporting lines are not parallel
    p = _line_meet(a, b, x, y)
    if not (on_segment(p, a, b) and on_segment(p, x, y)):
        return SegmentIntersection("disjoint")
    if p in (a, b) and p in (x, y):
        return SegmentIntersection("shared_endpoint", point=p)
    return SegmentIntersection("point", point=p)


def point_in_triangle(x: Point, a: Point, b: Point, c: Point) -> str:
    """Classify x against triangle abc: "inside", "boundary", or "outside".

    A degenerate (collinear) triangle is treated as the union of its edges:
    the answer is "boundary" on it and "outside" elsewhere.
    """
    w = orient(a, b, c)
    if w == 0:
        if on_segment(x, a, b) or on_segment(x, b, c) or on_segment(x, a, c):
            return "boundary"
        return "outside"
    s1 = orient(a, b, x) * w
    s2 = orient(b, c, x) * w
    s3 = orient(c, a, x) * w
    if s1 < 0 or s2 < 0 or s3 < 0:
        return "outside"
    if s1 == 0 or s2 == 0 or s3 == 0:
        return "boundary"
    return "inside"


def _segment_hits_triangle(p: Point, q: Point, a: Point, b: Point, c: Point) -> bool:
    if point_in_triangle(p, a, b, c) != "outside":
        return True
    if point_in_triangle(q, a, b, c) != "outside":
        return True
    for e in ((a, b), (b, c), (a, c)):
        if segment_intersection((p, q), e).kind != "disjoint":
            return True
    return False


def winding_number(polyline: Sequence[Point], point: Point) -> int:
    """Winding number of a closed polyline around a point, exactly.

    Crossings are counted against the upward vertical ray from the point,
    with ties broken as if the ray were nudged infinitesimally to +x
    (half-open rule), so vertices on the ray need no special casing.
    Raises if the polyline passes through the point.
    """
    ax, ay = point[0], point[1]
    total = 0
    n = len(polyline)
    closed = polyline[0] == polyline[-1]
    m = n - 1 if closed else n
    for idx in range(m):
        p = polyline[idx]
        q = polyline[(idx + 1) % n]
        if p == q:
            continue
        if on_segment(point, p, q):
            raise ValueError("point lies on the polyline")
        if p[0] <= ax < q[0]:
            sign = -1
        elif q[0] <= ax < p[0]:
            sign = 1
        else:
            continue
        y_at = p[1] + (q[1] - p[1]) * Fraction(ax - p[0], 1) / (q[0] - p[0])
        if y_at > ay:
            total += sign
    return total


def cells_intersect(cell_a: Sequence[Point], cell_b: Sequence[Point]) -> bool:
    """Do the convex hulls of two simplex vertex lists (0/1/2-dim) meet?

    Cells are given by 1, 2, or 3 points in the plane.  Exact.
    """
    if len(cell_a) > len(cell_b):
        cell_a, cell_b = cell_b, cell_a
    na, nb = len(cell_a), len(cell_b)
    if na == 1 and nb == 1:
        return cell_a[0] == cell_b[0]
    if na == 1 and nb == 2:
        return on_segment(cell_a[0], *cell_b)
    if na == 1 and nb == 3:
        return point_in_triangle(cell_a[0], *cell_b) != "outside"
    if na == 2 and nb == 2:
        return segment_intersection(tuple(cell_a), tuple(cell_b)).kind != "disjoint"
    if na == 2 and nb == 3:
        return _segment_hits_triangle(cell_a[0], cell_a[1], *cell_b)
    if na == 3 and nb == 3:
        for x in cell_a:
            if point_in_triangle(x, *cell_b) != "outside":
                return True
        for x in cell_b:
            if point_in_triangle(x, *cell_a) != "outside":
                return True
        ea = [(cell_a[0], cell_a[1]), (cell_a[1], cell_a[2]), (cell_a[0], cell_a[2])]
        eb = [(cell_b[0], cell_b[1]), (cell_b[1], cell_b[2]), (cell_b[0], cell_b[2])]
        return any(
            segment_intersection(u, v).kind != "disjoint" for u in ea for v in eb
        )
    raise ValueError("cells must have 1, 2, or 3 vertices")
