"""Exact planar shadow complexes: arrangement, faces, coverage, holes, SVG.

The shadow of a planar complex is the image of its 2-skeleton.  We build the
exact arrangement of the projected edges (crossings, T-junctions, collinear
overlaps all split exactly), trace its faces by half-edge walking with exact
angular order, and mark each bounded face covered or uncovered by testing an
exact interior witness against every projected triangle.

Performance shape: input coordinates are rescaled once to integers, and
every arrangement vertex is carried as a reduced integer triple (X, Y, D)
meaning (X/D, Y/D).  All predicates below cross-multiply on integers, so
the construction is exact end to end without rational-object overhead;
fractions only appear at the public boundary.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .complexes import SimplicialComplex
from .errors import ConsistencyError
from .geometry import Point

F = Fraction

Triple = Tuple[int, int, int]  # (X, Y, D): the point (X/D, Y/D), D > 0, reduced


@dataclass(frozen=True)
class ShadowEdge:
    u: int  # shadow vertex ids, u < v
    v: int
    provenance: FrozenSet[int]  # indices of the Rips edges containing this piece


@dataclass(frozen=True)
class ShadowFace:
    edge_ids: Tuple[int, ...]  # boundary walk, face on the left (CCW)
    vertex_ids: Tuple[int, ...]  # walk tails, same order and length
    witness: Point
    covered: bool
    area2: Fraction  # twice the signed walk area (positive for bounded faces)


@dataclass(frozen=True)
class ShadowComplex:
    points: Tuple[Point, ...]  # shadow vertex coordinates
    vertex_provenance: Tuple[Tuple, ...]  # ("original", i) | ("crossing", (e, f))
    edges: Tuple[ShadowEdge, ...]
    faces: Tuple[ShadowFace, ...]  # bounded faces only
    rips_edges: Tuple[Tuple[int, int], ...]  # source edges by index
    triangles: Tuple[Tuple[int, int, int], ...]  # source 2-simplices
    source_coords: Tuple[Point, ...]
    n_components: int  # components of the 1-skeleton, isolated vertices included
    n_unbounded_walks: int  # one per component with edges; the outer face
    provenance: str  # provenance tag of the source complex

    def covered_faces(self) -> Tuple[ShadowFace, ...]:
        return tuple(f for f in self.faces if f.covered)

    def uncovered_faces(self) -> Tuple[ShadowFace, ...]:
        return tuple(f for f in self.faces if not f.covered)


class ShadowError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer-triple predicates
# ---------------------------------------------------------------------------


def _tr_reduce(x: int, y: int, d: int) -> Triple:
    if d < 0:
        x, y, d = -x, -y, -d
    g = math.gcd(math.gcd(abs(x), abs(y)), d)
    if g > 1:
        x, y, d = x // g, y // g, d // g
    return (x, y, d)


def _c1(x1: int, d1: int, x2: int, d2: int) -> int:
    """sign(x1/d1 - x2/d2) for positive denominators."""
    s = x1 * d2 - x2 * d1
    return (s > 0) - (s < 0)


def _tr_orient(p: Triple, q: Triple, r: Triple) -> int:
    # u = q - p over den dp*dq, v = r - p over den dp*dr; cross(u, v) then
    # has the single positive denominator dp*dq*dp*dr on both products
    ux = q[0] * p[2] - p[0] * q[2]
    uy = q[1] * p[2] - p[1] * q[2]
    vx = r[0] * p[2] - p[0] * r[2]
    vy = r[1] * p[2] - p[1] * r[2]
    s = ux * vy - uy * vx
    return (s > 0) - (s < 0)


def _tr_on_segment(x: Triple, a: Triple, b: Triple) -> bool:
    if _c1(a[0], a[2], b[0], b[2]) <= 0:
        lo, hi = a, b
    else:
        lo, hi = b, a
    if _c1(x[0], x[2], lo[0], lo[2]) < 0 or _c1(x[0], x[2], hi[0], hi[2]) > 0:
        return False
    if _c1(a[1], a[2], b[1], b[2]) <= 0:
        lo, hi = a, b
    else:
        lo, hi = b, a
    if _c1(x[1], x[2], lo[1], lo[2]) < 0 or _c1(x[1], x[2], hi[1], hi[2]) > 0:
        return False
    return _tr_orient(a, b, x) == 0


def _tr_point_in_triangle(x: Triple, a: Triple, b: Triple, c: Triple) -> str:
    w = _tr_orient(a, b, c)
    if w == 0:
        if (
            _tr_on_segment(x, a, b)
            or _tr_on_segment(x, b, c)
            or _tr_on_segment(x, a, c)
        ):
            return "boundary"
        return "outside"
    s1 = _tr_orient(a, b, x) * w
    s2 = _tr_orient(b, c, x) * w
    s3 = _tr_orient(c, a, x) * w
    if s1 < 0 or s2 < 0 or s3 < 0:
        return "outside"
    if s1 == 0 or s2 == 0 or s3 == 0:
        return "boundary"
    return "inside"


def _int_orient(p, q, r) -> int:
    s = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (s > 0) - (s < 0)


def _int_on_segment(x, a, b) -> bool:
    if not (min(a[0], b[0]) <= x[0] <= max(a[0], b[0])):
        return False
    if not (min(a[1], b[1]) <= x[1] <= max(a[1], b[1])):
        return False
    return _int_orient(a, b, x) == 0


def _scale_points(coords: Sequence[Point]) -> Tuple[List[Tuple[int, int]], int]:
    """Common-denominator rescale so the arrangement runs on integers."""
    lcm = 1
    for p in coords:
        for c in p:
            d = F(c).denominator
            lcm = lcm * d // math.gcd(lcm, d)
    return [(int(F(p[0]) * lcm), int(F(p[1]) * lcm)) for p in coords], lcm


def _dir_cmp(d1, d2) -> int:
    """Exact CCW comparison of nonzero integer direction vectors."""
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return -1 if h1 < h2 else 1
    crossv = d1[0] * d2[1] - d1[1] * d2[0]
    return (crossv < 0) - (crossv > 0)


def build_shadow(c: SimplicialComplex) -> ShadowComplex:
    """Exact shadow complex of a planar complex with materialized 2-skeleton."""
    if c.coords is None or any(len(p) != 2 for p in c.coords):
        raise ShadowError("build_shadow needs 2-dimensional coordinates")
    if c.dim_cap < 2:
        raise ShadowError("2-skeleton must be materialized (dim_cap >= 2)")
    coords, scale = _scale_points(c.coords)
    rips_edges = tuple((i, j) for i, j in c.edges)
    for i, j in rips_edges:
        if coords[i] == coords[j]:
            raise ShadowError(f"degenerate zero-length edge {(i, j)}")

    # -- split every projected edge at crossings, junctions, overlaps --
    splits: List[Set[Triple]] = [
        {(*coords[i], 1), (*coords[j], 1)} for i, j in rips_edges
    ]
    crossing_pairs: Dict[Triple, Tuple[int, int]] = {}
    ne = len(rips_edges)
    for a in range(ne):
        pa, pb = coords[rips_edges[a][0]], coords[rips_edges[a][1]]
        for b in range(a + 1, ne):
            px, py = coords[rips_edges[b][0]], coords[rips_edges[b][1]]
            o1 = _int_orient(pa, pb, px)
            o2 = _int_orient(pa, pb, py)
            o3 = _int_orient(px, py, pa)
            o4 = _int_orient(px, py, pb)
            if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
                # collinear: overlap endpoints are original endpoints
                d = (pb[0] - pa[0], pb[1] - pa[1])
                key = lambda p: p[0] * d[0] + p[1] * d[1]
                lo_s, hi_s = sorted((pa, pb), key=key)
                lo_t, hi_t = sorted((px, py), key=key)
                lo = max(lo_s, lo_t, key=key)
                hi = min(hi_s, hi_t, key=key)
                if key(lo) > key(hi):
                    continue
                pts = {(*lo, 1), (*hi, 1)}
                splits[a].update(pts)
                splits[b].update(pts)
                continue
            if o1 * o2 > 0 or o3 * o4 > 0:
                continue
            r = (pb[0] - pa[0], pb[1] - pa[1])
            s = (py[0] - px[0], py[1] - px[1])
            denom = r[0] * s[1] - r[1] * s[0]
            if denom == 0:
                # parallel non-collinear with weak orientation signs: no meet
                continue
            tn = (px[0] - pa[0]) * s[1] - (px[1] - pa[1]) * s[0]
            # meeting point must lie in both segments; the sign tests above
            # already guarantee it for non-parallel segments
            pt = _tr_reduce(
                pa[0] * denom + tn * r[0], pa[1] * denom + tn * r[1], denom
            )
            splits[a].add(pt)
            splits[b].add(pt)
            if pt[2] != 1 or (pt[0], pt[1]) not in (pa, pb, px, py):
                crossing_pairs.setdefault(pt, (a, b))
    for v, pv in enumerate(coords):
        tv = (*pv, 1)
        for a, (i, j) in enumerate(rips_edges):
            if v not in (i, j) and _int_on_segment(pv, coords[i], coords[j]):
                splits[a].add(tv)

    # -- shadow vertices: deterministic ids in lexicographic point order --
    all_points: Set[Triple] = {(*p, 1) for p in coords}
    for s in splits:
        all_points.update(s)
    spoints: List[Triple] = sorted(
        all_points, key=lambda t: (F(t[0], t[2]), F(t[1], t[2]))
    )
    pid = {p: idx for idx, p in enumerate(spoints)}

    provenance_of_vertex: Dict[int, Tuple] = {}
    for v, pv in enumerate(coords):
        provenance_of_vertex.setdefault(pid[(*pv, 1)], ("original", v))
    for p, pair in crossing_pairs.items():
        provenance_of_vertex.setdefault(pid[p], ("crossing", pair))
    missing = set(range(len(spoints))) - set(provenance_of_vertex)
    if missing:
        raise ConsistencyError(f"shadow vertices without provenance: {missing}")

    # -- shadow edges with multi-edge provenance --
    edge_prov: Dict[Tuple[int, int], Set[int]] = {}
    for a, (i, j) in enumerate(rips_edges):
        d = (coords[j][0] - coords[i][0], coords[j][1] - coords[i][1])
        ax, ay = coords[i]
        pts = sorted(
            splits[a],
            key=lambda t: F((t[0] - ax * t[2]) * d[0] + (t[1] - ay * t[2]) * d[1], t[2]),
        )
        for p, q in zip(pts, pts[1:]):
            key = (pid[p], pid[q]) if pid[p] < pid[q] else (pid[q], pid[p])
            edge_prov.setdefault(key, set()).add(a)
    sedges = tuple(
        ShadowEdge(u=u, v=v, provenance=frozenset(edge_prov[(u, v)]))
        for u, v in sorted(edge_prov)
    )

    # -- connected components of the 1-skeleton (isolated vertices count) --
    parent = list(range(len(spoints)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in sedges:
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
    n_components = len({find(i) for i in range(len(spoints))})

    # -- half-edge face tracing with exact angular order --
    outgoing: Dict[int, List[int]] = {}
    for eid, e in enumerate(sedges):
        outgoing.setdefault(e.u, []).append(eid)
        outgoing.setdefault(e.v, []).append(eid)

    def dart_dir(eid: int, tail: int) -> Tuple[int, int]:
        e = sedges[eid]
        head = e.v if tail == e.u else e.u
        t, h = spoints[tail], spoints[head]
        return (h[0] * t[2] - t[0] * h[2], h[1] * t[2] - t[1] * h[2])

    order_at: Dict[int, List[int]] = {}
    pos_at: Dict[Tuple[int, int], int] = {}
    for vtx, eids in outgoing.items():
        ordered = sorted(
            eids,
            key=functools.cmp_to_key(
                lambda e1, e2: _dir_cmp(dart_dir(e1, vtx), dart_dir(e2, vtx))
            ),
        )
        order_at[vtx] = ordered
        for k, eid in enumerate(ordered):
            pos_at[(vtx, eid)] = k

    def next_dart(eid: int, tail: int) -> Tuple[int, int]:
        e = sedges[eid]
        head = e.v if tail == e.u else e.u
        ring = order_at[head]
        k = pos_at[(head, eid)]
        nxt = ring[(k - 1) % len(ring)]  # CCW-predecessor of the reversal
        return nxt, head

    walks: List[Tuple[Tuple[int, ...], Tuple[int, ...], Fraction]] = []
    seen: Set[Tuple[int, int]] = set()
    for eid, e in enumerate(sedges):
        for tail in (e.u, e.v):
            if (eid, tail) in seen:
                continue
            cyc_edges: List[int] = []
            cyc_tails: List[int] = []
            cur = (eid, tail)
            while cur not in seen:
                seen.add(cur)
                cyc_edges.append(cur[0])
                cyc_tails.append(cur[1])
                cur = next_dart(*cur)
            area2 = F(0)
            for idx in range(len(cyc_tails)):
                p = spoints[cyc_tails[idx]]
                q = spoints[cyc_tails[(idx + 1) % len(cyc_tails)]]
                area2 += F(p[0] * q[1] - q[0] * p[1], p[2] * q[2])
            walks.append((tuple(cyc_edges), tuple(cyc_tails), area2))

    positive = [w for w in walks if w[2] > 0]
    n_unbounded = len(walks) - len(positive)
    expected = len(edge_prov) - len(spoints) + n_components
    if len(positive) != expected:
        raise ConsistencyError(
            f"face tracer found {len(positive)} bounded walks, expected {expected}"
        )

    # -- witnesses and coverage --
    # Candidates shrink toward a boundary-edge midpoint on the face side;
    # each candidate is itself an exact integer triple.
    triangles = tuple(c.k_simplices(2))
    tri_tr = [tuple((*coords[v], 1) for v in t) for t in triangles]

    def _winding(tails: Tuple[int, ...], cand: Triple) -> int:
        total = 0
        npts = len(tails)
        for idx in range(npts):
            p = spoints[tails[idx]]
            q = spoints[tails[(idx + 1) % npts]]
            cpx = _c1(p[0], p[2], cand[0], cand[2])
            cqx = _c1(q[0], q[2], cand[0], cand[2])
            if cpx <= 0 and cqx > 0:  # rightward crossing of the vertical line
                if _tr_orient(p, q, cand) < 0:  # candidate below the chord
                    total -= 1
            elif cqx <= 0 and cpx > 0:  # leftward
                if _tr_orient(p, q, cand) > 0:
                    total += 1
        return total

    def witness_for(walk_idx: int, from_end: bool) -> Triple:
        cyc_edges, cyc_tails, area2 = positive[walk_idx]
        k = -1 if from_end else 0
        eid, tail = cyc_edges[k], cyc_tails[k]
        e = sedges[eid]
        head = e.v if tail == e.u else e.u
        t, h = spoints[tail], spoints[head]
        dirv = (h[0] * t[2] - t[0] * h[2], h[1] * t[2] - t[1] * h[2])
        normal = (-dirv[1], dirv[0])  # left of the dart
        dd = t[2] * h[2]
        midx, midy = t[0] * h[2] + h[0] * t[2], t[1] * h[2] + h[1] * t[2]
        s_shift = 2
        for _ in range(200):
            cand = _tr_reduce(
                midx * s_shift + normal[0],
                midy * s_shift + normal[1],
                2 * dd * s_shift,
            )
            s_shift *= 4
            if cand in pid:
                continue
            if any(
                _tr_on_segment(cand, spoints[se.u], spoints[se.v]) for se in sedges
            ):
                continue
            if _winding(cyc_tails, cand) == 0:
                continue
            ok = True
            for other in range(len(positive)):
                if other == walk_idx:
                    continue
                if positive[other][2] <= area2 and _winding(
                    positive[other][1], cand
                ) != 0:
                    ok = False
                    break
            if ok:
                return cand
        raise ConsistencyError("no interior witness found for a bounded face")

    def covered_at(cand: Triple) -> bool:
        return any(
            _tr_point_in_triangle(cand, *tp) != "outside" for tp in tri_tr
        )

    faces: List[ShadowFace] = []
    for idx, (cyc_edges, cyc_tails, area2) in enumerate(positive):
        w1 = witness_for(idx, from_end=False)
        w2 = witness_for(idx, from_end=True)
        cov1 = covered_at(w1)
        cov2 = covered_at(w2)
        if cov1 != cov2:
            raise ConsistencyError(
                "coverage flag depends on the witness; arrangement is inconsistent"
            )
        faces.append(
            ShadowFace(
                edge_ids=cyc_edges,
                vertex_ids=cyc_tails,
                witness=(F(w1[0], w1[2] * scale), F(w1[1], w1[2] * scale)),
                covered=cov1,
                area2=area2 / (scale * scale),
            )
        )
    faces.sort(key=lambda f: f.witness)

    return ShadowComplex(
        points=tuple(
            (F(p[0], p[2] * scale), F(p[1], p[2] * scale)) for p in spoints
        ),
        vertex_provenance=tuple(
            provenance_of_vertex[i] for i in range(len(spoints))
        ),
        edges=sedges,
        faces=tuple(faces),
        rips_edges=rips_edges,
        triangles=triangles,
        source_coords=tuple(c.coords),
        n_components=n_components,
        n_unbounded_walks=n_unbounded,
        provenance=c.provenance,
    )


def shadow_betti(s: ShadowComplex) -> Tuple[int, int]:
    """(b0, b1) of the shadow: components of the 1-skeleton, and holes.

    b1 comes from the Euler formula b0 - V + E - F_cov and is cross-checked
    against the count of uncovered bounded faces; a mismatch would mean the
    arrangement itself is broken, so it raises.
    """
    b0 = s.n_components
    f_cov = sum(1 for f in s.faces if f.covered)
    b1 = b0 - len(s.points) + len(s.edges) - f_cov
    uncovered = sum(1 for f in s.faces if not f.covered)
    if b1 != uncovered:
        raise ConsistencyError(
            f"Euler b1={b1} disagrees with uncovered face count {uncovered}"
        )
    return (b0, b1)


def hole_anchors(s: ShadowComplex) -> List[Point]:
    """One exact interior point per uncovered bounded face, deterministic."""
    return sorted(f.witness for f in s.faces if not f.covered)


def _svg_num(x) -> str:
    return f"{float(x):.12g}"


def render_svg(
    s: ShadowComplex,
    overlay: Optional[Sequence[Point]] = None,
) -> str:
    """Deterministic SVG 1.1 of the shadow: covered faces filled, edges
    stroked, uncovered faces hatched, hole anchors marked, optional overlay.

    All geometry was decided exactly upstream; coordinates are emitted as
    12-significant-digit decimals of the exact rationals.
    """
    xs = [p[0] for p in s.points] or [F(0)]
    ys = [p[1] for p in s.points] or [F(0)]
    if overlay:
        xs += [p[0] for p in overlay]
        ys += [p[1] for p in overlay]
    pad = max(max(xs) - min(xs), max(ys) - min(ys), F(1)) / 10
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - x0 + pad, max(ys) - y0 + pad

    lines: List[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_svg_num(x0)} {_svg_num(-y0 - h)} {_svg_num(w)} {_svg_num(h)}">'
    )
    lines.append(
        "<defs><pattern id=\"hatch\" width=\"0.08\" height=\"0.08\" "
        "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
        "<rect width=\"0.08\" height=\"0.08\" fill=\"#ffffff\"/>"
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0.08\" stroke=\"#b03030\" "
        "stroke-width=\"0.02\"/></pattern></defs>"
    )
    lines.append('<g transform="scale(1,-1)">')
    for f in s.faces:
        pts = " ".join(
            f"{_svg_num(s.points[v][0])},{_svg_num(s.points[v][1])}"
            for v in f.vertex_ids
        )
        if f.covered:
            lines.append(
                f'<polygon class="face-covered" points="{pts}" '
                f'fill="#9ec9e8" stroke="none"/>'
            )
        else:
            lines.append(
                f'<polygon class="face-uncovered" points="{pts}" '
                f'fill="url(#hatch)" stroke="none"/>'
            )
    for e in s.edges:
        p, q = s.points[e.u], s.points[e.v]
        lines.append(
            f'<line class="edge" x1="{_svg_num(p[0])}" y1="{_svg_num(p[1])}" '
            f'x2="{_svg_num(q[0])}" y2="{_svg_num(q[1])}" '
            f'stroke="#1a1a1a" stroke-width="0.02"/>'
        )
    for a in hole_anchors(s):
        lines.append(
            f'<circle class="anchor" cx="{_svg_num(a[0])}" cy="{_svg_num(a[1])}" '
            f'r="0.05" fill="#b03030"/>'
        )
    if overlay:
        pts = " ".join(f"{_svg_num(p[0])},{_svg_num(p[1])}" for p in overlay)
        lines.append(
            f'<polyline class="overlay" points="{pts}" fill="none" '
            f'stroke="#2a7a2a" stroke-width="0.035"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
