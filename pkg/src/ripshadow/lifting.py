"""Chaining sequences, shadow-path lifting, and free-group loop words.

A loop in a finite planar set is null-homotopic iff its signed crossing
word against one vertical ray per hole reduces to the identity; that fact
(inclusion into the punctured plane is a homotopy equivalence for such
sets) turns the fundamental-group isomorphism into a decision procedure.
Rays are perturbed symbolically: ties at a ray's x-coordinate resolve as if
each ray were nudged by its own infinitesimal, ordered by anchor index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import SimplicialComplex, induced_span
from .geometry import Point, dot, on_segment, segment_intersection, sub
from .shadow import ShadowComplex, hole_anchors

F = Fraction


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class RipsWalk:
    """A vertex walk whose consecutive pairs are edges of a complex."""

    vertices: Tuple[int, ...]

    @property
    def closed(self) -> bool:
        return len(self.vertices) > 0 and self.vertices[0] == self.vertices[-1]

    def is_valid(self, c: SimplicialComplex) -> bool:
        edges = set(c.edges)
        return all(
            a != b and (min(a, b), max(a, b)) in edges
            for a, b in zip(self.vertices, self.vertices[1:])
        )


Word = Tuple[int, ...]  # letters +i / -i, 1-based anchor index


def free_reduce(letters: Sequence[int]) -> Word:
    out: List[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def word_concat(a: Sequence[int], b: Sequence[int]) -> Word:
    return free_reduce(tuple(a) + tuple(b))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def abelianization(word: Sequence[int], n_letters: int) -> Tuple[int, ...]:
    counts = [0] * n_letters
    for letter in word:
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(counts)


@dataclass(frozen=True)
class HoleWord:
    """Freely reduced word over the hole-anchor alphabet."""

    letters: Word

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            f"a{abs(l)}" if l > 0 else f"a{abs(l)}^-1" for l in self.letters
        )


def loop_word(polyline: Sequence[Point], anchors: Sequence[Point]) -> HoleWord:
    """Signed crossing word of a closed polyline against upward anchor rays.

    Letters appear in traversal order; crossings of a single segment are
    ordered along it, with the symbolic per-anchor nudge breaking exact
    ties.  The result is freely reduced.
    """
    if len(set(map(tuple, anchors))) != len(anchors):
        raise ValueError("anchors must be pairwise distinct")
    pts = list(polyline)
    if pts and pts[0] != pts[-1]:
        pts.append(pts[0])
    letters: List[int] = []
    for p, q in zip(pts, pts[1:]):
        if p == q:
            continue
        rightward = q[0] > p[0]
        seg_hits: List[Tuple[Fraction, int, int]] = []
        for idx, a in enumerate(anchors):
            if on_segment(a, p, q):
                raise ValueError("polyline passes through an anchor")
            ax, ay = a[0], a[1]
            if p[0] <= ax < q[0]:
                sign = -1
            elif q[0] <= ax < p[0]:
                sign = 1
            else:
                continue
            t = F(ax - p[0], 1) / (q[0] - p[0])
            y_at = p[1] + (q[1] - p[1]) * t
            if y_at > ay:
                tie = idx if rightward else -idx
                seg_hits.append((t, tie, sign * (idx + 1)))
        for _, _, letter in sorted(seg_hits):
            letters.append(letter)
    return HoleWord(letters=free_reduce(letters))


def chaining_sequence(
    ab: Tuple[int, int], cd: Tuple[int, int], c: SimplicialComplex
) -> RipsWalk:
    """Walk A,B,...,C,D inside the span of {A,B,C,D}: the edge AB, a
    shortest B-to-C path in the span's 1-skeleton, then the edge CD.

    Requires the projections of the two edges to intersect; breadth-first
    search ties break toward smaller vertex index.
    """
    a, b = ab
    cc, d = cd
    edges = set(c.edges)
    for e in (ab, cd):
        if (min(e), max(e)) not in edges:
            raise LiftError(f"{e} is not an edge of the complex")
    if c.coords is not None:
        res = segment_intersection(
            (c.coords[a], c.coords[b]), (c.coords[cc], c.coords[d])
        )
        if res.kind == "disjoint":
            raise LiftError("projections of the two edges are disjoint")
    span = induced_span(c, {a, b, cc, d})
    adj: Dict[int, List[int]] = {v: [] for v in span.vertices}
    for i, j in span.edges:
        adj[i].append(j)
        adj[j].append(i)
    parent: Dict[int, Optional[int]] = {b: None}
    queue = [b]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if cc not in parent:
        raise LiftError(
            "no path between the edges inside their span; for a genuine "
            "planar Rips complex with intersecting images this cannot happen"
        )
    path = [cc]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()  # b ... cc
    return RipsWalk(vertices=(a,) + tuple(path) + (d,))


def _oriented_covering_edge(
    s: ShadowComplex, shadow_edge_id: int, tail: int, head: int, choice: str
) -> Tuple[int, int]:
    """Pick the covering Rips edge of a shadow edge and orient it along the
    traversal direction tail -> head (shadow vertex ids)."""
    prov = sorted(s.edges[shadow_edge_id].provenance)
    eidx = prov[0] if choice == "min" else prov[-1]
    i, j = s.rips_edges[eidx]
    d_edge = sub(s.source_coords[j], s.source_coords[i])
    d_path = sub(s.points[head], s.points[tail])
    return (i, j) if dot(d_edge, d_path) > 0 else (j, i)


def _directed_vertices(
    s: ShadowComplex, path: Sequence[int]
) -> List[Tuple[int, int]]:
    """Orient a shadow-edge id path into (tail, head) shadow vertex pairs."""
    if not path:
        raise LiftError("empty shadow path")
    ends = [(s.edges[e].u, s.edges[e].v) for e in path]
    if len(path) == 1:
        return [ends[0]]
    out: List[Tuple[int, int]] = []
    first_shared = set(ends[0]) & set(ends[1])
    if not first_shared:
        raise LiftError("broken shadow path: consecutive edges share no vertex")
    # orient the first edge so its head is shared with the second edge
    u, v = ends[0]
    head0 = v if v in first_shared else u
    tail0 = u if head0 == v else v
    out.append((tail0, head0))
    cur = head0
    for k in range(1, len(path)):
        u, v = ends[k]
        if cur == u:
            out.append((u, v))
            cur = v
        elif cur == v:
            out.append((v, u))
            cur = u
        else:
            raise LiftError("broken shadow path: consecutive edges share no vertex")
    return out


def lift_path(
    path: Sequence[int],
    s: ShadowComplex,
    c: SimplicialComplex,
    edge_choice: str = "min",
) -> RipsWalk:
    """Lift a shadow-edge path (ids into s.edges) to a Rips walk.

    One covering Rips edge is chosen per shadow edge (smallest provenance
    index by default, largest with edge_choice="max"), oriented along the
    traversal; consecutive distinct covering edges are glued by chaining
    sequences.  The walk starts with the first covering edge and ends with
    the last.
    """
    if edge_choice not in ("min", "max"):
        raise ValueError("edge_choice must be 'min' or 'max'")
    directed = _directed_vertices(s, path)
    covering: List[Tuple[int, int]] = []
    for eid, (tail, head) in zip(path, directed):
        if not s.edges[eid].provenance:
            raise LiftError(f"shadow edge {eid} has empty provenance")
        ce = _oriented_covering_edge(s, eid, tail, head, edge_choice)
        if not covering or covering[-1] != ce:
            covering.append(ce)
    walk = list(covering[0])
    for prev, nxt in zip(covering, covering[1:]):
        seq = chaining_sequence(prev, nxt, c).vertices
        walk.extend(seq[2:])
    return RipsWalk(vertices=tuple(walk))


def lift_loop(
    path: Sequence[int],
    s: ShadowComplex,
    c: SimplicialComplex,
    edge_choice: str = "min",
) -> RipsWalk:
    """Lift a closed shadow-edge path to a closed Rips walk.

    The final chaining sequence returns to the first covering edge; its last
    vertex duplicates the walk's start edge, so the walk closes at the first
    covering edge's tail.
    """
    directed = _directed_vertices(s, path)
    if directed[0][0] != directed[-1][1]:
        raise LiftError("shadow path is not closed")
    open_walk = lift_path(path, s, c, edge_choice)
    first = _oriented_covering_edge(
        s, path[0], directed[0][0], directed[0][1], edge_choice
    )
    last = _oriented_covering_edge(
        s, path[-1], directed[-1][0], directed[-1][1], edge_choice
    )
    verts = list(open_walk.vertices)
    if first != last:
        seq = chaining_sequence(last, first, c).vertices
        verts.extend(seq[2:])
    # the walk now ends with the oriented start edge; drop its head to close
    if verts[-2:] != list(first):
        raise LiftError("loop closure failed to reproduce the start edge")
    verts = verts[:-1]
    return RipsWalk(vertices=tuple(verts))


def walk_word(walk: RipsWalk, c: SimplicialComplex, s: ShadowComplex) -> HoleWord:
    """Hole word of a closed Rips walk's projection."""
    if not walk.closed:
        raise LiftError("walk must be closed")
    polyline = [c.coords[v] for v in walk.vertices]
    return loop_word(polyline, hole_anchors(s))


def is_contractible(
    loop: RipsWalk, c: SimplicialComplex, s: ShadowComplex
) -> bool:
    """Is a closed Rips walk null-homotopic in its planar Rips complex?

    True iff the projected loop's hole word is the identity.  Only defined
    for genuine Rips inputs; quasi-Rips complexes are refused because the
    shadow no longer certifies the fundamental group.
    """
    if c.provenance != "rips":
        raise LiftError(
            "contractibility via the shadow requires a genuine planar Rips "
            f"complex; got provenance {c.provenance!r}"
        )
    if not loop.closed:
        raise LiftError("loop must be closed")
    if not loop.is_valid(c):
        raise LiftError("loop is not a walk in the complex")
    return walk_word(loop, c, s).is_identity


def is_null_homologous(
    loop: RipsWalk, c: SimplicialComplex, s: ShadowComplex
) -> bool:
    """Weaker necessary condition: the abelianized hole word vanishes.

    Commutator loops are null-homologous without being contractible; use
    is_contractible for the full decision.
    """
    if not loop.closed:
        raise LiftError("loop must be closed")
    anchors = hole_anchors(s)
    word = loop_word([c.coords[v] for v in loop.vertices], anchors)
    return all(x == 0 for x in abelianization(word.letters, len(anchors)))
