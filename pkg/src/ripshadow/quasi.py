"""Quasi-Rips complexes and the arbitrary-group pipeline.

A quasi-Rips complex forces links below eps, forbids them at eps' and
beyond, and lets a policy decide inside the open band.  The pipeline turns
a finite group presentation into a properly 3-colored 2-complex, blows it
up so gluings become joins, and embeds the blowup in the plane with one
small ball per color; the quasi-Rips complex of that embedding carries the
group's H1 (plus free rank), which integer Smith normal form certifies.

H1 of an embedded quasi complex is computed relative to the three color
cliques: each clique spans a full simplex, so collapsing them is a homotopy
equivalence up to a known free-rank shift, and the relative chain complex
only involves bichromatic cells.  This keeps the computation exact while
avoiding the cubically many monochromatic triangles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .complexes import (
    QuasiInfo,
    SimplicialComplex,
    VertexColoring,
    build_rips,
    check_distinct_points,
    explicit_complex,
    flag_complex,
)
from .errors import AuditError
from .fixtures import rational_sqrt
from .geometry import Point, dist2
from .homology import (
    SmithDecomposition,
    betti_numbers,
    induced_h1_rank,
    integer_h1,
    snf_diagonal,
)

F = Fraction


@dataclass(frozen=True)
class UncertaintyInterval:
    """Open band (eps, eps') of unreliable links: forced below, banned above."""

    eps: Fraction
    eps_prime: Fraction

    def __post_init__(self):
        if not (0 < self.eps < self.eps_prime):
            raise ValueError("need 0 < eps < eps'")

    def classify(self, d2: Fraction) -> str:
        if d2 <= self.eps * self.eps:
            return "forced"
        if d2 >= self.eps_prime * self.eps_prime:
            return "forbidden"
        return "uncertain"


@dataclass(frozen=True)
class EdgePolicy:
    """How uncertain-band pairs resolve: explicit list, seeded coin, all, none."""

    mode: str
    edges: Optional[FrozenSet[Tuple[int, int]]] = None
    seed: Optional[int] = None
    probability: Optional[Fraction] = None

    @classmethod
    def explicit(cls, edges) -> "EdgePolicy":
        norm = frozenset((min(i, j), max(i, j)) for i, j in edges)
        return cls(mode="explicit", edges=norm)

    @classmethod
    def seeded_random(cls, seed: int, probability) -> "EdgePolicy":
        return cls(mode="seeded_random", seed=seed, probability=F(probability))

    @classmethod
    def all(cls) -> "EdgePolicy":
        return cls(mode="all")

    @classmethod
    def none(cls) -> "EdgePolicy":
        return cls(mode="none")

    def select(self, band_pairs: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
        if self.mode == "none":
            return []
        if self.mode == "all":
            return list(band_pairs)
        if self.mode == "explicit":
            band = set(band_pairs)
            extra = self.edges - band  # type: ignore[operator]
            if extra:
                raise ValueError(
                    f"explicit policy proposes pairs outside the uncertain band: "
                    f"{sorted(extra)}"
                )
            return sorted(self.edges)  # type: ignore[arg-type]
        if self.mode == "seeded_random":
            rng = random.Random(self.seed)
            p = float(self.probability)
            return [e for e in band_pairs if rng.random() < p]
        raise ValueError(f"unknown policy mode {self.mode!r}")


def build_quasi(
    points: Sequence[Point],
    interval: UncertaintyInterval,
    policy: EdgePolicy,
    dim_cap: int = 3,
) -> SimplicialComplex:
    """Flag complex of forced edges plus the policy's picks in the band."""
    check_distinct_points(points)
    n = len(points)
    forced: List[Tuple[int, int]] = []
    band: List[Tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            cls = interval.classify(dist2(points[i], points[j]))
            if cls == "forced":
                forced.append((i, j))
            elif cls == "uncertain":
                band.append((i, j))
    chosen = policy.select(band)
    info = QuasiInfo(
        eps=interval.eps,
        eps_prime=interval.eps_prime,
        uncertain_chosen=tuple(sorted(chosen)),
        uncertain_pairs=tuple(band),
    )
    return flag_complex(
        n,
        forced + list(chosen),
        dim_cap,
        coords=points,
        provenance="quasi",
        quasi=info,
    )


# ---------------------------------------------------------------------------
# group presentations and their 3-colored complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Generators 1..n and relators as signed generator sequences."""

    n_generators: int
    relators: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for rel in self.relators:
            if not rel:
                raise ValueError("relators must be nonempty")
            for a, b in zip(rel, rel[1:]):
                if a == -b:
                    raise ValueError(f"relator {rel} is not freely reduced")
            if any(abs(g) < 1 or abs(g) > self.n_generators for g in rel):
                raise ValueError(f"relator {rel} uses an unknown generator")

    @classmethod
    def parse(cls, generators: int, relator_words: Sequence[str]) -> "GroupPresentation":
        """Parse words like "aba'b'": letters a..z, apostrophe for inverse."""
        rels = []
        for word in relator_words:
            rel: List[int] = []
            for ch in word:
                if ch == "'":
                    if not rel:
                        raise ValueError(f"dangling inverse mark in {word!r}")
                    rel[-1] = -rel[-1]
                else:
                    idx = ord(ch) - ord("a") + 1
                    if not (1 <= idx <= generators):
                        raise ValueError(f"unknown generator {ch!r} in {word!r}")
                    rel.append(idx)
            rels.append(tuple(rel))
        return cls(n_generators=generators, relators=tuple(rels))


def _third(a: int, b: int) -> int:
    return 3 - a - b


def presentation_to_colored_complex(
    p: GroupPresentation,
) -> Tuple[SimplicialComplex, VertexColoring]:
    """Properly 3-colored simplicial 2-complex with the presentation's
    homotopy type.

    The wedge of generator circles is built as 3-cycles through the base
    point; each relator attaches a disk as an annulus glued to its word
    walk (fresh inner ring, so repeated letters never identify interior
    cells) plus a colored ear-fill of the ring.  Vertex colors come out of
    the construction directly, one color class per circle position, and
    properness is asserted before returning.
    """
    colors: List[int] = [0]  # base point
    circle: Dict[int, Tuple[int, int]] = {}
    for g in range(1, p.n_generators + 1):
        a = len(colors)
        colors.append(1)
        b = len(colors)
        colors.append(2)
        circle[g] = (a, b)
    edges: Set[Tuple[int, int]] = set()
    triangles: Set[Tuple[int, int, int]] = set()
    for g, (a, b) in circle.items():
        edges.update(((0, a), (a, b), (0, b)))

    def new_vertex(color: int) -> int:
        colors.append(color)
        return len(colors) - 1

    def add_triangle(u: int, v: int, w: int) -> None:
        if len({u, v, w}) != 3 or len({colors[u], colors[v], colors[w]}) != 3:
            raise AuditError(f"triangle {(u, v, w)} is not rainbow")
        tri = tuple(sorted((u, v, w)))
        if tri in triangles:
            raise AuditError(f"duplicate triangle {tri}")
        triangles.add(tri)
        edges.update(
            ((min(x, y), max(x, y)) for x, y in combinations((u, v, w), 2))
        )

    for rel in p.relators:
        walk: List[int] = [0]
        for g in rel:
            a, b = circle[abs(g)]
            walk.extend([a, b, 0] if g > 0 else [b, a, 0])
        walk.pop()  # cyclic: final base point equals walk[0]
        m = len(walk)

        ring: List[int] = []
        v_cur = -1
        for k in range(m):
            wk, wk1 = walk[k], walk[(k + 1) % m]
            t = _third(colors[wk], colors[wk1])
            if v_cur < 0:
                v_cur = new_vertex(t)
                ring.append(v_cur)
            elif colors[v_cur] != t:
                v_new = new_vertex(t)
                add_triangle(v_cur, v_new, wk)
                ring.append(v_new)
                v_cur = v_new
            add_triangle(wk, wk1, v_cur)
        v_first = ring[0]
        if len(ring) < 3:
            raise AuditError("inner ring degenerated; relator walk too short")
        if colors[v_cur] != colors[v_first]:
            add_triangle(v_cur, v_first, walk[0])
        else:
            filler = new_vertex(_third(colors[v_cur], colors[walk[0]]))
            add_triangle(v_cur, filler, walk[0])
            add_triangle(filler, v_first, walk[0])
            ring.append(filler)

        # ear-fill the fresh inner ring
        poly = ring[:]
        while len(poly) > 3:
            for i in range(len(poly)):
                a = poly[(i - 1) % len(poly)]
                b = poly[i]
                cc = poly[(i + 1) % len(poly)]
                if colors[a] != colors[cc]:
                    add_triangle(a, b, cc)
                    poly.pop(i)
                    break
            else:
                present = sorted({colors[v] for v in poly})
                z = new_vertex(_third(*present))
                for i in range(len(poly)):
                    add_triangle(z, poly[i], poly[(i + 1) % len(poly)])
                poly = []
                break
        if len(poly) == 3:
            add_triangle(*poly)

    n = len(colors)
    k = explicit_complex(
        n, [[(v,) for v in range(n)], sorted(edges), sorted(triangles)], dim_cap=2
    )
    coloring = VertexColoring(color=tuple(colors))
    if not coloring.is_proper(k):
        raise AuditError("construction produced an improper coloring")
    return k, coloring


# ---------------------------------------------------------------------------
# blowup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlowupComplex:
    """Disjoint simplex copies of a complex, faces connected by joins.

    Vertices are (simplex of K, vertex of that simplex).  Two vertices
    (s1, v), (s2, w) are adjacent iff v lies in s2 and w lies in s1: each
    copy is a clique, a face copy joins the matching corner of every
    coface copy, and two copies sharing a face join along that face's
    corners.  This is the join structure whose collapse recovers the
    gluing maps: the fiber over a point in an open k-cell is the simplex
    on the copies containing that cell, so the flag completion is
    homotopy equivalent to the source complex, and every bichromatic
    triangle of the quasi-Rips complex already lives in it.  Joining
    entire copies pairwise instead creates bichromatic 2-simplices outside
    the flag completion and wrecks the construction.  Colors are inherited.
    """

    n_vertices: int
    labels: Tuple[Tuple[Tuple[int, ...], int], ...]
    colors: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    def vertex_count_identity(self) -> bool:
        return self.n_vertices == len(self.labels)


def blowup(k: SimplicialComplex, coloring: VertexColoring) -> BlowupComplex:
    if k.dim() > 2:
        raise ValueError("blowup expects a 2-dimensional complex")
    if not coloring.is_proper(k):
        raise ValueError("coloring is not proper on the complex")
    simplices: List[Tuple[int, ...]] = []
    for level in k.simplices:
        simplices.extend(level)
    vid: Dict[Tuple[Tuple[int, ...], int], int] = {}
    labels: List[Tuple[Tuple[int, ...], int]] = []
    colors: List[int] = []
    for s in simplices:
        for v in s:
            vid[(s, v)] = len(labels)
            labels.append((s, v))
            colors.append(coloring.of(v))
    members = [frozenset(s) for s in simplices]
    edges: Set[Tuple[int, int]] = set()
    n = len(labels)
    owner = []  # simplex index of each blowup vertex
    for si, s in enumerate(simplices):
        owner.extend([si] * len(s))
    for a in range(n):
        s1, v = labels[a]
        for b in range(a + 1, n):
            s2, w = labels[b]
            if v in members[owner[b]] and w in members[owner[a]]:
                edges.add((a, b))
    return BlowupComplex(
        n_vertices=len(labels),
        labels=tuple(labels),
        colors=tuple(colors),
        edges=tuple(sorted(edges)),
    )


def flag_blowup(b: BlowupComplex, dim_cap: int = 3) -> SimplicialComplex:
    """Flag completion of the blowup graph (no geometry attached)."""
    return flag_complex(b.n_vertices, b.edges, dim_cap)


# ---------------------------------------------------------------------------
# planar embedding of a blowup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedQuasi:
    """A blowup realized as a planar quasi-Rips complex.

    `complex` holds the 1-skeleton (its flag completion is the quasi-Rips
    complex; monochromatic cliques are huge, so higher skeleta stay
    implicit).  `classes` are the three color classes of vertex ids.
    """

    points: Tuple[Point, ...]
    complex: SimplicialComplex
    classes: Tuple[Tuple[int, ...], ...]
    interval: UncertaintyInterval
    audit_margin: Fraction  # smallest slack of any band/forced comparison


def embed_blowup(
    b: BlowupComplex,
    interval: UncertaintyInterval,
    seed: int = 0,
    max_retries: int = 32,
) -> EmbeddedQuasi:
    """Place blowup vertices in three small balls at the corners of a
    near-equilateral rational triangle of side (eps+eps')/2.

    Ball radius is (eps'-eps)/8, half the construction's upper bound, so
    different-color distances land strictly inside the open band; the audit
    checks every pair exactly and the placement retries with derived seeds
    on the (theoretically impossible) failure.
    """
    eps, eps_p = interval.eps, interval.eps_prime
    rho = (eps_p - eps) / 8
    if 2 * rho > eps:
        raise AuditError(
            "ball radius too large for the interval: need (eps'-eps)/4 <= eps"
        )
    side = (eps + eps_p) / 2
    height = rational_sqrt(3 * side * side / 4, bits=40)
    if abs(height * height - 3 * side * side / 4) > rho * rho / 16:
        raise AuditError("rational height approximation too coarse")
    corners = [
        (F(0), F(0)),
        (side, F(0)),
        (side / 2, height),
    ]
    grid = 1 << 16
    last_error: Optional[str] = None
    for attempt in range(max_retries):
        rng = random.Random(seed * 1000003 + attempt)
        pts: List[Point] = []
        used: Set[Point] = set()
        ok = True
        for v in range(b.n_vertices):
            cx, cy = corners[b.colors[v]]
            for _ in range(64):
                dx = rho * F(rng.randrange(-grid, grid + 1), 2 * grid)
                dy = rho * F(rng.randrange(-grid, grid + 1), 2 * grid)
                cand = (cx + dx, cy + dy)
                if cand not in used:
                    used.add(cand)
                    pts.append(cand)
                    break
            else:
                ok = False
                break
        if not ok:
            last_error = "could not place distinct points"
            continue
        margin = _audit_embedding(pts, b.colors, interval)
        if margin is not None:
            classes = tuple(
                tuple(v for v in range(b.n_vertices) if b.colors[v] == c)
                for c in range(3)
            )
            edge_set = set(b.edges)
            for cls in classes:
                for i, j in combinations(cls, 2):
                    edge_set.add((min(i, j), max(i, j)))
            band = tuple(
                (i, j)
                for i in range(b.n_vertices)
                for j in range(i + 1, b.n_vertices)
                if b.colors[i] != b.colors[j]
            )
            chosen = tuple(e for e in sorted(edge_set) if b.colors[e[0]] != b.colors[e[1]])
            info = QuasiInfo(
                eps=eps,
                eps_prime=eps_p,
                uncertain_chosen=chosen,
                uncertain_pairs=band,
            )
            rq = flag_complex(
                b.n_vertices,
                sorted(edge_set),
                dim_cap=1,
                coords=pts,
                provenance="quasi",
                quasi=info,
            )
            return EmbeddedQuasi(
                points=tuple(pts),
                complex=rq,
                classes=classes,
                interval=interval,
                audit_margin=margin,
            )
        last_error = "distance audit failed"
    raise AuditError(f"embedding failed after {max_retries} seeds: {last_error}")


def _audit_embedding(
    pts: Sequence[Point], colors: Sequence[int], interval: UncertaintyInterval
) -> Optional[Fraction]:
    eps2 = interval.eps * interval.eps
    eps_p2 = interval.eps_prime * interval.eps_prime
    margin: Optional[Fraction] = None

    def upd(x: Fraction) -> None:
        nonlocal margin
        margin = x if margin is None else min(margin, x)

    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            d2 = dist2(pts[i], pts[j])
            if colors[i] == colors[j]:
                if d2 > eps2:
                    return None
                upd(eps2 - d2)
            else:
                if not (eps2 < d2 < eps_p2):
                    return None
                upd(min(d2 - eps2, eps_p2 - d2))
    return margin


# ---------------------------------------------------------------------------
# H1 of an embedded quasi complex, relative to the color cliques
# ---------------------------------------------------------------------------


def cross_edges_and_triangles(
    eq: EmbeddedQuasi,
) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int, int]]]:
    """Bichromatic edges of R_Q and every triangle that contains one.

    Those triangles are exactly the non-monochromatic 2-simplices of the
    quasi-Rips flag complex.
    """
    col: List[Optional[int]] = [None] * eq.complex.n_vertices
    for cidx, cls in enumerate(eq.classes):
        for v in cls:
            col[v] = cidx
    adj: List[Set[int]] = [set() for _ in range(eq.complex.n_vertices)]
    for i, j in eq.complex.edges:
        adj[i].add(j)
        adj[j].add(i)
    cross = [e for e in eq.complex.edges if col[e[0]] != col[e[1]]]
    tris: Set[Tuple[int, int, int]] = set()
    for i, j in cross:
        for w in adj[i] & adj[j]:
            tris.add(tuple(sorted((i, j, w))))  # type: ignore[arg-type]
    return cross, sorted(tris)


def quasi_integer_h1(eq: EmbeddedQuasi) -> SmithDecomposition:
    """H1(R_Q; Z) via the chain complex relative to the three color cliques.

    Each color class spans a full simplex of the flag complex, so the pair
    (R_Q, cliques) is good: H1(R_Q) injects into H1(R_Q, A) with free
    cokernel Z^(components(A) - components(R_Q)).  Relative 1-chains are
    the bichromatic edges, relative 2-chains the non-monochromatic
    triangles, so no monochromatic simplex is ever materialized.  Torsion
    is untouched by the shift; the free rank drops by the component count
    difference.
    """
    cross, tris = cross_edges_and_triangles(eq)
    comp_x = _graph_components(eq.complex.n_vertices, eq.complex.edges)
    n_classes = sum(1 for cls in eq.classes if cls)
    shift = n_classes - comp_x
    eidx = {e: i for i, e in enumerate(cross)}
    cols: List[Dict[int, int]] = []
    for t in tris:
        col: Dict[int, int] = {}
        for pos in range(3):
            face = t[:pos] + t[pos + 1 :]
            row = eidx.get(face)
            if row is not None:
                col[row] = 1 if pos % 2 == 0 else -1
        if col:
            cols.append(col)
    diag = snf_diagonal(cols)
    rank_rel = len(cross) - len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return SmithDecomposition(rank=rank_rel - shift, torsion=torsion)


def _graph_components(n: int, edges: Sequence[Tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(v) for v in range(n)})


def monochromatic_violations(eq: EmbeddedQuasi, b: BlowupComplex) -> List[Tuple[int, int, int]]:
    """Non-monochromatic R_Q triangles that are NOT already in flag(K~).

    The construction predicts this list is empty: every extra 2-simplex of
    the quasi complex has all vertices of the same color.
    """
    blow = set(b.edges)
    _, tris = cross_edges_and_triangles(eq)
    bad = []
    for t in tris:
        pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
        if not all(p in blow for p in pairs):
            bad.append(t)
    return bad


# ---------------------------------------------------------------------------
# presets and the full pipeline
# ---------------------------------------------------------------------------

PRESETS: Dict[str, Tuple[int, Tuple[str, ...]]] = {
    "torus": (2, ("aba'b'",)),
    "rp2": (1, ("aa",)),
    "klein": (2, ("abab'",)),
}


def preset_presentation(name: str) -> GroupPresentation:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    gens, words = PRESETS[name]
    return GroupPresentation.parse(gens, words)


@dataclass(frozen=True)
class PipelineResult:
    presentation: GroupPresentation
    k: SimplicialComplex
    coloring: VertexColoring
    h1_k: SmithDecomposition
    blowup: BlowupComplex
    betti_k: Tuple[int, ...]
    betti_flag_blowup: Tuple[int, ...]
    embedded: EmbeddedQuasi
    h1_rq: SmithDecomposition
    mono_violations: int

    @property
    def blowup_betti_agrees(self) -> bool:
        return self.betti_k == self.betti_flag_blowup

    @property
    def torsion_transported(self) -> bool:
        return self.h1_rq.torsion == self.h1_k.torsion


def run_pipeline(
    p: GroupPresentation,
    interval: UncertaintyInterval,
    seed: int = 0,
) -> PipelineResult:
    k, coloring = presentation_to_colored_complex(p)
    h1_k = integer_h1(k)
    b = blowup(k, coloring)
    fb = flag_blowup(b, dim_cap=3)
    betti_k = betti_numbers(k, "GF2", 2).b
    betti_fb = betti_numbers(fb, "GF2", 2).b
    eq = embed_blowup(b, interval, seed)
    h1_rq = quasi_integer_h1(eq)
    bad = monochromatic_violations(eq, b)
    return PipelineResult(
        presentation=p,
        k=k,
        coloring=coloring,
        h1_k=h1_k,
        blowup=b,
        betti_k=betti_k,
        betti_flag_blowup=betti_fb,
        embedded=eq,
        h1_rq=h1_rq,
        mono_violations=len(bad),
    )


# ---------------------------------------------------------------------------
# persistence-style pair analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairReport:
    image_rank: int
    mid_eps: Fraction
    mid_b1: int
    bound_ok: bool
    lower_b1: int
    upper_b1: int
    lower_forced_components: int  # connectivity of R_eps, reported not fixed
    shadow_mid_betti: Optional[Tuple[int, int]]


def pair_image_analysis(
    points: Sequence[Point],
    lower: Tuple[UncertaintyInterval, EdgePolicy],
    upper: Tuple[UncertaintyInterval, EdgePolicy],
    dim_cap: int = 3,
) -> PairReport:
    """Rank of H1(R_Q) -> H1(R_Q') for disjoint uncertainty intervals,
    against the b1 of the intermediate genuine Rips complex.

    Disjointness gives R_Q subset R_eps'' subset R_Q' for any eps'' between
    the intervals, so the image rank is bounded by b1 at the midpoint; the
    report carries the verified bound.
    """
    li, lp = lower
    ui, up = upper
    if li.eps_prime > ui.eps:
        raise ValueError("uncertainty intervals overlap")
    low = build_quasi(points, li, lp, dim_cap)
    high = build_quasi(points, ui, up, dim_cap)
    rank = induced_h1_rank(low, high)
    mid_eps = (li.eps_prime + ui.eps) / 2
    mid = build_rips(points, mid_eps, dim_cap)
    mid_b1 = betti_numbers(mid, "Q", 1).b[1]
    shadow_mid = None
    if all(len(p) == 2 for p in points):
        from .shadow import build_shadow, shadow_betti

        shadow_mid = shadow_betti(build_shadow(mid))
    forced_only = build_rips(points, li.eps, 1)
    return PairReport(
        image_rank=rank,
        mid_eps=mid_eps,
        mid_b1=mid_b1,
        bound_ok=rank <= mid_b1,
        lower_b1=betti_numbers(low, "Q", 1).b[1],
        upper_b1=betti_numbers(high, "Q", 1).b[1],
        lower_forced_components=len(forced_only.components()),
        shadow_mid_betti=shadow_mid,
    )
