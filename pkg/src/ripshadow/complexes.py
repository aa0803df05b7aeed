"""Rips, Cech (1-D), and general flag complexes.

A SimplicialComplex stores its simplices per dimension as sorted tuples of
vertex indices, in lexicographic order, so every downstream matrix and
report is reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .geometry import Point, dist2

Simplex = Tuple[int, ...]


class DuplicatePointError(ValueError):
    """Two identical points make the shadow projection degenerate on an edge."""


class NonFlagError(ValueError):
    pass


@dataclass(frozen=True)
class QuasiInfo:
    """Bookkeeping for quasi-Rips builds: the interval and the chosen links."""

    eps: Fraction
    eps_prime: Fraction
    uncertain_chosen: Tuple[Tuple[int, int], ...]
    uncertain_pairs: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class SimplicialComplex:
    n_vertices: int
    simplices: Tuple[Tuple[Simplex, ...], ...]  # simplices[k] = k-simplices, sorted
    dim_cap: int
    flag: bool
    coords: Optional[Tuple[Point, ...]] = None
    provenance: str = "explicit"  # "rips" | "quasi" | "cech1d" | "explicit"
    epsilon: Optional[Fraction] = None
    quasi: Optional[QuasiInfo] = None

    def k_simplices(self, k: int) -> Tuple[Simplex, ...]:
        if k < 0 or k >= len(self.simplices):
            return ()
        return self.simplices[k]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.k_simplices(0))

    @property
    def edges(self) -> Tuple[Simplex, ...]:
        return self.k_simplices(1)

    def dim(self) -> int:
        for k in range(len(self.simplices) - 1, -1, -1):
            if self.simplices[k]:
                return k
        return -1

    def has_simplex(self, simplex: Sequence[int]) -> bool:
        s = tuple(sorted(simplex))
        k = len(s) - 1
        return s in set(self.k_simplices(k))

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))

    def adjacency(self) -> Dict[int, Set[int]]:
        adj: Dict[int, Set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def components(self) -> List[Set[int]]:
        adj = self.adjacency()
        seen: Set[int] = set()
        out: List[Set[int]] = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            out.append(comp)
        return out


def _cliques_from_graph(
    vertices: Sequence[int], edges: Iterable[Tuple[int, int]], dim_cap: int
) -> Tuple[Tuple[Simplex, ...], ...]:
    """All cliques of size <= dim_cap+1, per dimension, lexicographically sorted.

    Ordered extension: a k-clique is grown only by vertices larger than its
    maximum, so each clique is produced exactly once and the output order is
    deterministic.
    """
    adj: Dict[int, Set[int]] = {v: set() for v in vertices}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    levels: List[List[Simplex]] = [[(v,) for v in sorted(vertices)]]
    if dim_cap >= 1:
        level1 = sorted((i, j) if i < j else (j, i) for i, j in edges)
        levels.append(level1)
    k = 1
    while k < dim_cap and levels[k]:
        nxt: List[Simplex] = []
        for clique in levels[k]:
            common = set.intersection(*(adj[v] for v in clique))
            top = clique[-1]
            for v in sorted(common):
                if v > top:
                    nxt.append(clique + (v,))
            # sorted(common) with v > top keeps lexicographic order per prefix
        levels.append(tuple(nxt))  # type: ignore[arg-type]
        k += 1
    while len(levels) < dim_cap + 1:
        levels.append([])
    return tuple(tuple(level) for level in levels)


def flag_complex(
    n_vertices: int,
    edges: Iterable[Tuple[int, int]],
    dim_cap: int,
    coords: Optional[Sequence[Point]] = None,
    provenance: str = "explicit",
    epsilon: Optional[Fraction] = None,
    quasi: Optional[QuasiInfo] = None,
    vertices: Optional[Sequence[int]] = None,
) -> SimplicialComplex:
    """Clique completion of a graph up to dim_cap."""
    verts = list(vertices) if vertices is not None else list(range(n_vertices))
    simplices = _cliques_from_graph(verts, edges, dim_cap)
    return SimplicialComplex(
        n_vertices=n_vertices,
        simplices=simplices,
        dim_cap=dim_cap,
        flag=True,
        coords=tuple(coords) if coords is not None else None,
        provenance=provenance,
        epsilon=epsilon,
        quasi=quasi,
    )


def explicit_complex(
    n_vertices: int,
    simplices_by_dim: Sequence[Iterable[Simplex]],
    dim_cap: Optional[int] = None,
    coords: Optional[Sequence[Point]] = None,
) -> SimplicialComplex:
    """A non-flag complex from explicit simplex lists; faces are closed off."""
    cap = dim_cap if dim_cap is not None else max(1, len(simplices_by_dim) - 1)
    levels: List[Set[Simplex]] = [set() for _ in range(cap + 1)]
    for k, level in enumerate(simplices_by_dim):
        for s in level:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"repeated vertex in simplex {s}")
            levels[k].add(t)
    # close under faces
    for k in range(cap, 0, -1):
        for s in list(levels[k]):
            for i in range(len(s)):
                levels[k - 1].add(s[:i] + s[i + 1 :])
    return SimplicialComplex(
        n_vertices=n_vertices,
        simplices=tuple(tuple(sorted(level)) for level in levels),
        dim_cap=cap,
        flag=False,
        coords=tuple(coords) if coords is not None else None,
    )


def check_distinct_points(points: Sequence[Point]) -> None:
    seen: Dict[Point, int] = {}
    for idx, p in enumerate(points):
        key = tuple(Fraction(c) for c in p)
        if key in seen:
            raise DuplicatePointError(
                f"points {seen[key]} and {idx} coincide; distinct points required"
            )
        seen[key] = idx


def build_rips(points: Sequence[Point], eps: Fraction, dim_cap: int = 3) -> SimplicialComplex:
    """Vietoris-Rips complex at scale eps (closed threshold: d <= eps).

    Edges join points with dist2 <= eps**2; simplices are exactly the
    cliques of the proximity graph up to dim_cap.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if dim_cap < 1:
        raise ValueError("dim_cap must be >= 1")
    check_distinct_points(points)
    eps2 = Fraction(eps) ** 2
    n = len(points)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if dist2(points[i], points[j]) <= eps2
    ]
    return flag_complex(
        n, edges, dim_cap, coords=points, provenance="rips", epsilon=Fraction(eps)
    )


def build_cech_1d(points: Sequence[Point], eps: Fraction, dim_cap: int = 3) -> SimplicialComplex:
    """Cech complex of 1-D points: a simplex iff the subset spans at most eps.

    Implemented by direct window enumeration (max - min <= eps), independent
    of the clique machinery, so it can cross-check build_rips in 1-D.
    """
    if any(len(p) != 1 for p in points):
        raise ValueError("build_cech_1d requires 1-dimensional points")
    check_distinct_points(points)
    eps = Fraction(eps)
    n = len(points)
    order = sorted(range(n), key=lambda i: points[i][0])
    levels: List[Set[Simplex]] = [set((i,) for i in range(n))] + [
        set() for _ in range(dim_cap)
    ]
    # every valid simplex lies in the maximal window starting at its minimum
    from itertools import combinations

    for a in range(n):
        b = a
        while b + 1 < n and points[order[b + 1]][0] - points[order[a]][0] <= eps:
            b += 1
        window = [order[i] for i in range(a + 1, b + 1)]
        for size in range(1, min(len(window), dim_cap) + 1):
            for rest in combinations(window, size):
                levels[size].add(tuple(sorted((order[a],) + rest)))
    out = [tuple(sorted(level)) for level in levels]
    return SimplicialComplex(
        n_vertices=n,
        simplices=tuple(out),
        dim_cap=dim_cap,
        flag=True,
        coords=tuple(points),
        provenance="cech1d",
        epsilon=eps,
    )


def induced_span(c: SimplicialComplex, verts: Iterable[int]) -> SimplicialComplex:
    """Smallest subcomplex of c on a vertex subset (all simplices inside it).

    Vertex indices are preserved, so spans embed in their parent complex.
    """
    vset = set(verts)
    unknown = vset - set(c.vertices)
    if unknown:
        raise KeyError(f"unknown vertex ids: {sorted(unknown)}")
    levels = tuple(
        tuple(s for s in level if all(v in vset for v in s)) for level in c.simplices
    )
    return SimplicialComplex(
        n_vertices=c.n_vertices,
        simplices=levels,
        dim_cap=c.dim_cap,
        flag=c.flag,
        coords=c.coords,
        provenance=c.provenance,
        epsilon=c.epsilon,
        quasi=c.quasi,
    )


def cone_apex(c: SimplicialComplex) -> Optional[int]:
    """Smallest vertex adjacent to every other vertex, or None.

    For a flag complex this is exactly the cone condition: a maximal clique
    missing such a vertex could be extended by it.
    """
    if not c.flag:
        raise NonFlagError("cone_apex is only meaningful on flag complexes")
    verts = c.vertices
    if len(verts) == 1:
        return verts[0]
    adj = c.adjacency()
    want = len(verts) - 1
    for v in verts:
        if len(adj[v]) == want:
            return v
    return None


@dataclass(frozen=True)
class VertexColoring:
    """A map vertex -> {0,1,2}, proper on the complex's edges when required."""

    color: Tuple[int, ...]

    def of(self, v: int) -> int:
        return self.color[v]

    def is_proper(self, c: SimplicialComplex) -> bool:
        return all(self.color[i] != self.color[j] for i, j in c.edges)
