"""Boundary matrices, Betti numbers, integer Smith normal form, induced maps.

Everything is exact: GF(2) ranks use bitmask elimination, rational ranks and
torsion use integer elimination with Euclidean pivoting (arbitrary precision,
no modular shortcuts).  Matrices are stored column-sparse; boundary matrices
have three or fewer entries per column, and smallest-pivot selection keeps
fill-in modest at desk scale.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .complexes import Simplex, SimplicialComplex

SparseCol = Dict[int, int]


class InsufficientDimCap(ValueError):
    pass


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed boundary operator from k-simplices to (k-1)-simplices.

    Column j holds the boundary of the j-th k-simplex; the sign convention
    alternates over the increasing-vertex-order faces.
    """

    k: int
    rows: Tuple[Simplex, ...]
    cols: Tuple[Simplex, ...]
    columns: Tuple[SparseCol, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def mod2_columns(self) -> List[int]:
        """Columns as GF(2) bitmasks over row indices."""
        return [sum(1 << r for r, v in col.items() if v % 2) for col in self.columns]


def boundary_matrix(c: SimplicialComplex, k: int) -> BoundaryMatrix:
    rows = c.k_simplices(k - 1)
    cols = c.k_simplices(k)
    index = {s: i for i, s in enumerate(rows)}
    columns: List[SparseCol] = []
    for s in cols:
        col: SparseCol = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            col[index[face]] = 1 if i % 2 == 0 else -1
        columns.append(col)
    return BoundaryMatrix(k=k, rows=rows, cols=cols, columns=tuple(columns))


def verify_chain_property(c: SimplicialComplex) -> bool:
    """Exactly check boundary-of-boundary = 0 in every materialized degree."""
    for k in range(2, len(c.simplices)):
        dk = boundary_matrix(c, k)
        dk1 = boundary_matrix(c, k - 1)
        for col in dk.columns:
            acc: SparseCol = {}
            for r, v in col.items():
                for r2, v2 in dk1.columns[r].items():
                    acc[r2] = acc.get(r2, 0) + v * v2
            if any(val != 0 for val in acc.values()):
                return False
    return True


def rank_gf2(columns: Sequence[int]) -> int:
    """Rank over GF(2) of bitmask columns."""
    pivots: Dict[int, int] = {}
    rank = 0
    for col in columns:
        v = col
        while v:
            low = v & -v
            row = low.bit_length() - 1
            piv = pivots.get(row)
            if piv is None:
                pivots[row] = v
                rank += 1
                break
            v ^= piv
    return rank


class _SparseIntMatrix:
    """Column-sparse integer matrix supporting exact elimination.

    Diagonalizes by Euclidean pivoting (always reducing toward the smallest
    nonzero magnitude), which stays in the integers and needs no fraction
    arithmetic.  `eliminate` returns the diagonal values pulled off; their
    count is the rank and, after a divisibility fix-up, their absolute
    values are the invariant factors.
    """

    def __init__(self, columns: Sequence[SparseCol]):
        self.cols: Dict[int, SparseCol] = {
            j: dict(col) for j, col in enumerate(columns) if col
        }
        self.rows: Dict[int, Set[int]] = {}
        for j, col in self.cols.items():
            for r in col:
                self.rows.setdefault(r, set()).add(j)
        self._heap: List[Tuple[int, int]] = []
        for j, col in self.cols.items():
            self._push(j)

    def _push(self, j: int) -> None:
        col = self.cols.get(j)
        if col:
            heapq.heappush(self._heap, (min(abs(v) for v in col.values()), j))

    def _set(self, j: int, r: int, v: int) -> None:
        col = self.cols[j]
        if v == 0:
            if r in col:
                del col[r]
                self.rows[r].discard(j)
        else:
            if r not in col:
                self.rows.setdefault(r, set()).add(j)
            col[r] = v

    def _axpy(self, dst: int, src: int, q: int) -> None:
        """column[dst] -= q * column[src]"""
        if q == 0:
            return
        src_col = self.cols[src]
        for r, v in list(src_col.items()):
            cur = self.cols[dst].get(r, 0) - q * v
            self._set(dst, r, cur)
        self._push(dst)

    def _swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        ca, cb = self.cols[a], self.cols[b]
        for r in set(ca) | set(cb):
            self.rows[r].discard(a)
            self.rows[r].discard(b)
        self.cols[a], self.cols[b] = cb, ca
        for r in self.cols[a]:
            self.rows[r].add(a)
        for r in self.cols[b]:
            self.rows[r].add(b)
        self._push(a)
        self._push(b)

    def _drop_col(self, j: int) -> None:
        for r in self.cols[j]:
            self.rows[r].discard(j)
        del self.cols[j]

    def _pick_pivot(self) -> Optional[Tuple[int, int]]:
        while self._heap:
            key, j = heapq.heappop(self._heap)
            col = self.cols.get(j)
            if not col:
                continue
            cur = min(abs(v) for v in col.values())
            if cur != key:
                heapq.heappush(self._heap, (cur, j))
                continue
            r = min(rr for rr, vv in col.items() if abs(vv) == cur)
            heapq.heappush(self._heap, (key, j))  # stays until dropped
            return (r, j)
        return None

    def eliminate(self, need_divisibility: bool) -> List[int]:
        diag: List[int] = []
        while True:
            piv = self._pick_pivot()
            if piv is None:
                break
            r, c = piv
            while True:
                # clear pivot row across other columns (Euclid on remainders)
                moved = False
                for j in list(self.rows.get(r, ())):
                    if j == c:
                        continue
                    p = self.cols[c][r]
                    q = self.cols[j][r] // p
                    self._axpy(j, c, q)
                    if self.cols.get(j, {}).get(r, 0) != 0:
                        self._swap_cols(c, j)
                        moved = True
                        break
                if moved:
                    continue
                # pivot row now lives only in column c; clear the column.
                # Row ops on other rows only touch column c here, because
                # row r has a single nonzero.
                p = self.cols[c][r]
                col = self.cols[c]
                again = False
                for r2 in list(col.keys()):
                    if r2 == r:
                        continue
                    q = col[r2] // p
                    self._set(c, r2, col[r2] - q * p)
                    if self.cols[c].get(r2, 0) != 0:
                        r = r2  # smaller remainder becomes the pivot entry
                        again = True
                        break
                if not again:
                    break
            diag.append(abs(self.cols[c][r]))
            self._drop_col(c)
            self.rows.pop(r, None)
        if need_divisibility and len(diag) > 1:
            import math

            changed = True
            while changed:
                changed = False
                for i in range(len(diag)):
                    for j in range(i + 1, len(diag)):
                        if diag[j] % diag[i] != 0:
                            g = math.gcd(diag[i], diag[j])
                            l = diag[i] // g * diag[j]
                            diag[i], diag[j] = g, l
                            changed = True
            diag.sort()
        return diag


def rank_int(columns: Sequence[SparseCol]) -> int:
    """Exact rank over the rationals of an integer column-sparse matrix."""
    return len(_SparseIntMatrix(columns).eliminate(need_divisibility=False))


def snf_diagonal(columns: Sequence[SparseCol]) -> List[int]:
    """Invariant factors (ascending, divisibility chain) of an integer matrix."""
    return _SparseIntMatrix(columns).eliminate(need_divisibility=True)


@dataclass(frozen=True)
class SmithDecomposition:
    """Free rank and torsion coefficients of H1 = ker d1 / im d2."""

    rank: int
    torsion: Tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts)


@dataclass(frozen=True)
class BettiProfile:
    b: Tuple[int, ...]
    field: str  # "GF2" or "Q"


def _graph_rank_and_components(c: SimplicialComplex) -> Tuple[int, int]:
    comps = c.components()
    n_active = len(c.vertices)
    rank_d1 = n_active - len(comps)
    return rank_d1, len(comps)


def betti_numbers(c: SimplicialComplex, field: str = "Q", top_dim: int = 1) -> BettiProfile:
    """Betti numbers b_0..b_top_dim over GF(2) or the rationals, exactly.

    Requires the complex to be materialized one dimension above top_dim so
    that the last image rank is honest.
    """
    if field not in ("Q", "GF2"):
        raise ValueError("field must be 'Q' or 'GF2'")
    if c.flag and top_dim + 1 > c.dim_cap:
        # a flag complex may truncate real cliques at dim_cap; an explicit
        # complex has nothing above its stored levels
        raise InsufficientDimCap(
            f"need dim_cap >= {top_dim + 1}, complex has {c.dim_cap}"
        )
    ranks: Dict[int, int] = {0: 0}
    for k in range(1, top_dim + 2):
        if not c.k_simplices(k):
            ranks[k] = 0
            continue
        if k == 1 and field == "Q":
            ranks[k] = _graph_rank_and_components(c)[0]
            continue
        bm = boundary_matrix(c, k)
        if field == "GF2":
            ranks[k] = rank_gf2(bm.mod2_columns())
        else:
            ranks[k] = rank_int(bm.columns)
    b = tuple(
        len(c.k_simplices(k)) - ranks[k] - ranks[k + 1] for k in range(top_dim + 1)
    )
    return BettiProfile(b=b, field=field)


def integer_h1(c: SimplicialComplex) -> SmithDecomposition:
    """H1(c; Z) as free rank plus torsion, via Smith normal form of (d1, d2)."""
    if c.dim_cap < 2:
        raise InsufficientDimCap("integer_h1 needs dim_cap >= 2")
    n1 = len(c.k_simplices(1))
    rank_d1, _ = _graph_rank_and_components(c)
    if c.k_simplices(2):
        diag = snf_diagonal(boundary_matrix(c, 2).columns)
    else:
        diag = []
    rank_d2 = len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return SmithDecomposition(rank=n1 - rank_d1 - rank_d2, torsion=torsion)


def cycle_basis_columns(
    c: SimplicialComplex, edge_index: Dict[Simplex, int]
) -> List[SparseCol]:
    """Integer basis of the cycle space Z1(c), one fundamental cycle per
    non-forest edge, expressed in the given edge coordinates.

    Edge (i, j) with i < j contributes +1 when traversed from i to j.
    """
    adj: Dict[int, List[Tuple[int, Simplex]]] = {v: [] for v in c.vertices}
    for e in c.edges:
        i, j = e
        adj[i].append((j, e))
        adj[j].append((i, e))
    parent: Dict[int, Optional[Tuple[int, Simplex]]] = {}
    tree_edges: Set[Simplex] = set()
    for root in c.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w, e in sorted(adj[u]):
                if w not in parent:
                    parent[w] = (u, e)
                    tree_edges.add(e)
                    queue.append(w)

    def path_to_root(v: int) -> List[Tuple[int, Simplex, int]]:
        """(edge_row, edge, sign) steps from v up to its root, as traversed."""
        out = []
        while parent[v] is not None:
            u, e = parent[v]  # type: ignore[misc]
            sign = 1 if v == e[0] else -1  # e = (min, max); +1 means min -> max
            out.append((edge_index[e], e, sign))
            v = u
        return out

    basis: List[SparseCol] = []
    for e in c.edges:
        if e in tree_edges:
            continue
        i, j = e
        col: SparseCol = {edge_index[e]: 1}  # traverse i -> j
        for row, _, sgn in path_to_root(j):  # j up to root: adds j->root
            col[row] = col.get(row, 0) + sgn
        for row, _, sgn in path_to_root(i):  # minus (i up to root)
            col[row] = col.get(row, 0) - sgn
        basis.append({r: v for r, v in col.items() if v != 0})
    return basis


def _check_containment(sub: SimplicialComplex, sup: SimplicialComplex) -> None:
    for k in range(len(sub.simplices)):
        sup_level = set(sup.k_simplices(k))
        for s in sub.k_simplices(k):
            if s not in sup_level:
                raise ContainmentError(f"simplex {s} of sub missing from sup")


def induced_h1_rank(sub: SimplicialComplex, sup: SimplicialComplex) -> int:
    """Rank over Q of H1(sub) -> H1(sup) induced by inclusion.

    dim image = dim(Z1(sub) + B1(sup)) - dim B1(sup), computed with exact
    integer elimination on [cycle basis | d2 of sup].
    """
    _check_containment(sub, sup)
    if sup.dim_cap < 2:
        raise InsufficientDimCap("sup needs its 2-skeleton materialized")
    edge_index = {e: i for i, e in enumerate(sup.edges)}
    cycles = cycle_basis_columns(sub, edge_index)
    d2_cols = list(boundary_matrix(sup, 2).columns) if sup.k_simplices(2) else []
    r_d2 = rank_int(d2_cols)
    r_all = rank_int(cycles + d2_cols)
    return r_all - r_d2
