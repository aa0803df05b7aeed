"""Independent reference implementations used only to freeze expected values.

These stay deliberately naive and dense (textbook row/column reduction on
full matrices, brute-force enumeration) so they share no code path with the
production algorithms they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple


def dense_boundary(simplices_k: Sequence[tuple], simplices_km1: Sequence[tuple]) -> List[List[int]]:
    index = {s: i for i, s in enumerate(simplices_km1)}
    mat = [[0] * len(simplices_k) for _ in range(len(simplices_km1))]
    for j, s in enumerate(simplices_k):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            mat[index[face]][j] = 1 if i % 2 == 0 else -1
    return mat


def dense_rank_q(mat: Sequence[Sequence]) -> int:
    """Plain fraction Gaussian elimination, first nonzero pivot."""
    m = [[Fraction(x) for x in row] for row in mat]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def dense_rank_gf2(mat: Sequence[Sequence[int]]) -> int:
    m = [[x % 2 for x in row] for row in mat]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(nrows):
            if r != row and m[r][col]:
                m[r] = [(a + b) % 2 for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def dense_snf(mat: Sequence[Sequence[int]]) -> List[int]:
    """Textbook dense Smith normal form; returns the diagonal (abs values)."""
    m = [list(map(int, row)) for row in mat]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag: List[int] = []
    top = 0
    while top < min(nrows, ncols):
        # find smallest nonzero entry in the trailing block
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        dirty = True
        while dirty:
            dirty = False
            for i in range(top + 1, nrows):
                if m[i][top] != 0:
                    q = m[i][top] // m[top][top]
                    for j in range(ncols):
                        m[i][j] -= q * m[top][j]
                    if m[i][top] != 0:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
            for j in range(top + 1, ncols):
                if m[top][j] != 0:
                    q = m[top][j] // m[top][top]
                    for i in range(nrows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j] != 0:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
        diag.append(abs(m[top][top]))
        top += 1
    # enforce the divisibility chain
    import math

    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[i] and diag[j] % diag[i] != 0:
                    g = math.gcd(diag[i], diag[j])
                    diag[i], diag[j] = g, diag[i] // g * diag[j]
                    changed = True
    return sorted(d for d in diag if d != 0)


def brute_force_cliques(n: int, edges: set, max_size: int) -> Dict[int, set]:
    """All cliques by raw subset enumeration (exponential; tiny inputs only)."""
    adj = {v: set() for v in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    out: Dict[int, set] = {k: set() for k in range(max_size)}
    for size in range(1, max_size + 1):
        for sub in combinations(range(n), size):
            if all(b in adj[a] for a, b in combinations(sub, 2)):
                out[size - 1].add(sub)
    return out


def homology_profile(
    simplices: Sequence[Sequence[tuple]], top_dim: int, field: str
) -> Tuple[int, ...]:
    """Betti numbers from dense matrices, independent of the package."""
    ranks = {0: 0}
    for k in range(1, top_dim + 2):
        cols = simplices[k] if k < len(simplices) else []
        rows = simplices[k - 1] if k - 1 < len(simplices) else []
        mat = dense_boundary(cols, rows) if cols else []
        if not cols:
            ranks[k] = 0
        elif field == "Q":
            ranks[k] = dense_rank_q(mat)
        else:
            ranks[k] = dense_rank_gf2(mat)
    counts = [len(simplices[k]) if k < len(simplices) else 0 for k in range(top_dim + 1)]
    return tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(top_dim + 1))


# Minimal 6-vertex triangulation of the projective plane: 10 triangles on
# K6, every edge in exactly two of them, Euler characteristic 1.
RP2_TRIANGLES = [
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 4),
    (0, 3, 5),
    (0, 4, 5),
    (1, 2, 5),
    (1, 3, 4),
    (1, 4, 5),
    (2, 3, 4),
    (2, 3, 5),
]
