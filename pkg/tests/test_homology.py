import random
from fractions import Fraction
from itertools import combinations

import pytest

from ripshadow.complexes import build_rips, explicit_complex, flag_complex
from ripshadow.homology import (
    InsufficientDimCap,
    ContainmentError,
    betti_numbers,
    boundary_matrix,
    cycle_basis_columns,
    induced_h1_rank,
    integer_h1,
    rank_gf2,
    rank_int,
    snf_diagonal,
    verify_chain_property,
)

from oracles import (
    RP2_TRIANGLES,
    dense_rank_gf2,
    dense_rank_q,
    dense_snf,
    homology_profile,
)

F = Fraction


def random_flag(rng, n_max=8, p=0.5, dim_cap=4):
    n = rng.randrange(3, n_max)
    edges = {(i, j) for i, j in combinations(range(n), 2) if rng.random() < p}
    return flag_complex(n, edges, dim_cap=dim_cap)


def cols_to_dense(columns, nrows):
    mat = [[0] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for r, v in col.items():
            mat[r][j] = v
    return mat


def test_rank_engines_match_dense_random():
    rng = random.Random(31)
    for _ in range(40):
        nrows = rng.randrange(1, 7)
        ncols = rng.randrange(1, 7)
        cols = []
        for _ in range(ncols):
            col = {
                r: rng.randrange(-4, 5)
                for r in range(nrows)
                if rng.random() < 0.6
            }
            cols.append({r: v for r, v in col.items() if v})
        dense = cols_to_dense(cols, nrows)
        assert rank_int(cols) == dense_rank_q(dense)
        masks = [
            sum(1 << r for r, v in col.items() if v % 2) for col in cols
        ]
        assert rank_gf2(masks) == dense_rank_gf2(dense)
        assert len(snf_diagonal(cols)) == dense_rank_q(dense)


def test_snf_matches_dense_oracle_random():
    rng = random.Random(32)
    for _ in range(30):
        nrows = rng.randrange(1, 6)
        ncols = rng.randrange(1, 6)
        cols = []
        for _ in range(ncols):
            col = {r: rng.randrange(-6, 7) for r in range(nrows)}
            cols.append({r: v for r, v in col.items() if v})
        dense = cols_to_dense(cols, nrows)
        assert snf_diagonal(cols) == dense_snf(dense)


def test_chain_property_random_complexes():
    rng = random.Random(33)
    for _ in range(15):
        c = random_flag(rng)
        assert verify_chain_property(c)


def test_betti_four_cycle():
    c = flag_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)], dim_cap=2)
    assert betti_numbers(c, "Q", 1).b == (1, 1)
    assert betti_numbers(c, "GF2", 1).b == (1, 1)


def test_betti_single_simplex_is_cone():
    c = flag_complex(5, list(combinations(range(5), 2)), dim_cap=5)
    assert betti_numbers(c, "Q", 3).b == (1, 0, 0, 0)


def test_betti_insufficient_cap():
    c = flag_complex(3, [(0, 1), (1, 2), (0, 2)], dim_cap=2)
    with pytest.raises(InsufficientDimCap):
        betti_numbers(c, "Q", 2)


def test_betti_matches_dense_oracle_random():
    rng = random.Random(34)
    for _ in range(20):
        c = random_flag(rng, dim_cap=4)
        top = min(2, c.dim_cap - 1)
        for field in ("Q", "GF2"):
            got = betti_numbers(c, field, top).b
            want = homology_profile(c.simplices, top, field)
            assert got == want, (c.counts(), field)


def test_gf2_betti_dominates_rational_random():
    rng = random.Random(35)
    for _ in range(20):
        c = random_flag(rng, dim_cap=4)
        q = betti_numbers(c, "Q", 2).b
        g = betti_numbers(c, "GF2", 2).b
        assert all(gk >= qk for gk, qk in zip(g, q))


def test_euler_poincare_identity_random():
    rng = random.Random(36)
    for _ in range(15):
        n = rng.randrange(3, 7)
        edges = {(i, j) for i, j in combinations(range(n), 2) if rng.random() < 0.5}
        c = flag_complex(n, edges, dim_cap=n)  # fully materialized
        top = c.dim()
        b = betti_numbers(c, "Q", top if top + 1 <= c.dim_cap else top).b
        chi = sum((-1) ** k * bk for k, bk in enumerate(b))
        assert chi == c.euler_characteristic()


def test_integer_h1_four_cycle():
    c = flag_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)], dim_cap=2)
    h = integer_h1(c)
    assert h.rank == 1 and h.torsion == ()


def test_integer_h1_projective_plane():
    c = explicit_complex(6, [[], [], RP2_TRIANGLES])
    # closed-surface sanity on the frozen fixture
    from collections import Counter

    edge_use = Counter()
    for t in RP2_TRIANGLES:
        for e in combinations(t, 2):
            edge_use[e] += 1
    assert all(v == 2 for v in edge_use.values()) and len(edge_use) == 15
    assert c.euler_characteristic() == 1

    h = integer_h1(c)
    assert h.rank == 0
    assert h.torsion == (2,)


def test_integer_h1_matches_snf_oracle_random():
    rng = random.Random(37)
    for _ in range(15):
        c = random_flag(rng)
        h = integer_h1(c)
        from oracles import dense_boundary

        d2 = dense_boundary(c.k_simplices(2), c.k_simplices(1))
        diag = dense_snf(d2) if c.k_simplices(2) else []
        n1 = len(c.k_simplices(1))
        r1 = len(c.vertices) - len(c.components())
        assert h.rank == n1 - r1 - len(diag)
        assert list(h.torsion) == [d for d in diag if d > 1]


def test_cycle_basis_is_made_of_cycles():
    rng = random.Random(38)
    for _ in range(15):
        c = random_flag(rng)
        edge_index = {e: i for i, e in enumerate(c.edges)}
        d1 = boundary_matrix(c, 1)
        for col in cycle_basis_columns(c, edge_index):
            acc = {}
            for e_row, coeff in col.items():
                for r, v in d1.columns[e_row].items():
                    acc[r] = acc.get(r, 0) + coeff * v
            assert all(v == 0 for v in acc.values())
        assert len(cycle_basis_columns(c, edge_index)) == len(c.edges) - len(
            c.vertices
        ) + len(c.components())


def test_induced_rank_cone_kills():
    square = flag_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)], dim_cap=2)
    coned = flag_complex(
        5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)], dim_cap=2
    )
    assert induced_h1_rank(square, coned) == 0


def test_induced_rank_identity_is_b1():
    rng = random.Random(39)
    for _ in range(10):
        c = random_flag(rng)
        assert induced_h1_rank(c, c) == betti_numbers(c, "Q", 1).b[1]


def test_induced_rank_containment_error():
    a = flag_complex(3, [(0, 1), (1, 2), (0, 2)], dim_cap=2)
    b = flag_complex(3, [(0, 1), (1, 2)], dim_cap=2)
    with pytest.raises(ContainmentError):
        induced_h1_rank(a, b)


def test_induced_rank_bound_and_monotone_random():
    rng = random.Random(40)
    for _ in range(12):
        n = rng.randrange(4, 8)
        all_edges = sorted(
            (i, j) for i, j in combinations(range(n), 2) if rng.random() < 0.7
        )
        rng.shuffle(all_edges)
        cut1 = rng.randrange(0, len(all_edges) + 1)
        cut2 = rng.randrange(cut1, len(all_edges) + 1)
        sub = flag_complex(n, all_edges[:cut1], dim_cap=3)
        mid = flag_complex(n, all_edges[:cut2], dim_cap=3)
        sup = flag_complex(n, all_edges, dim_cap=3)
        r_sub_sup = induced_h1_rank(sub, sup)
        b1s = betti_numbers(sub, "Q", 1).b[1]
        b1t = betti_numbers(sup, "Q", 1).b[1]
        assert r_sub_sup <= min(b1s, b1t)
        assert r_sub_sup <= induced_h1_rank(sub, mid)
        assert r_sub_sup <= induced_h1_rank(mid, sup)


def test_induced_rank_ring_hole_survives():
    from ripshadow.fixtures import annulus_ring_points

    ring = annulus_ring_points()
    low = build_rips(ring, F(7, 10), dim_cap=3)
    high = build_rips(ring, F(19, 10), dim_cap=3)
    assert betti_numbers(low, "Q", 1).b[1] == 1
    assert betti_numbers(high, "Q", 1).b[1] == 1
    assert induced_h1_rank(low, high) == 1


def test_induced_rank_torsion_class_dies_in_cone():
    # an RP2-like lower complex maps into its cone with zero H1 image
    rp2 = explicit_complex(6, [[], [], RP2_TRIANGLES])
    cone_tris = list(RP2_TRIANGLES) + [
        (i, j, 6) for i, j in combinations(range(6), 2)
    ]
    cone = explicit_complex(7, [[], [], cone_tris])
    assert integer_h1(cone).rank == 0 and integer_h1(cone).torsion == ()
    assert induced_h1_rank(rp2, cone) == 0
