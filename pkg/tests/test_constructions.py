import itertools
import math

import numpy as np
import pytest

import iblt_lffz as L
from iblt_lffz import constructions as C
from iblt_lffz.oracle import is_d_decodable, is_d_fpf, stopping_distance


def _weights(mat):
    return {len(mat.column_rows(i)) for i in range(1, mat.n + 1)}


def test_identity_family():
    eye = L.identity_family(5, 5)
    assert (eye.materialize().dense == np.eye(5, dtype=np.uint8)).all()
    plus = L.identity_family(6, 4)
    assert plus.m == 5
    assert plus.column_rows(6) == (0, 1, 2, 3, 4)
    assert is_d_decodable(plus, 5)[0]


def test_unique_columns_small():
    mat = L.unique_columns(3)
    assert mat.m == 2
    cols = [tuple(mat.column(i)) for i in range(1, 4)]
    assert cols == [(0, 1), (1, 0), (1, 1)]
    assert is_d_decodable(L.unique_columns(20), 2)[0]


def test_unique_columns_weight_k():
    mat = L.unique_columns_weight_k(6, 2)
    assert mat.m == 4  # C(4,2) = 6
    seen = {mat.column_rows(i) for i in range(1, 7)}
    assert len(seen) == 6
    assert _weights(mat) == {2}
    assert is_d_decodable(mat, 2)[0]
    # colex: pair containing the largest new point comes last
    assert mat.column_rows(1) == (0, 1)
    assert mat.column_rows(6) == (2, 3)


def test_egh_prime_selection():
    assert L.egh(16, 3).spec.extras_dict["primes"] == (2, 3, 5, 7, 11)
    assert L.egh(16, 3).m == 28
    spec = L.egh(381, 4).spec
    assert spec.extras_dict["primes"] == (2, 3, 5, 7, 11, 13, 17, 19, 23)
    assert L.egh(381, 4).m == 100
    # exact big-int threshold: product of 8 primes misses 381^3
    assert 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 < 381 ** 3


def test_egh_properties():
    mat = L.egh(30, 3)
    assert is_d_fpf(mat, 2)
    assert is_d_decodable(mat, 3)[0]
    # residues: element u sits at row u mod q within each block
    assert mat.spec.extras_dict["primes"] == (2, 3, 5, 7, 11)
    assert mat.column_rows(7) == (7 % 2, 2 + 7 % 3, 5 + 7 % 5,
                                  10 + 7 % 7, 17 + 7 % 11)


def test_ols_structure():
    mat = L.ols(25, 3)
    assert mat.m == 15 and mat.spec.extras_dict["q"] == 5
    assert _weights(mat) == {3}
    # any two columns share at most one row
    for a, b in itertools.combinations(range(1, 26), 2):
        shared = set(mat.column_rows(a)) & set(mat.column_rows(b))
        assert len(shared) <= 1
    assert is_d_decodable(mat, 3)[0]


def test_ols_extra_block_and_limit():
    mat = L.ols(9, 4)  # q = 3, d = q + 1 uses the b-row block
    assert mat.m == 12
    assert is_d_decodable(mat, 4)[0]
    with pytest.raises(ValueError):
        L.ols(9, 5)


def test_array_code():
    mat = L.array_code(5, 2)
    assert (mat.m, mat.n, mat.spec.d) == (10, 25, 3)
    assert is_d_decodable(mat, 3)[0]
    with pytest.raises(ValueError):
        L.array_code(4, 2)
    with pytest.raises(ValueError):
        L.array_code(3, 4)
    with pytest.raises(ValueError):
        L.array_code(5, 5)


def test_bch_complement():
    mat = L.bch_complement(4)
    assert (mat.m, mat.n) == (16, 15)
    assert _weights(mat) == {8}
    assert is_d_decodable(mat, 4)[0]
    # bottom half is the complement of the top half
    dense = mat.materialize().dense
    assert ((dense[:8] + dense[8:]) == 1).all()


def test_bipartite_weight2():
    mat = L.bipartite_weight2(25)
    assert mat.m == 10
    assert _weights(mat) == {2}
    # all columns cross the halves: one row < 5, one >= 5
    for i in range(1, 26):
        a, b = mat.column_rows(i)
        assert a < 5 <= b
    assert is_d_decodable(mat, 3)[0]
    assert stopping_distance(L.bipartite_weight2(12), max_d=4).distance == 4


def test_steiner_triple():
    mat = L.steiner_triple(12)
    assert mat.m == 9
    assert _weights(mat) == {3}
    assert is_d_decodable(mat, 3)[0]
    # next size up when 12 blocks are not enough
    assert L.steiner_triple(13).m == 15


def test_inversive_plane():
    mat = L.inversive_plane(3)
    assert (mat.m, mat.n, mat.spec.k) == (10, 30, 4)
    assert _weights(mat) == {4}
    assert is_d_decodable(mat, 2)[0]
    # any three points lie in exactly one circle
    cover = {}
    for i in range(1, 31):
        for triple in itertools.combinations(mat.column_rows(i), 3):
            cover[triple] = cover.get(triple, 0) + 1
    assert set(cover.values()) == {1}
    assert len(cover) == math.comb(10, 3)
    with pytest.raises(ValueError):
        L.inversive_plane(6)


def test_recursive_a_row_counts():
    assert C.rows_recursive_a(381, 5) == 64
    # forced doubling recurrence reproduces 2*ceil(log2 n) - 1
    for n in range(5, 200):
        assert C.rows_recursive_a(n, 3, 2) == 2 * (n - 1).bit_length() - 1
    # the free search never does worse
    assert C.rows_recursive_a(9, 3) <= 6


def test_recursive_a_decodable():
    for n, d in [(40, 3), (25, 4), (20, 5)]:
        mat = L.recursive_a(n, d)
        assert is_d_decodable(mat, d)[0]
    forced = L.recursive_a(33, 3, force_i=2)
    assert forced.m == 2 * 6 - 1
    assert is_d_decodable(forced, 3)[0]
    with pytest.raises(ValueError):
        L.recursive_a(10, 2)


def test_recursive_b_capacities():
    assert [L.recursive_b_cols(m) for m in range(3, 10)] == \
        [4, 7, 11, 17, 25, 37, 54]
    mat = L.recursive_b(54)
    assert mat.m == 9
    assert is_d_decodable(mat, 3)[0]
    assert L.recursive_b(55).m == 10


def test_recursive_b_matches_row_bound():
    for n in [10, 100, 1000, 10 ** 6]:
        m = C.rows_recursive_b(n)
        assert m <= math.ceil(3 / math.log2(3) * math.log2(n))


def test_recursive_c():
    mat = L.recursive_c(25, 3, 3)
    assert _weights(mat) == {3}
    assert is_d_decodable(mat, 3)[0]
    mat5 = L.recursive_c(30, 3, 5)
    assert _weights(mat5) == {5}
    assert is_d_decodable(mat5, 3)[0]
    # weight 1 cannot reach d >= 3 beyond the identity regime
    with pytest.raises(ValueError):
        L.recursive_c(10, 3, 1)
    assert L.recursive_c(3, 3, 1).m == 3


def test_covering_array_random():
    mat = L.covering_array_random(16, 3, seed=1)
    assert mat.m == math.ceil(3 * math.log2(16) / math.log2(8 / 7))
    assert is_d_decodable(mat, 3)[0]
    # deterministic relative to (seed, retry)
    again = L.covering_array_random(16, 3, seed=1)
    assert (again.materialize().dense == mat.materialize().dense).all()
    assert again.spec.extras_dict["retry"] == mat.spec.extras_dict["retry"]


def test_trim_keeps_prefix():
    big = L.recursive_b(54).materialize().dense
    small = L.recursive_b(54)  # same m as n=40 would trim from
    trimmed = L.recursive_b(40)
    if trimmed.m == small.m:
        assert (trimmed.materialize().dense == big[:, :40]).all()
    sts_full = L.steiner_triple(12).materialize().dense
    assert (L.steiner_triple(7).materialize().dense == sts_full[:, :7]).all()


def test_build_round_trip():
    for mat in [L.egh(20, 3), L.ols(25, 3), L.recursive_a(40, 3),
                L.recursive_b(30), L.recursive_c(20, 3, 3),
                L.steiner_triple(10), L.bipartite_weight2(18),
                L.bch_complement(4), L.array_code(5, 2),
                L.inversive_plane(3, 20), L.unique_columns(12),
                L.unique_columns_weight_k(10, 3), L.identity_family(6, 4),
                L.covering_array_random(8, 2, seed=0)]:
        rebuilt = L.build(mat.spec)
        assert (rebuilt.materialize().dense
                == mat.materialize().dense).all(), mat.spec
