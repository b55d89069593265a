import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtoric.champions import TABLE1
from gtoric.gf import make_field
from gtoric.toric import (CodeProfile, FieldTooSmallError, dimension, encode, generator_matrix,
                          rank, row_reduce, weight)

from oracles import codewords


def test_single_point_is_all_ones():
    M = generator_matrix([(0, 0)], 4)
    assert M.rows.tolist() == [[1] * 9]
    assert M.n == 9 and M.k == 1


def test_entry_formula_example():
    # a lone point would be translated to the origin; (0,0) pins (2,3) in place
    M = generator_matrix([(0, 0), (2, 3)], 8)
    f = make_field(8)
    col = 1 * 7 + 1
    assert M.rows[1, col] == f.exp[5]


@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.data())
@settings(max_examples=60, deadline=None)
def test_entries_and_full_rank(q, data):
    side = q - 2
    S = data.draw(st.sets(st.tuples(st.integers(0, side), st.integers(0, side)),
                          min_size=1, max_size=min(8, (side + 1) ** 2)))
    M = generator_matrix(S | {(0, 0)}, q)
    f = make_field(q)
    assert M.n == (q - 1) ** 2
    assert (M.rows != 0).all()
    for r, (a, b) in enumerate(M.row_points):
        for i in range(q - 1):
            for j in range(q - 1):
                assert M.rows[r, i * (q - 1) + j] == f.exp[(a * i + b * j) % (q - 1)]
    assert rank(M) == M.k
    assert list(M.row_points) == sorted(M.row_points)


def test_rank_matches_codeword_count():
    f = make_field(4)
    M = generator_matrix([(0, 0), (1, 0), (0, 1), (1, 1)], 4)
    assert rank(M) == 4
    assert len({c for _, c in codewords(f, M.rows)}) == 4 ** 4


@given(st.sampled_from([2, 3, 4, 5]), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=80, deadline=None)
def test_row_reduce_random(q, seed):
    rng = np.random.default_rng(seed)
    f = make_field(q)
    k, n = int(rng.integers(1, 5)), int(rng.integers(1, 7))
    A = rng.integers(0, q, size=(k, n)).astype(np.uint8)
    R, T, piv = row_reduce(f, A)
    # R = T A over the field
    TA = np.array([encode(f, T[i], A) for i in range(k)])
    assert (TA == R).all()
    # the span has q^rank elements
    assert len({c for _, c in codewords(f, A)}) == q ** len(piv)
    for i, c in enumerate(piv):
        assert R[i, c] == 1 and np.count_nonzero(R[:, c]) == 1


def test_table_row_dimension():
    M = generator_matrix(TABLE1[0].points, 8)
    assert dimension(M) == 13
    M = generator_matrix(TABLE1[0].points[1:], 8)
    assert dimension(M) == 12


def test_field_too_small():
    with pytest.raises(FieldTooSmallError):
        generator_matrix([(0, 0), (7, 0)], 8)
    with pytest.raises(FieldTooSmallError):
        generator_matrix([(0, 0), (3, 0)], 4)


def test_weight():
    assert weight(np.ones(9)) == 9
    assert weight(np.zeros(9)) == 0
    M = generator_matrix([(0, 0), (1, 2), (2, 1)], 5)
    assert all(weight(r) == 16 for r in M.rows)


def test_profile_parse():
    p = CodeProfile.parse("[49,13,27]")
    assert p == CodeProfile(49, 13, 27) and str(p) == "[49,13,27]"


def test_dump_header():
    M = generator_matrix([(0, 0), (1, 0)], 3)
    lines = M.dump().splitlines()
    assert lines[0] == "3 2 4"
    # row x, columns (i,j) in row-major order: g^i
    assert lines[2].split() == ["1", "1", "2", "2"]
