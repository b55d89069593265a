from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtoric import distance
from gtoric.distance import (BudgetExceededError, Packed, RankDeficientError, WitnessError,
                             bz_lower_bound, bz_min_distance, check_witness,
                             exhaustive_min_distance, information_sets, trial_distance,
                             weight_distribution)
from gtoric.gf import make_field
from gtoric.toric import GeneratorMatrix, encode, generator_matrix, rank

from oracles import codewords, min_distance_bruteforce


def random_code(q, k, n, seed):
    """A random full-rank ``k x n`` generator matrix over GF(q)."""
    rng = np.random.default_rng(seed)
    while True:
        rows = rng.integers(0, q, size=(k, n)).astype(np.uint8)
        if rank(rows, q) == k:
            return GeneratorMatrix(q, rows)


def toric_code(q, S):
    return generator_matrix(S, q)


def box_sets(side, hi):
    return st.sets(st.tuples(st.integers(0, side), st.integers(0, side)), min_size=1, max_size=hi)


# -- kernels ------------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("w", [1, 2, 3])
def test_scan_counts_and_minimum(q, w):
    f = make_field(q)
    M = random_code(q, 5, 11, seed=q * 10 + w)
    pk = Packed(f, M.rows)
    best, cnt, msg = pk.scan(w, -1, M.n + 1)
    assert cnt == comb(5, w) * (q - 1) ** (w - 1)
    brute = min(sum(1 for x in c if x) for m, c in codewords(f, M.rows)
                if sum(1 for x in m if x) == w)
    assert best == brute
    assert np.count_nonzero(msg) == w
    assert np.count_nonzero(encode(f, msg, M.rows)) == best


def test_scan_first_index_split():
    f = make_field(8)
    M = random_code(8, 7, 20, seed=3)
    pk = Packed(f, M.rows)
    whole = pk.scan(3, -1, M.n + 1)
    parts = [pk.scan(3, -1, M.n + 1, i, i + 1) for i in range(7)]
    assert sum(p[1] for p in parts) == whole[1]
    assert min(p[0] for p in parts) == whole[0]


def test_scan_stop_at():
    M = random_code(4, 6, 12, seed=1)
    pk = Packed(M.field, M.rows)
    full, cnt_full, _ = pk.scan(2, -1, M.n + 1)
    best, cnt, _ = pk.scan(2, M.n, M.n + 1)
    assert cnt == 1 and best <= M.n
    assert cnt_full > cnt


# -- exhaustive oracle ----------------------------------------------------------

@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_exhaustive_matches_pure_python(q, k, seed):
    M = random_code(q, k, k + 4, seed)
    assert exhaustive_min_distance(M).upper == min_distance_bruteforce(M.field, M.rows)
    A = weight_distribution(M)
    brute = np.bincount([sum(1 for x in c if x) for _, c in codewords(M.field, M.rows)],
                        minlength=M.n + 1)
    assert A.tolist() == brute.tolist()
    assert A.sum() == q ** k and A[0] == 1


def test_exhaustive_budget():
    M = random_code(5, 6, 10, seed=0)
    with pytest.raises(BudgetExceededError):
        exhaustive_min_distance(M, budget=1000)


# -- information-set enumeration -------------------------------------------

@given(st.sampled_from([3, 4, 5]), st.data())
@settings(max_examples=60, deadline=None)
def test_bz_matches_exhaustive_on_toric_codes(q, data):
    S = data.draw(box_sets(q - 2, min(9, (q - 1) ** 2)))
    M = toric_code(q, S)
    ref = exhaustive_min_distance(M)
    got = bz_min_distance(M)
    assert got.exact and got.upper == ref.upper
    check_witness(M, got.witness, got.upper)
    assert trial_distance(M).bound >= ref.upper
    assert trial_distance(M, r=M.k).bound == ref.upper


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=80, deadline=None)
def test_bz_matches_exhaustive_on_random_codes(q, k, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(k, 3 * k + 4))
    M = random_code(q, k, n, seed)
    if q ** k > 2 ** 20:
        pytest.skip("too large for the oracle")
    assert bz_min_distance(M).upper == exhaustive_min_distance(M).upper


@given(st.sampled_from([4, 5]), st.data())
@settings(max_examples=40, deadline=None)
def test_target_mode(q, data):
    S = data.draw(box_sets(q - 2, 8))
    M = toric_code(q, S)
    d = exhaustive_min_distance(M).upper
    T = data.draw(st.integers(1, M.n))
    r = bz_min_distance(M, target=T)
    assert r.lower <= d <= r.upper
    if r.upper <= T:
        assert d <= T
    else:
        assert r.lower > T
    r = bz_min_distance(M, target=T, exact=True)
    assert r.exact or r.upper <= T
    if r.exact:
        assert r.upper == d


def test_budget_gives_bracket():
    M = random_code(8, 10, 40, seed=5)
    d = bz_min_distance(M).upper
    r = bz_min_distance(M, budget=50)
    assert r.status == "bracketed"
    assert r.lower <= d <= r.upper
    check_witness(M, r.witness, r.upper)


def test_small_examples():
    assert bz_min_distance(generator_matrix([(0, 0)], 4)).upper == 9
    assert bz_min_distance(generator_matrix([(0, 0), (1, 0), (0, 1), (1, 1)], 4)).upper == 4
    assert bz_min_distance(generator_matrix([(0, 0), (1, 0)], 5)).upper == 12


def test_rank_deficient():
    rows = np.array([[1, 2, 3], [1, 2, 3]], dtype=np.uint8)
    with pytest.raises(RankDeficientError):
        bz_min_distance(GeneratorMatrix(4, rows))


def test_witness_check_rejects_wrong_claims():
    M = generator_matrix([(0, 0), (1, 0)], 5)
    with pytest.raises(WitnessError):
        check_witness(M, (1, 0), 15)
    with pytest.raises(WitnessError):
        check_witness(M, (0, 0), 0)
    check_witness(M, (1, 0), 16)


def test_information_sets_are_disjoint():
    M = generator_matrix([(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (3, 3)], 5)
    sets = information_sets(M)
    cols = [c for s in sets for c in s.columns]
    assert len(cols) == len(set(cols))
    assert sets[0].rank == M.k
    for s in sets:
        TA = np.array([encode(M.field, s.transform[i], M.rows) for i in range(M.k)])
        assert (TA == s.rows).all()
        assert rank(s.transform, M.q) == M.k


def test_lower_bound_formula():
    # two full-rank sets and a partial one of rank 3, k = 5
    assert bz_lower_bound(5, [5, 5, 3], 1, 0) == 2 + 1 + 0
    assert bz_lower_bound(5, [5, 5, 3], 1, 2) == 2 + 2 + 0
    assert bz_lower_bound(5, [5, 5, 3], 3, 2) == 4 + 4 + 2


def test_threads_agree(monkeypatch):
    monkeypatch.setattr(distance, "PARALLEL_MIN", 1)
    M = random_code(8, 8, 30, seed=11)
    a = bz_min_distance(M, threads=1)
    b = bz_min_distance(M, threads=3)
    assert (a.upper, a.lower) == (b.upper, b.lower)
    assert trial_distance(M, threads=3).bound == trial_distance(M).bound
