"""Minimum distance of linear codes over small fields.

Three routes:

* :func:`exhaustive_min_distance` walks every message with numpy and is the
  independent oracle for small codes.
* :func:`trial_distance` is the cheap screen: the least weight among
  combinations of at most ``r`` generator rows.  It is an upper bound.
* :func:`bz_min_distance` enumerates low-weight messages on a family of
  systematic generator matrices with disjoint information sets, raising a
  certified lower bound until it meets the best codeword found.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .gf import FieldTable
from .toric import GeneratorMatrix, encode, rank, row_reduce, vec_mat, weight

log = logging.getLogger(__name__)

EXHAUSTIVE_BUDGET = 2 ** 32
BZ_BUDGET = 10 ** 13
# scans smaller than this are not worth a thread pool
PARALLEL_MIN = 1 << 22


class BudgetExceededError(RuntimeError):
    pass


class RankDeficientError(ValueError):
    pass


class WitnessError(AssertionError):
    pass


@dataclass(frozen=True)
class DistanceResult:
    status: str                 # "exact" | "bracketed"
    lower: int
    upper: int
    witness: tuple[int, ...]    # coefficients on the generator rows
    work: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound %d above upper bound %d" % (self.lower, self.upper))
        if self.status == "exact" and self.lower != self.upper:
            raise ValueError("exact result with lower != upper")

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @property
    def d(self) -> int | None:
        return self.upper if self.exact else None

    def to_dict(self) -> dict:
        return {"status": self.status, "lower": self.lower, "upper": self.upper,
                "witness": list(self.witness), "work": self.work}


@dataclass(frozen=True)
class TrialBound:
    r: int
    bound: int
    witness: tuple[int, ...]
    work: int


def check_witness(M: GeneratorMatrix, coefficients, claimed: int) -> None:
    """Re-encode ``coefficients`` through ``M`` and confirm the weight."""
    c = encode(M.field, coefficients, M.rows)
    if not any(coefficients) or weight(c) != claimed:
        raise WitnessError("witness re-encodes to weight %d, claimed %d"
                           % (weight(c), claimed))


# -- exhaustive oracle -------------------------------------------------------

def _span(f: FieldTable, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ``q^k`` combinations of ``rows``: ``(digits, codewords)``, message
    ``i`` having digit ``(i // q^r) % q`` on row ``r``."""
    q = f.q
    k, n = rows.shape
    msg = np.arange(q ** k, dtype=np.int64)
    digits = (msg[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q
    c = np.zeros((len(msg), n), dtype=np.uint8)
    for i in range(k):
        c = f.add_table[c, f.mul_table[digits[:, i:i + 1], rows[i][None, :]]]
    return digits, c


def _codeword_blocks(M: GeneratorMatrix, block: int = 1 << 22):
    """Every codeword, meet-in-the-middle: sums of a span vector of the first
    half of the rows and one of the second half.  Yields ``(a, wts)`` with
    ``wts[j]`` the weight of ``A[a] + B[j]`` for a block of ``a`` values."""
    f = M.field
    k1 = M.k // 2
    dA, A = _span(f, M.rows[:k1])
    dB, B = _span(f, M.rows[k1:])
    negA = f.neg_table[A]
    step = max(1, block // (len(B) * M.n))
    for a0 in range(0, len(A), step):
        # a + b is nonzero exactly where b != -a
        yield a0, np.count_nonzero(B[None, :, :] != negA[a0:a0 + step, None, :], axis=2), dA, dB


def exhaustive_min_distance(M: GeneratorMatrix, budget: int = EXHAUSTIVE_BUDGET) -> DistanceResult:
    total = M.q ** M.k
    if total > budget:
        raise BudgetExceededError("q^k = %d exceeds the exhaustive budget %d" % (total, budget))
    best, wit = M.n + 1, None
    for a0, wts, dA, dB in _codeword_blocks(M):
        if a0 == 0:
            wts[0, 0] = M.n + 1          # the zero message
        i = np.unravel_index(int(np.argmin(wts)), wts.shape)
        if wts[i] < best:
            best = int(wts[i])
            wit = tuple(int(x) for x in np.concatenate([dA[a0 + i[0]], dB[i[1]]]))
    check_witness(M, wit, best)
    return DistanceResult("exact", best, best, wit, total - 1)


def weight_distribution(M: GeneratorMatrix, budget: int = EXHAUSTIVE_BUDGET) -> np.ndarray:
    """``A[w]`` = number of codewords of weight ``w`` (full enumeration)."""
    if M.q ** M.k > budget:
        raise BudgetExceededError("q^k exceeds the exhaustive budget")
    A = np.zeros(M.n + 1, dtype=np.int64)
    for _, wts, _, _ in _codeword_blocks(M):
        A += np.bincount(wts.ravel(), minlength=M.n + 1)
    return A


# -- packed enumeration -------------------------------------------------------

class Packed:
    """Rows of a matrix laid out for the compiled scanners."""

    def __init__(self, f: FieldTable, rows: np.ndarray):
        self.f = f
        self.k, self.n = rows.shape
        mults = f.mul_table[np.arange(f.q)[None, :, None], rows[:, None, :]]  # (k, q, n)
        self.char2 = f.p == 2 and self.n <= 64
        if self.char2:
            planes = np.zeros((self.k, f.q, 3), dtype=np.uint64)
            weights = np.uint64(1) << np.arange(self.n, dtype=np.uint64)
            for p in range(f.e):
                bits = ((mults >> p) & 1).astype(np.uint64)
                planes[:, :, p] = (bits * weights).sum(axis=2, dtype=np.uint64)
            self.rows = planes
        else:
            self.rows = np.ascontiguousarray(mults)

    def scan(self, w: int, stop_at: int, best: int, lo: int = 0, hi: int | None = None):
        hi = self.k if hi is None else hi
        bi = np.zeros(max(self.k, 1), dtype=np.int64)
        bc = np.zeros(max(self.k, 1), dtype=np.int64)
        if self.char2:
            cur, cnt = kernels.scan_char2(self.rows, w, lo, hi, stop_at, best, bi, bc)
        else:
            cur, cnt = kernels.scan_generic(self.rows, self.f.add_table, w, lo, hi,
                                            stop_at, best, bi, bc)
        msg = None
        if cur < best:
            msg = np.zeros(self.k, dtype=np.uint8)
            msg[bi[:w]] = bc[:w]
        return int(cur), int(cnt), msg


def default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def _scan(packed: Packed, w: int, stop_at: int, best: int, threads: int):
    """Scan all weight-``w`` messages, optionally across threads split by the
    first support index; ties keep the lowest first index."""
    if threads <= 1 or packed.k - w + 1 <= 1 or enumeration_cost(packed.k, w, packed.f.q) < PARALLEL_MIN:
        return packed.scan(w, stop_at, best)
    starts = range(0, packed.k - w + 1)
    with ThreadPoolExecutor(threads) as ex:
        parts = list(ex.map(lambda i0: packed.scan(w, stop_at, best, i0, i0 + 1), starts))
    cur, cnt, msg = best, 0, None
    for c, n_, m in parts:
        cnt += n_
        if m is not None and c < cur:
            cur, msg = c, m
    return cur, cnt, msg


def enumeration_cost(k: int, w: int, q: int) -> int:
    return comb(k, w) * (q - 1) ** (w - 1) if 1 <= w <= k else 0


def trial_distance(M: GeneratorMatrix, r: int = 4, stop_at: int = -1,
                   threads: int = 1) -> TrialBound:
    """Least weight over nonzero combinations of at most ``r`` rows.

    With ``stop_at`` the scan ends as soon as some weight ``<= stop_at`` is
    seen; the returned bound is then that weight.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    packed = Packed(M.field, np.asarray(M.rows))
    best, wit, work = M.n + 1, None, 0
    for w in range(1, min(r, M.k) + 1):
        cur, cnt, msg = _scan(packed, w, stop_at, best, threads)
        work += cnt
        if msg is not None:
            best, wit = cur, tuple(int(x) for x in msg)
        if best <= stop_at:
            break
    check_witness(M, wit, best)
    return TrialBound(r, best, wit, work)


# -- information-set enumeration ---------------------------------------------

@dataclass(frozen=True, eq=False)
class InfoSet:
    rows: np.ndarray        # systematic generator of the same code
    transform: np.ndarray   # rows = transform @ M.rows
    rank: int
    columns: tuple[int, ...]


def _greedy_sets(M: GeneratorMatrix, order) -> list[InfoSet]:
    f = M.field
    remaining = list(order)
    out = []
    while remaining:
        R, T, piv = row_reduce(f, M.rows, remaining)
        if not piv:
            break
        out.append(InfoSet(R, T, len(piv), tuple(piv)))
        used = set(piv)
        remaining = [c for c in remaining if c not in used]
    return out


def information_sets(M: GeneratorMatrix, tries: int = 64, seed: int = 0) -> list[InfoSet]:
    """Disjoint information sets chosen greedily; the last may have partial
    rank.  Besides the natural column order, ``tries`` seeded random orders
    are tried and the lexicographically largest rank profile kept."""
    best = _greedy_sets(M, range(M.n))
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        if all(s.rank == M.k for s in best[:-1]) and M.n - M.k * (len(best) - 1) == best[-1].rank:
            break
        cand = _greedy_sets(M, rng.permutation(M.n))
        if [s.rank for s in cand] > [s.rank for s in best]:
            best = cand
    return best


def bz_lower_bound(k: int, ranks: list[int], w: int, j: int) -> int:
    """Certified bound once every message of weight ``<= w`` has been
    enumerated on matrices ``0..j`` and of weight ``<= w-1`` on the rest."""
    lo = 0
    for i, r in enumerate(ranks):
        lo += max(0, (w + 1 if i <= j else w) - (k - r))
    return lo


def bz_min_distance(M: GeneratorMatrix, budget: int = BZ_BUDGET, target: int | None = None,
                    exact: bool = False, threads: int = 1, progress=None) -> DistanceResult:
    """Minimum distance by enumeration over disjoint information sets.

    Returns an exact result when the lower bound meets the best codeword
    weight.  With ``target`` the search also stops once it is decided whether
    the distance exceeds ``target`` (lower > target, or a codeword of weight
    <= target); with ``exact`` as well, only the second outcome stops early.
    Exhausting ``budget`` codeword evaluations gives a bracketed result.
    """
    k, n, q = M.k, M.n, M.q
    if rank(M) != k:
        raise RankDeficientError("generator matrix has rank below its %d rows" % k)
    f = M.field
    sets = information_sets(M)
    ranks = [s.rank for s in sets]
    packed = [Packed(f, s.rows) for s in sets]
    upper, witness, work = n + 1, None, 0
    lower = max(1, bz_lower_bound(k, ranks, 0, len(sets) - 1))

    def result(status):
        lo = upper if status == "exact" else min(lower, upper)
        check_witness(M, witness, upper)
        return DistanceResult(status, lo, upper, witness, work)

    def decided():
        if lower >= upper:
            return "exact"
        if target is not None and (upper <= target or (lower > target and not exact)):
            return "bracketed"
        return None

    for w in range(1, k + 1):
        for j, (s, pk) in enumerate(zip(sets, packed)):
            if (w + 1) - (k - s.rank) <= 0 and not (w == k and j == 0):
                continue
            cost = enumeration_cost(k, w, q)
            if work + cost > budget:
                if witness is None:
                    # never leave without a codeword: take the best single row
                    cur, cnt, msg = packed[0].scan(1, -1, n + 1)
                    work += cnt
                    upper, witness = cur, tuple(int(x) for x in vec_mat(f, msg, sets[0].transform))
                return result("bracketed")
            stop_at = max(lower, target if target is not None else -1)
            cur, cnt, msg = _scan(pk, w, stop_at, upper, threads)
            work += cnt
            if msg is not None and cur < upper:
                upper = cur
                witness = tuple(int(x) for x in vec_mat(f, msg, s.transform))
            if cur > stop_at:
                # the unit ran to completion
                lower = max(lower, bz_lower_bound(k, ranks, w, j))
                if w == k:
                    lower = upper
            if progress is not None:
                progress(w, j, lower, upper, work)
            state = decided()
            if state:
                return result(state)
    lower = upper
    return result("exact")


def min_distance(M: GeneratorMatrix, **kw) -> DistanceResult:
    return bz_min_distance(M, **kw)
