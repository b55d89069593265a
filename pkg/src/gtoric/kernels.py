"""Compiled codeword-enumeration kernels.

Both kernels enumerate every message with exactly ``w`` nonzero coefficients
whose first nonzero coefficient is 1 (scalar multiples have equal weight),
walking supports depth-first with one partial sum per level so each
enumerated codeword costs a single vector addition plus a weight count.

``scan_char2`` works on bit-sliced rows: ``rows[i, a, p]`` is bit-plane ``p``
of ``a * row_i`` packed in one 64-bit word (so ``n <= 64``).  There are
always three planes; GF(2) and GF(4) leave the upper planes zero.  Addition in
characteristic 2 is XOR and the weight is the popcount of the OR of planes.

``scan_generic`` works on symbol rows ``rows[i, a, :]`` with an addition
table; it serves the odd-characteristic fields.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.extending import intrinsic


@intrinsic
def _ctpop(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@njit(cache=True)
def popcount64(x):
    return _ctpop(np.uint64(x))


@njit(cache=True, nogil=True)
def scan_char2(rows, w, lo, hi, stop_at, best_w, best_idx, best_co):
    """Return ``(best weight, codewords evaluated)``.

    ``best_idx``/``best_co`` receive the ``w`` support indices and
    coefficients whenever a weight below ``best_w`` is seen.  Scanning stops
    as soon as a weight ``<= stop_at`` is seen.  Only supports whose first
    index lies in ``[lo, hi)`` are visited.
    """
    k = rows.shape[0]
    q = rows.shape[1]
    count = 0
    cur = best_w
    if w < 1 or w > k:
        return cur, count
    # flat[(i*(q-1) + a-1)*3 + p], the zero multiple dropped
    flat = rows[:, 1:, :].copy().ravel()
    stride = 3 * (q - 1)
    end = k * stride
    part = np.zeros((w, 3), dtype=np.uint64)
    idx = np.zeros(w, dtype=np.int64)
    co = np.ones(w, dtype=np.int64)

    for i0 in range(lo, min(hi, k - w + 1)):
        idx[0] = i0
        co[0] = 1
        if w == 1:
            acc = rows[i0, 1, 0] | rows[i0, 1, 1] | rows[i0, 1, 2]
            wt = np.int64(popcount64(acc))
            count += 1
            if wt < cur:
                cur = wt
                best_idx[0] = i0
                best_co[0] = 1
                if wt <= stop_at:
                    return cur, count
            continue
        part[1, 0] = rows[i0, 1, 0]
        part[1, 1] = rows[i0, 1, 1]
        part[1, 2] = rows[i0, 1, 2]
        d = 1
        idx[1] = i0 + 1
        co[1] = 1
        while True:
            if d == w - 1:
                # leaf level: sweep every (row, coefficient) after idx[d-1]
                x0 = part[d, 0]
                x1 = part[d, 1]
                x2 = part[d, 2]
                for base in range((idx[d - 1] + 1) * stride, end, 3):
                    acc = ((x0 ^ flat[base]) | (x1 ^ flat[base + 1])
                           | (x2 ^ flat[base + 2]))
                    wt = np.int64(popcount64(acc))
                    count += 1
                    if wt < cur:
                        cur = wt
                        for t in range(d):
                            best_idx[t] = idx[t]
                            best_co[t] = co[t]
                        best_idx[d] = base // stride
                        best_co[d] = (base % stride) // 3 + 1
                        if wt <= stop_at:
                            return cur, count
                d -= 1
                if d == 0:
                    break
                # advance internal level d, cascading upwards when exhausted
                while d >= 1:
                    co[d] += 1
                    if co[d] == q:
                        co[d] = 1
                        idx[d] += 1
                        if idx[d] > k - (w - d):
                            d -= 1
                            continue
                    break
                if d == 0:
                    break
            # descend from the valid internal level d
            ii = idx[d]
            aa = co[d]
            part[d + 1, 0] = part[d, 0] ^ rows[ii, aa, 0]
            part[d + 1, 1] = part[d, 1] ^ rows[ii, aa, 1]
            part[d + 1, 2] = part[d, 2] ^ rows[ii, aa, 2]
            d += 1
            idx[d] = idx[d - 1] + 1
            co[d] = 1
    return cur, count


@njit(cache=True, nogil=True)
def scan_generic(rows, add, w, lo, hi, stop_at, best_w, best_idx, best_co):
    """Symbol-array twin of :func:`scan_char2` (same contract)."""
    k = rows.shape[0]
    q = rows.shape[1]
    n = rows.shape[2]
    count = 0
    cur = best_w
    if w < 1 or w > k:
        return cur, count
    part = np.zeros((w, n), dtype=np.uint8)
    idx = np.zeros(w, dtype=np.int64)
    co = np.ones(w, dtype=np.int64)

    if w == 1:
        for i in range(lo, min(hi, k)):
            wt = 0
            for t in range(n):
                if rows[i, 1, t] != 0:
                    wt += 1
            count += 1
            if wt < cur:
                cur = wt
                best_idx[0] = i
                best_co[0] = 1
                if wt <= stop_at:
                    return cur, count
        return cur, count

    for i0 in range(lo, min(hi, k - w + 1)):
        idx[0] = i0
        co[0] = 1
        for t in range(n):
            part[1, t] = rows[i0, 1, t]
        d = 1
        idx[1] = i0 + 1
        co[1] = 1
        if w == 2:
            for i in range(i0 + 1, k):
                for a in range(1, q):
                    wt = 0
                    for t in range(n):
                        if add[part[1, t], rows[i, a, t]] != 0:
                            wt += 1
                    count += 1
                    if wt < cur:
                        cur = wt
                        best_idx[0] = i0
                        best_co[0] = 1
                        best_idx[1] = i
                        best_co[1] = a
                        if wt <= stop_at:
                            return cur, count
            continue
        while d >= 1:
            for t in range(n):
                part[d + 1, t] = add[part[d, t], rows[idx[d], co[d], t]]
            if d + 1 == w - 1:
                leaf = w - 1
                for i in range(idx[d] + 1, k):
                    for a in range(1, q):
                        wt = 0
                        for t in range(n):
                            if add[part[leaf, t], rows[i, a, t]] != 0:
                                wt += 1
                        count += 1
                        if wt < cur:
                            cur = wt
                            for s in range(leaf):
                                best_idx[s] = idx[s]
                                best_co[s] = co[s]
                            best_idx[leaf] = i
                            best_co[leaf] = a
                            if wt <= stop_at:
                                return cur, count
                while d >= 1:
                    co[d] += 1
                    if co[d] == q:
                        co[d] = 1
                        idx[d] += 1
                        if idx[d] > k - (w - d):
                            d -= 1
                            continue
                    break
            else:
                d += 1
                idx[d] = idx[d - 1] + 1
                co[d] = 1
    return cur, count
