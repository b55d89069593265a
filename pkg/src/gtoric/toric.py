"""Generator matrices of generalised toric codes.

Row ``(a, b)`` evaluates the monomial ``x^a y^b`` at every torus point
``(g^i, g^j)``, columns in row-major ``(i, j)`` order, so the entry is
``g^((a*i + b*j) mod (q-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .geometry import Point, translate_to_origin
from .gf import FieldTable, make_field


class FieldTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class CodeProfile:
    n: int
    k: int
    d: int

    def __str__(self) -> str:
        return "[%d,%d,%d]" % (self.n, self.k, self.d)

    @classmethod
    def parse(cls, s: str) -> "CodeProfile":
        n, k, d = (int(t) for t in s.strip().strip("[]").split(","))
        return cls(n, k, d)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    q: int
    rows: np.ndarray = field(repr=False)       # (k, n) uint8 element codes
    row_points: tuple[Point, ...] = ()

    @property
    def field(self) -> FieldTable:
        return make_field(self.q)

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def dump(self) -> str:
        lines = ["%d %d %d" % (self.q, self.k, self.n)]
        lines += [" ".join(str(int(x)) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"


def generator_matrix(S: Iterable[Point], q: int) -> GeneratorMatrix:
    f = make_field(q)
    pts = translate_to_origin(set(S)) if S else ()
    if not pts:
        raise ValueError("empty point set")
    side = max(max(x, y) for x, y in pts)
    if side > q - 2:
        raise FieldTooSmallError(
            "points span a [0,%d] box but GF(%d) needs them inside [0,%d]^2"
            % (side, q, q - 2))
    e = np.arange(q - 1)
    i, j = np.meshgrid(e, e, indexing="ij")
    i, j = i.ravel(), j.ravel()
    rows = np.empty((len(pts), (q - 1) ** 2), dtype=np.uint8)
    for r, (a, b) in enumerate(pts):
        rows[r] = f.exp[(a * i + b * j) % (q - 1)]
    rows.flags.writeable = False
    return GeneratorMatrix(q, rows, pts)


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def row_reduce(f: FieldTable, M: np.ndarray, columns=None):
    """Gauss-Jordan elimination over GF(q).

    Returns ``(R, T, pivots)`` with ``R = T @ M`` (over the field), pivot
    columns taken greedily in ``columns`` order, and the pivot rows first.
    """
    R = np.array(M, dtype=np.uint8, copy=True)
    k, n = R.shape
    T = np.zeros((k, k), dtype=np.uint8)
    T[np.arange(k), np.arange(k)] = 1
    A = np.concatenate([R, T], axis=1)
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    pivots = []
    r = 0
    for c in (range(n) if columns is None else columns):
        if r == k:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = mul[f.inv(int(A[r, c])), A[r]]
        for t in range(k):
            if t != r and A[t, c]:
                A[t] = add[A[t], mul[neg[A[t, c]], A[r]]]
        pivots.append(c)
        r += 1
    return A[:, :n], A[:, n:], pivots


def rank(M: GeneratorMatrix | np.ndarray, q: int | None = None) -> int:
    if isinstance(M, GeneratorMatrix):
        q, M = M.q, M.rows
    return len(row_reduce(make_field(q), M)[2])


def dimension(M: GeneratorMatrix) -> int:
    return rank(M)


def encode(f: FieldTable, coefficients, rows: np.ndarray) -> np.ndarray:
    """The codeword ``sum_i c_i * rows[i]``."""
    out = np.zeros(rows.shape[1], dtype=np.uint8)
    for c, r in zip(coefficients, rows):
        if c:
            out = f.add_table[out, f.mul_table[int(c), r]]
    return out


def vec_mat(f: FieldTable, v, M: np.ndarray) -> np.ndarray:
    """Row vector times matrix over GF(q)."""
    return encode(f, v, M)
