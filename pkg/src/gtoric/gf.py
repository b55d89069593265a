"""Small finite fields GF(q), q in {2, 3, 4, 5, 7, 8, 9}, via log/antilog tables.

Elements are coded as integers in ``[0, q)``: the base-p digits of a code are
the coefficients of the residue polynomial, lowest degree first.  In
characteristic 2 addition is therefore bitwise XOR of codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# q -> (p, e, defining polynomial as coefficient list, lowest degree first)
_DEFINING = {
    2: (2, 1, None),
    3: (3, 1, None),
    5: (5, 1, None),
    7: (7, 1, None),
    4: (2, 2, (1, 1, 1)),      # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),   # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),      # x^2 + 1
}


class UnsupportedFieldError(ValueError):
    pass


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def poly_mul_code(a: int, b: int, p: int, e: int, poly) -> int:
    """Multiply two element codes by schoolbook polynomial multiplication.

    This is the slow reference product used to build (and test) the tables.
    """
    if poly is None:
        return (a * b) % p
    da, db = _digits(a, p, e), _digits(b, p, e)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # reduce modulo the monic defining polynomial
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i in range(e + 1):
                prod[deg - e + i] = (prod[deg - e + i] - c * poly[i]) % p
    return _undigits(prod[:e], p)


@dataclass(frozen=True, eq=False)
class FieldTable:
    q: int
    p: int
    e: int
    primitive: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)

    @property
    def characteristic(self) -> int:
        return self.p

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power_of_primitive(self, i: int) -> int:
        return int(self.exp[i % (self.q - 1)])

    def nonzero(self) -> range:
        return range(1, self.q)


_CACHE: dict[int, FieldTable] = {}


def make_field(q: int) -> FieldTable:
    """Return the (cached, immutable) field table for GF(q)."""
    if q in _CACHE:
        return _CACHE[q]
    if q not in _DEFINING:
        raise UnsupportedFieldError(
            "unsupported field size q=%r (supported: %s)"
            % (q, ", ".join(map(str, SUPPORTED_Q))))
    p, e, poly = _DEFINING[q]

    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        da = _digits(a, p, e)
        for b in range(q):
            db = _digits(b, p, e)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            mul[a, b] = poly_mul_code(a, b, p, e, poly)
    neg = np.array([_undigits([(-x) % p for x in _digits(a, p, e)], p)
                    for a in range(q)], dtype=np.uint8)

    # smallest-coded element of multiplicative order q - 1
    primitive = None
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = int(mul[x, g])
            order += 1
        if order == q - 1:
            primitive = g
            break
    assert primitive is not None

    exp = np.zeros(q - 1, dtype=np.uint8)
    log = np.full(q, -1, dtype=np.int16)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = int(mul[x, primitive])

    for arr in (exp, log, add, mul, neg):
        arr.flags.writeable = False
    f = FieldTable(q, p, e, primitive, exp, log, add, mul, neg)
    _CACHE[q] = f
    return f
