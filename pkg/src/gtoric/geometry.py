"""Lattice points, convex hulls, unimodular affine maps and polygon symmetries.

Points are plain ``(x, y)`` integer tuples.  An :class:`AffineMap` acts on
column vectors, ``p -> A p + t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

Point = tuple[int, int]


class EmptyInputError(ValueError):
    pass


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Polygon:
    """Counter-clockwise strictly convex vertex cycle.

    Starts at the lexicographically smallest vertex.  Two vertices make a
    segment, one a point.
    """

    vertices: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return min(len(self.vertices), 3) - 1

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains(self, p: Point) -> bool:
        v = self.vertices
        if len(v) == 1:
            return p == v[0]
        if len(v) == 2:
            a, b = v
            return (cross(a, b, p) == 0
                    and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
        return all(cross(a, b, p) >= 0 for a, b in self.edges())

    def lattice_points(self) -> tuple[Point, ...]:
        return lattice_points(self)


def convex_hull(points: Iterable[Point]) -> Polygon:
    """Monotone-chain hull with collinear points dropped."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if not pts:
        raise EmptyInputError("convex hull of an empty point set")
    if len(pts) <= 2:
        return Polygon(tuple(pts))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return Polygon(tuple(hull))


def lattice_points(P: Polygon) -> tuple[Point, ...]:
    """All integer points of ``P``, sorted lexicographically."""
    v = P.vertices
    if len(v) == 1:
        return (v[0],)
    if len(v) == 2:
        (ax, ay), (bx, by) = v
        g = gcd(bx - ax, by - ay)
        dx, dy = (bx - ax) // g, (by - ay) // g
        return tuple(sorted((ax + i * dx, ay + i * dy) for i in range(g + 1)))
    xs = [p[0] for p in v]
    ys = [p[1] for p in v]
    return tuple((x, y)
                 for x in range(min(xs), max(xs) + 1)
                 for y in range(min(ys), max(ys) + 1)
                 if P.contains((x, y)))


def affine_dimension(points: Sequence[Point]) -> int:
    pts = list(points)
    if not pts:
        return -1
    o = pts[0]
    others = [p for p in pts if p != o]
    if not others:
        return 0
    a = others[0]
    if any(cross(o, a, p) != 0 for p in others):
        return 2
    return 1


@dataclass(frozen=True)
class AffineMap:
    """``p -> [[m11, m12], [m21, m22]] p + (t1, t2)`` with determinant +-1."""

    m11: int
    m12: int
    m21: int
    m22: int
    t1: int = 0
    t2: int = 0

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError("affine map is not unimodular (det=%d)" % self.det)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t1: int, t2: int) -> "AffineMap":
        return cls(1, 0, 0, 1, t1, t2)

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __call__(self, p: Point) -> Point:
        x, y = p
        return (self.m11 * x + self.m12 * y + self.t1,
                self.m21 * x + self.m22 * y + self.t2)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other`` (apply ``other`` first)."""
        a, b, c, d = self.m11, self.m12, self.m21, self.m22
        e, f, g, h = other.m11, other.m12, other.m21, other.m22
        t1, t2 = self((other.t1, other.t2))
        return AffineMap(a * e + b * g, a * f + b * h,
                         c * e + d * g, c * f + d * h, t1, t2)

    def inverse(self) -> "AffineMap":
        D = self.det
        a, b, c, d = self.m22 * D, -self.m12 * D, -self.m21 * D, self.m11 * D
        t1 = -(a * self.t1 + b * self.t2)
        t2 = -(c * self.t1 + d * self.t2)
        return AffineMap(a, b, c, d, t1, t2)

    def then_translate(self, t1: int, t2: int) -> "AffineMap":
        return AffineMap(self.m11, self.m12, self.m21, self.m22,
                         self.t1 + t1, self.t2 + t2)


def apply(g: AffineMap, S: Iterable[Point]) -> frozenset[Point]:
    return frozenset(g(p) for p in S)


def translate_to_origin(S: Iterable[Point]) -> tuple[Point, ...]:
    """Sorted copy of ``S`` shifted so that min x = min y = 0."""
    pts = list(S)
    mx = min(p[0] for p in pts)
    my = min(p[1] for p in pts)
    return tuple(sorted((x - mx, y - my) for x, y in pts))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def primitive(v: Point) -> Point:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def _to_x_axis(e: Point) -> AffineMap:
    """Unimodular linear map sending the primitive vector ``e`` to (1, 0)."""
    x, y = e
    g, u, v = _ext_gcd(x, y)
    assert g == 1
    return AffineMap(u, v, -y, x)


def _frame_map(origin: Point, ahead: Point, behind: Point) -> AffineMap:
    """The unique map with ``origin -> 0``, ``ahead - origin`` onto the
    positive x-axis and ``behind - origin`` into ``{(a, b): b > 0, 0 <= a < b}``."""
    e1 = primitive((ahead[0] - origin[0], ahead[1] - origin[1]))
    L = _to_x_axis(e1)
    a, b = L((behind[0] - origin[0], behind[1] - origin[1]))
    assert b != 0
    if b < 0:
        L = AffineMap(1, 0, 0, -1).compose(L)
        b = -b
    t = -(a // b)
    L = AffineMap(1, t, 0, 1).compose(L)
    return L.compose(AffineMap.translation(-origin[0], -origin[1]))


def normalising_maps(S: Iterable[Point]) -> list[AffineMap]:
    """Hull-anchored maps whose image set is independent of the position of
    ``S`` up to affine unimodular equivalence.

    For a 2-dimensional hull there is one map per (vertex, orientation); for a
    segment one per endpoint; a single point gets its translation to 0.
    """
    pts = list(set(S))
    if not pts:
        raise EmptyInputError("empty point set")
    P = convex_hull(pts)
    v = P.vertices
    if len(v) == 1:
        return [AffineMap.translation(-v[0][0], -v[0][1])]
    if len(v) == 2:
        out = []
        for a, b in ((v[0], v[1]), (v[1], v[0])):
            L = _to_x_axis(primitive((b[0] - a[0], b[1] - a[1])))
            out.append(L.compose(AffineMap.translation(-a[0], -a[1])))
        return out
    r = len(v)
    out = []
    for i in range(r):
        for o in (1, -1):
            out.append(_frame_map(v[i], v[(i + o) % r], v[(i - o) % r]))
    return out


@dataclass(frozen=True, eq=False)
class AutGroup:
    """Affine automorphisms of a polygon with their action on its points.

    ``perm[g][j]`` is the index in ``points`` of ``elements[g](points[j])``.
    """

    polygon: Polygon
    elements: tuple[AffineMap, ...]
    points: tuple[Point, ...]
    perm: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}


def affine_automorphism_group(P: Polygon) -> AutGroup:
    """All unimodular affine maps sending ``P`` onto itself.

    A 2-dimensional polygon's automorphisms send the frame at ``vertices[0]``
    to some frame at another vertex; each candidate is checked on the vertex
    set.  A segment gets the identity and its flip, a point the identity.
    """
    v = P.vertices
    pts = lattice_points(P)
    if len(v) == 1:
        elements = [AffineMap.identity()]
    elif len(v) == 2:
        (ax, ay), (bx, by) = v
        elements = [AffineMap.identity(), AffineMap(-1, 0, 0, -1, ax + bx, ay + by)]
    else:
        frames = normalising_maps(v)
        vset = frozenset(v)
        ref = frames[0]
        ref_img = apply(ref, vset)
        elements = []
        for N in frames:
            if apply(N, vset) == ref_img:
                g = N.inverse().compose(ref)
                assert apply(g, vset) == vset
                elements.append(g)
        elements.sort(key=lambda g: (g != AffineMap.identity(),
                                     (g.m11, g.m12, g.m21, g.m22, g.t1, g.t2)))
    index = {p: i for i, p in enumerate(pts)}
    perm = np.array([[index[g(p)] for p in pts] for g in elements], dtype=np.int64)
    return AutGroup(P, tuple(elements), pts, perm)


def read_points(path: str | Path) -> list[Point]:
    """Parse the point-set text format: one ``x y`` pair per line, ``#``
    comments and blank lines ignored."""
    pts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError("%s:%d: expected two integers, got %r" % (path, lineno, line))
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError("%s:%d: expected two integers, got %r"
                             % (path, lineno, line)) from None
    return pts


def format_points(points: Iterable[Point]) -> str:
    return "".join("%d %d\n" % p for p in sorted(points))
