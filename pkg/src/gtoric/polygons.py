"""Equivalence classes of lattice polygons fitting in a [0,m] x [0,m] square.

Every lattice polygon inside the square is reached from the square itself by
repeatedly deleting one vertex and re-taking the hull of the remaining
lattice points, so a breadth-first walk over classes (deduplicated by
canonical key) is complete.  Points and segments are included.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .enumeration import CanonicalKey, canonical_key, square
from .geometry import (Point, Polygon, affine_dimension, convex_hull, lattice_points,
                       primitive, translate_to_origin)

MAX_M = 6


class UnsupportedSizeError(ValueError):
    pass


@dataclass(frozen=True)
class PolygonClass:
    key: CanonicalKey
    representative: Polygon
    m_min: int

    @property
    def lattice_points(self) -> tuple[Point, ...]:
        return lattice_points(self.representative)

    @property
    def dim(self) -> int:
        return self.representative.dim

    def to_json(self) -> str:
        return json.dumps({
            "key": [list(p) for p in self.key],
            "vertices": [list(p) for p in self.representative.vertices],
            "lattice_points": [list(p) for p in self.lattice_points],
            "m_min": self.m_min,
        })

    @classmethod
    def from_json(cls, line: str) -> "PolygonClass":
        d = json.loads(line)
        P = convex_hull([tuple(p) for p in d["vertices"]])
        return cls(tuple(tuple(p) for p in d["key"]), P, int(d["m_min"]))


def _widths(points: list[Point], f: tuple[int, int]) -> int:
    vals = [f[0] * x + f[1] * y for x, y in points]
    return max(vals) - min(vals)


def min_square_image(S: Iterable[Point]) -> tuple[int, tuple[Point, ...]]:
    """Least ``m`` with an affine unimodular image of ``S`` inside
    ``[0,m]^2``, together with one such image.

    An image in a box of side ``m`` is a pair of integer functionals forming
    a lattice basis, each of width ``<= m`` on ``S``; we search the finitely
    many functionals whose width does not exceed the identity's box side.
    """
    pts = sorted(set(S))
    dim = affine_dimension(pts)
    if dim < 0:
        raise ValueError("empty point set")
    if dim == 0:
        return 0, ((0, 0),)
    if dim == 1:
        a, b = pts[0], pts[-1]
        ex, ey = primitive((b[0] - a[0], b[1] - a[1]))
        length = max(abs(b[0] - a[0]), abs(b[1] - a[1])) // max(abs(ex), abs(ey))
        img = tuple(sorted(((p[0] - a[0]) // ex if ex else (p[1] - a[1]) // ey, 0)
                           for p in pts))
        return length, translate_to_origin(img)

    bound = max(_widths(pts, (1, 0)), _widths(pts, (0, 1)))
    p0 = pts[0]
    u = next(p for p in pts if p != p0)
    v = next(p for p in pts if (u[0] - p0[0]) * (p[1] - p0[1]) - (u[1] - p0[1]) * (p[0] - p0[0]) != 0)
    ux, uy = u[0] - p0[0], u[1] - p0[1]
    vx, vy = v[0] - p0[0], v[1] - p0[1]
    D = ux * vy - uy * vx
    # any functional of width <= bound takes values in [-bound, bound] on u, v
    cands: dict[tuple[int, int], int] = {}
    for fu in range(-bound, bound + 1):
        for fv in range(-bound, bound + 1):
            # solve f.u = fu, f.v = fv
            n1 = fu * vy - fv * uy
            n2 = fv * ux - fu * vx
            if n1 % D or n2 % D:
                continue
            f = (n1 // D, n2 // D)
            if f == (0, 0) or f < (0, 0) and (-f[0], -f[1]) in cands:
                continue
            if f < (0, 0):
                f = (-f[0], -f[1])
            w = _widths(pts, f)
            if w <= bound:
                cands[f] = w
    ordered = sorted(cands.items(), key=lambda t: (t[1], t[0]))
    best = None
    for i, (f, wf) in enumerate(ordered):
        if best is not None and wf >= best[0]:
            break
        for g, wg in ordered[i:]:
            if best is not None and wg >= best[0]:
                break
            if abs(f[0] * g[1] - f[1] * g[0]) == 1:
                best = (wg, f, g)
                break
    assert best is not None
    m, f, g = best
    img = [(f[0] * x + f[1] * y, g[0] * x + g[1] * y) for x, y in pts]
    return m, translate_to_origin(img)


def min_square(S: Iterable[Point]) -> int:
    return min_square_image(S)[0]


def enumerate_hull_classes(m: int, min_dim: int = 0) -> list[PolygonClass]:
    """One class per affine-equivalence class of hulls of subsets of the
    ``[0,m]^2`` grid, sorted by ``(m_min, number of points, key)``."""
    if not 1 <= m <= MAX_M:
        raise UnsupportedSizeError("m must lie in [1, %d], got %r" % (MAX_M, m))
    start = frozenset(lattice_points(square(m)))
    seen = {canonical_key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for pts in frontier:
            P = convex_hull(pts)
            for v in P.vertices:
                rest = pts - {v}
                if not rest:
                    continue
                child = frozenset(lattice_points(convex_hull(rest)))
                key = canonical_key(child)
                if key not in seen:
                    seen[key] = child
                    nxt.append(child)
        frontier = nxt
    out = []
    for key, pts in seen.items():
        mm, img = min_square_image(pts)
        P = convex_hull(img)
        if P.dim >= min_dim:
            out.append(PolygonClass(key, P, mm))
    out.sort(key=lambda c: (c.m_min, len(c.key), c.key))
    return out


def write_classes(classes: Iterable[PolygonClass], path: str | Path) -> None:
    with open(path, "w") as fh:
        for c in classes:
            fh.write(c.to_json() + "\n")


def read_classes(path: str | Path) -> list[PolygonClass]:
    with open(path) as fh:
        return [PolygonClass.from_json(line) for line in fh if line.strip()]
