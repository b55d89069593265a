"""Subsets of a polygon's lattice points up to its affine automorphisms.

A subset ``S`` with ``V(P) <= S <= P ∩ Z^2`` is stored as an integer mask
over the non-vertex lattice points of ``P`` taken in lexicographic order.

The enumeration picks a largest orbit of the symmetry group on the
non-vertex points, lists subsets of that orbit up to the group (only up to
half weight, complements supply the rest), and for each such subset recurses
on the remaining points under the subset's stabiliser.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .geometry import (AutGroup, Point, Polygon, affine_automorphism_group, apply,
                       convex_hull, lattice_points, normalising_maps, translate_to_origin)

CanonicalKey = tuple[Point, ...]


def canonical_key(S: Iterable[Point]) -> CanonicalKey:
    """Lexicographically least normalised image of ``S``.

    Equal keys exactly when the point sets are affinely unimodularly
    equivalent.
    """
    pts = frozenset(S)
    return min(translate_to_origin(apply(N, pts)) for N in normalising_maps(pts))


@dataclass(frozen=True)
class OrbitDecomposition:
    points: tuple[Point, ...]          # non-vertex points, lexicographic
    orbits: tuple[tuple[int, ...], ...]  # largest first, ties lexicographic

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def k1(self) -> int:
        return len(self.orbits[0]) if self.orbits else 0

    def ordering(self) -> list[int]:
        """Point indices with the designated largest orbit first."""
        return [i for orb in self.orbits for i in orb]


@dataclass(frozen=True, eq=False)
class PolygonAction:
    """A polygon's symmetry group acting on its non-vertex lattice points."""

    polygon: Polygon
    group: AutGroup
    vertices: tuple[Point, ...]
    free_points: tuple[Point, ...]
    perms: np.ndarray      # (|G|, k) permutations of free-point indices

    @property
    def k(self) -> int:
        return len(self.free_points)

    def points_of(self, mask: int) -> tuple[Point, ...]:
        chosen = [p for i, p in enumerate(self.free_points) if (mask >> i) & 1]
        return tuple(sorted(self.vertices + tuple(chosen)))


def polygon_action(P: Polygon, G: AutGroup | None = None) -> PolygonAction:
    if G is None:
        G = affine_automorphism_group(P)
    verts = tuple(sorted(P.vertices))
    vset = set(verts)
    free = tuple(p for p in G.points if p not in vset)
    gidx = G.index()
    pos = [gidx[p] for p in free]
    back = {gi: j for j, gi in enumerate(pos)}
    perms = np.array([[back[int(row[gi])] for gi in pos] for row in G.perm],
                     dtype=np.int64).reshape(G.order, len(free))
    return PolygonAction(P, G, verts, free, perms)


def image(mask: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << int(perm[i])
        mask >>= 1
        i += 1
    return out


def _orbits(perms: np.ndarray, positions: Sequence[int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for p in positions:
        if p in seen:
            continue
        orb = sorted({int(g[p]) for g in perms})
        seen.update(orb)
        out.append(tuple(orb))
    # largest first; among equals the lexicographically least point list,
    # which is the least index list because indices follow lexicographic order
    out.sort(key=lambda o: (-len(o), o))
    return out


def orbit_decomposition(G: AutGroup, P: Polygon) -> OrbitDecomposition:
    act = polygon_action(P, G)
    return OrbitDecomposition(act.free_points, tuple(_orbits(act.perms, range(act.k))))


def _all_masks(positions: Sequence[int]) -> np.ndarray:
    r = len(positions)
    idx = np.arange(1 << r, dtype=np.int64)
    out = np.zeros(1 << r, dtype=np.int64)
    for j, p in enumerate(positions):
        out |= ((idx >> j) & 1) << p
    return out


def least_in_orbit(masks: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """Least mask in the orbit of each of ``masks`` (vectorised)."""
    masks = np.asarray(masks, dtype=np.int64)
    best = masks.copy()
    for g in perms:
        img = np.zeros_like(masks)
        for i, j in enumerate(g):
            img |= ((masks >> i) & 1) << int(j)
        np.minimum(best, img, out=best)
    return best


def _min_image(mask: int, perms: np.ndarray) -> int:
    return min(image(mask, g) for g in perms)


def _orbit_block_reps(perms: np.ndarray, orbit: Sequence[int], half: bool) -> list[int]:
    """Least-mask representatives of subsets of ``orbit`` under ``perms``."""
    k1 = len(orbit)
    reps = []
    top = k1 // 2 if half else k1
    for h in range(top + 1):
        for c in combinations(orbit, h):
            m = 0
            for i in c:
                m |= 1 << i
            if _min_image(m, perms) == m:
                reps.append(m)
    if half:
        full = 0
        for i in orbit:
            full |= 1 << i
        # complements of the strictly-below-half representatives
        for m in list(reps):
            if 2 * bin(m).count("1") < k1:
                reps.append(_min_image(full ^ m, perms))
    return sorted(reps)


def _stabiliser(perms: np.ndarray, mask: int) -> np.ndarray:
    keep = [g for g in perms if image(mask, g) == mask]
    return np.array(keep, dtype=np.int64).reshape(len(keep), perms.shape[1])


def _reps(perms: np.ndarray, positions: list[int], half: bool) -> np.ndarray:
    if not positions:
        return np.zeros(1, dtype=np.int64)
    if len(perms) == 1:
        return _all_masks(positions)
    orbits = _orbits(perms, positions)
    o1 = orbits[0]
    rest = [p for p in positions if p not in set(o1)]
    parts = []
    for s in _orbit_block_reps(perms, o1, half):
        tail = _reps(_stabiliser(perms, s), rest, False)
        parts.append(tail | s)
    return np.concatenate(parts)


def iter_branches(act: PolygonAction) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield ``(branch index, orbit-block subset, masks)`` per top-level
    choice on the largest orbit; the masks of all branches together are one
    representative per orbit of the group on subsets, each the least mask
    of its orbit."""
    if act.k == 0:
        yield 0, 0, np.zeros(1, dtype=np.int64)
        return
    orbits = _orbits(act.perms, range(act.k))
    o1 = orbits[0]
    rest = [p for p in range(act.k) if p not in set(o1)]
    for b, s in enumerate(_orbit_block_reps(act.perms, o1, True)):
        tail = _reps(_stabiliser(act.perms, s), rest, False)
        yield b, s, least_in_orbit(tail | s, act.perms)


def subsets_up_to_action(P: Polygon, G: AutGroup | None = None) -> np.ndarray:
    """One mask per orbit of ``AffAut(P)`` on subsets of the non-vertex points."""
    act = polygon_action(P, G)
    return np.concatenate([m for _, _, m in iter_branches(act)])


def subsets_bruteforce(act: PolygonAction) -> np.ndarray:
    """Least mask of every orbit, by scanning all ``2^k`` masks.

    Independent of the recursive enumeration; intended for ``k`` up to ~22.
    """
    masks = np.arange(1 << act.k, dtype=np.int64)
    return masks[least_in_orbit(masks, act.perms) == masks]


def orbit_size(act: PolygonAction, mask: int) -> int:
    return len({image(int(mask), g) for g in act.perms})


def burnside_count(act: PolygonAction) -> int:
    """Number of orbits on subsets: average of ``2^cycles`` over the group."""
    total = 0
    for g in act.perms:
        seen = [False] * act.k
        cycles = 0
        for i in range(act.k):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = int(g[j])
        total += 1 << cycles
    assert total % len(act.perms) == 0
    return total // len(act.perms)


def square(m: int) -> Polygon:
    return convex_hull([(0, 0), (m, 0), (0, m), (m, m)])


def square_counts(m: int) -> tuple[int, int]:
    """``(# subsets, # up to symmetry)`` for the non-vertex points of [0,m]^2."""
    P = square(m)
    k = len(lattice_points(P)) - len(P.vertices)
    return 1 << k, len(subsets_up_to_action(P))

