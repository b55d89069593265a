"""The seven champion codes over GF(8) and their re-verification."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .distance import BZ_BUDGET, DistanceResult, bz_min_distance
from .geometry import Point
from .polygons import min_square
from .toric import CodeProfile, generator_matrix, rank


@dataclass(frozen=True)
class Champion:
    profile: CodeProfile
    min_m: int
    points: tuple[Point, ...]

    @property
    def tier(self) -> str:
        return "exact" if self.profile.k in EXACT_TIER else "certificate"


EXACT_TIER = (13, 14, 16, 17)

TABLE1 = (
    Champion(CodeProfile(49, 13, 27), 4, (
        (0, 2), (0, 3), (0, 4), (1, 0), (1, 2), (2, 1), (2, 2), (2, 4), (3, 0),
        (3, 2), (4, 1), (4, 3), (4, 4))),
    Champion(CodeProfile(49, 14, 26), 5, (
        (0, 1), (0, 4), (1, 3), (2, 3), (2, 4), (3, 1), (3, 3), (3, 5), (4, 0),
        (4, 2), (4, 4), (4, 5), (5, 2), (5, 5))),
    Champion(CodeProfile(49, 16, 24), 5, (
        (0, 1), (0, 2), (0, 4), (0, 5), (1, 1), (1, 4), (1, 5), (2, 0), (2, 1),
        (2, 4), (3, 2), (3, 3), (3, 5), (4, 2), (5, 0), (5, 5))),
    Champion(CodeProfile(49, 17, 23), 5, (
        (0, 1), (0, 3), (0, 5), (1, 1), (1, 2), (1, 4), (2, 2), (2, 3), (2, 4),
        (3, 0), (3, 1), (3, 4), (3, 5), (4, 0), (4, 2), (5, 1), (5, 5))),
    Champion(CodeProfile(49, 19, 21), 5, (
        (0, 0), (0, 2), (0, 4), (0, 5), (1, 0), (1, 1), (1, 5), (2, 1), (2, 2),
        (2, 5), (3, 1), (3, 3), (3, 4), (4, 0), (4, 5), (5, 0), (5, 2), (5, 4),
        (5, 5))),
    Champion(CodeProfile(49, 25, 16), 6, (
        (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 1),
        (2, 2), (2, 3), (2, 5), (2, 6), (3, 0), (3, 2), (3, 4), (3, 6), (4, 2),
        (4, 3), (4, 4), (4, 5), (5, 1), (5, 5), (6, 2), (6, 3))),
    Champion(CodeProfile(49, 26, 15), 6, (
        (0, 2), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (1, 4), (1, 6), (2, 2),
        (2, 3), (2, 5), (3, 0), (3, 1), (3, 3), (3, 5), (3, 6), (4, 3), (4, 4),
        (5, 0), (5, 2), (5, 3), (5, 4), (5, 5), (6, 1), (6, 2), (6, 4))),
)

FIELD_Q = 8


def champion(k: int) -> Champion:
    for c in TABLE1:
        if c.profile.k == k:
            return c
    raise KeyError("no champion row with k=%d" % k)


@dataclass(frozen=True)
class ChampionCheck:
    champion: Champion
    mode: str              # "exact" | "certificate"
    n: int
    k: int
    min_m: int
    result: DistanceResult | None
    seconds: float

    @property
    def passed(self) -> bool:
        p = self.champion.profile
        if self.n != p.n or self.k != p.k or self.min_m != self.champion.min_m:
            return False
        r = self.result
        if r is None:
            return False
        if self.mode == "exact":
            return r.exact and r.upper == p.d
        return r.lower >= p.d and r.upper <= p.d

    def line(self) -> str:
        r = self.result
        got = "-" if r is None else ("d=%d" % r.upper if r.exact
                                     else "d in [%d,%d]" % (r.lower, r.upper))
        return "%s %s %s (%s, min m %d, %.1fs)" % (
            "PASS" if self.passed else "FAIL", self.champion.profile, got,
            self.mode, self.min_m, self.seconds)


def verify_champion(c: Champion, mode: str | None = None, budget: int = BZ_BUDGET,
                    threads: int = 1, progress=None) -> ChampionCheck:
    """Rebuild the code from its fixture points and confirm ``[n, k, d]``.

    ``exact`` mode runs to the exact distance; ``certificate`` mode stops
    once a codeword of weight ``<= d`` is known and the lower bound
    reaches ``d``, which proves the code beats distance ``d - 1``.
    """
    mode = mode or c.tier
    t0 = time.time()
    M = generator_matrix(c.points, FIELD_Q)
    k = rank(M)
    result = None
    if k == c.profile.k:
        if mode == "exact":
            result = bz_min_distance(M, budget=budget, threads=threads, progress=progress)
        else:
            result = bz_min_distance(M, budget=budget, target=c.profile.d - 1,
                                     threads=threads, progress=progress)
    return ChampionCheck(c, mode, M.n, k, min_square(c.points), result, time.time() - t0)


def verify_champions(ks=None, mode: str | None = None, **kw) -> list[ChampionCheck]:
    rows = TABLE1 if ks is None else [champion(k) for k in ks]
    return [verify_champion(c, mode, **kw) for c in rows]
