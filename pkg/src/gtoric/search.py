"""Champion search over every point set of a [0,m]^2 square.

For each polygon class and each subset of its lattice points (up to the
polygon's symmetries, vertices always included) the code over GF(q) is
screened with the four-row trial bound against the best-known distance;
survivors get an information-set distance computation.  Output is
append-only JSONL with a checkpoint after every (polygon, branch) unit.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .bounds import BoundsTable
from .distance import BZ_BUDGET, DistanceResult, bz_min_distance, trial_distance
from .enumeration import PolygonAction, canonical_key, iter_branches, polygon_action
from .geometry import Point
from .gf import make_field
from .polygons import PolygonClass, enumerate_hull_classes
from .toric import CodeProfile, generator_matrix

log = logging.getLogger(__name__)

SCHEMA = "gtoric.search/1"


class SearchError(ValueError):
    pass


def check_size(q: int, m: int) -> None:
    make_field(q)
    if q < m + 2:
        raise SearchError("GF(%d) is too small for the [0,%d] square (need q >= m + 2)" % (q, m))


@dataclass
class Unit:
    class_index: int
    branch: int
    cls: PolygonClass
    action: PolygonAction
    masks: np.ndarray

    @property
    def uid(self) -> tuple[int, int]:
        return (self.class_index, self.branch)


def iter_units(m: int, classes: list[PolygonClass] | None = None) -> Iterator[Unit]:
    classes = enumerate_hull_classes(m) if classes is None else classes
    for ci, cls in enumerate(classes):
        act = polygon_action(cls.representative)
        for b, _, masks in iter_branches(act):
            yield Unit(ci, b, cls, act, masks)


def mask_sizes(act: PolygonAction, masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks.astype(np.uint64)).astype(np.int64) + len(act.vertices)


@dataclass
class Screened:
    trial: int
    result: DistanceResult | None
    champion: bool | str


def screen(points, q: int, d_g: int, budget: int = BZ_BUDGET, threads: int = 1) -> Screened:
    """Trial filter, then distance for survivors (exact unless refuted)."""
    M = generator_matrix(points, q)
    tb = trial_distance(M, 4, stop_at=d_g, threads=threads)
    if tb.bound <= d_g:
        return Screened(tb.bound, None, False)
    res = bz_min_distance(M, budget=budget, target=d_g, exact=True, threads=threads)
    if res.exact:
        return Screened(tb.bound, res, res.upper > d_g)
    if res.upper <= d_g:
        return Screened(tb.bound, res, False)
    return Screened(tb.bound, res, "candidate")


@dataclass
class SearchSummary:
    q: int
    m: int
    units: int = 0
    subsets: int = 0
    unbounded: int = 0
    discarded: int = 0
    survivors: int = 0
    champions: Counter = field(default_factory=Counter)     # profile -> count
    candidates: int = 0
    per_polygon: dict = field(default_factory=dict)         # class index -> counts
    survivor_keys: set = field(default_factory=set)

    def add_unit(self, ci: int, counts: dict) -> None:
        self.units += 1
        pp = self.per_polygon.setdefault(ci, Counter())
        pp.update(counts)
        for key in ("subsets", "unbounded", "discarded", "survivors", "candidates"):
            setattr(self, key, getattr(self, key) + counts.get(key, 0))

    def profiles(self) -> list[str]:
        return sorted(self.champions, key=lambda s: CodeProfile.parse(s).k)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA, "type": "summary", "q": self.q, "m": self.m,
            "units": self.units, "subsets": self.subsets, "unbounded": self.unbounded,
            "discarded": self.discarded, "survivors": self.survivors,
            "survivors_distinct": len(self.survivor_keys),
            "candidates": self.candidates,
            "champion_profiles": {p: self.champions[p] for p in self.profiles()},
            "per_polygon": {str(k): dict(v) for k, v in sorted(self.per_polygon.items())},
        }

    @classmethod
    def from_state(cls, q, m, st: dict) -> "SearchSummary":
        s = cls(q, m)
        for ci, counts in st.get("per_polygon", {}).items():
            s.per_polygon[int(ci)] = Counter(counts)
        for key in ("units", "subsets", "unbounded", "discarded", "survivors", "candidates"):
            setattr(s, key, st.get(key, 0))
        s.champions = Counter(st.get("champion_profiles", {}))
        return s


def _record(unit: Unit, mask: int, points, q: int, d_g: int, sc: Screened, seconds: float) -> dict:
    k = len(points)
    return {
        "schema": SCHEMA, "type": "record",
        "polygon": [list(p) for p in unit.cls.key],
        "class_index": unit.class_index, "branch": unit.branch,
        "mask": int(mask), "points": [list(p) for p in points],
        "q": q, "n": (q - 1) ** 2, "k": k, "d_g": d_g, "trial": sc.trial,
        "distance": sc.result.to_dict() if sc.result else None,
        "champion": sc.champion, "seconds": round(seconds, 4), "worker": os.getpid(),
    }


def _write_atomic(path: Path, data: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(data))
    os.replace(tmp, path)


def search(q: int, m: int, bounds: BoundsTable, out: str | Path, resume: bool = False,
           checkpoint: str | Path | None = None, budget: int = BZ_BUDGET, threads: int = 1,
           classes: list[PolygonClass] | None = None,
           stop_after_units: int | None = None,
           on_record: Callable[[dict], None] | None = None) -> SearchSummary:
    """Run (or resume) the search, appending JSONL to ``out``.

    ``stop_after_units`` aborts after that many newly completed units, which
    is how interrupted runs are simulated.
    """
    check_size(q, m)
    out = Path(out)
    ckpt = Path(checkpoint) if checkpoint else out.with_name(out.name + ".ckpt.json")
    n = (q - 1) ** 2
    done: set[tuple[int, int]] = set()
    summary = SearchSummary(q, m)
    offset = 0
    if resume and ckpt.exists():
        st = json.loads(ckpt.read_text())
        if (st.get("q"), st.get("m")) != (q, m):
            raise SearchError("checkpoint %s is for q=%s m=%s" % (ckpt, st.get("q"), st.get("m")))
        done = {tuple(u) for u in st["done"]}
        offset = st["offset"]
        summary = SearchSummary.from_state(q, m, st["summary"])
        with open(out, "r+b") as fh:
            fh.truncate(offset)
        # distinct survivors are rebuilt from the kept records, which keeps
        # the checkpoint small however many survivors there are
        summary.survivor_keys = {canonical_key([tuple(p) for p in r["points"]])
                                 for r in read_records(out)}
        log.info("resuming: %d units done", len(done))
    else:
        out.write_bytes(b"")
        if ckpt.exists():
            ckpt.unlink()

    fresh = 0
    for unit in iter_units(m, classes):
        if unit.uid in done:
            continue
        counts = Counter()
        lines = []
        sizes = mask_sizes(unit.action, unit.masks)
        for mask, k in zip(unit.masks.tolist(), sizes.tolist()):
            counts["subsets"] += 1
            d_g = bounds.get(q, n, k)
            if d_g is None:
                counts["unbounded"] += 1
                continue
            points = unit.action.points_of(mask)
            t0 = time.time()
            sc = screen(points, q, d_g, budget, threads)
            if sc.result is None:
                counts["discarded"] += 1
                continue
            counts["survivors"] += 1
            summary.survivor_keys.add(canonical_key(points))
            rec = _record(unit, mask, points, q, d_g, sc, time.time() - t0)
            if sc.champion is True:
                summary.champions[str(CodeProfile(n, k, sc.result.upper))] += 1
            elif sc.champion == "candidate":
                counts["candidates"] += 1
            lines.append(json.dumps(rec))
            if on_record:
                on_record(rec)
        lines.append(json.dumps({"schema": SCHEMA, "type": "unit",
                                 "class_index": unit.class_index, "branch": unit.branch,
                                 "counts": dict(counts)}))
        with open(out, "a") as fh:
            fh.write("\n".join(lines) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
            offset = fh.tell()
        summary.add_unit(unit.class_index, counts)
        done.add(unit.uid)
        _write_atomic(ckpt, {"schema": SCHEMA, "q": q, "m": m, "offset": offset,
                             "done": sorted(done), "summary": summary.to_dict()})
        fresh += 1
        if stop_after_units is not None and fresh >= stop_after_units:
            return summary
    with open(out, "a") as fh:
        fh.write(json.dumps(summary.to_dict()) + "\n")
    return summary


def read_records(path: str | Path) -> list[dict]:
    with open(path) as fh:
        return [r for r in map(json.loads, filter(str.strip, fh)) if r.get("type") == "record"]


# -- multiplicities and profile tables ---------------------------------------

def iter_point_sets(m: int, k: int | None = None, classes=None):
    """Yield ``(class, points, full)`` for every point set of the square up
    to equivalence; ``full`` marks the complete lattice-point set."""
    for unit in iter_units(m, classes):
        sizes = mask_sizes(unit.action, unit.masks)
        full_mask = (1 << unit.action.k) - 1
        for mask, kk in zip(unit.masks.tolist(), sizes.tolist()):
            if k is None or kk == k:
                yield unit.cls, unit.action.points_of(mask), mask == full_mask


def has_distance(points, q: int, d: int, budget: int = BZ_BUDGET) -> bool | None:
    """Whether the code of ``points`` has minimum distance exactly ``d``
    (``None`` when the budget runs out first)."""
    M = generator_matrix(points, q)
    if trial_distance(M, 4, stop_at=d - 1).bound < d:
        return False
    r = bz_min_distance(M, budget=budget, target=d - 1)
    if r.upper <= d - 1:
        return False
    if r.lower < d:
        return None
    if r.upper == d:
        return True
    r = bz_min_distance(M, budget=budget, target=d)
    if r.upper <= d:
        return True
    return False if r.lower > d else None


@dataclass
class Realizations:
    profile: CodeProfile
    q: int
    m: int
    keys: set = field(default_factory=set)
    undetermined: int = 0
    examined: int = 0

    @property
    def count(self) -> int:
        return len(self.keys)


def find_realizations(profile: CodeProfile, q: int, m: int, budget: int = BZ_BUDGET,
                      classes=None) -> Realizations:
    check_size(q, m)
    out = Realizations(profile, q, m)
    if profile.n != (q - 1) ** 2 or profile.d > profile.n or profile.k > profile.n:
        return out
    for _, points, _ in iter_point_sets(m, profile.k, classes):
        out.examined += 1
        ok = has_distance(points, q, profile.d, budget)
        if ok:
            out.keys.add(canonical_key(points))
        elif ok is None:
            out.undetermined += 1
    return out


def count_realizations(profile: CodeProfile, q: int, m: int, **kw) -> int:
    return find_realizations(profile, q, m, **kw).count


@dataclass
class ProfileRow:
    n: int
    k: int
    d_t: int
    d_g: int | None
    d_toric: int
    example: tuple[Point, ...]

    @property
    def meets(self) -> bool | None:
        return None if self.d_g is None else self.d_t >= self.d_g

    @property
    def generalised_required(self) -> bool:
        return self.d_t > self.d_toric


def _exact_above(points, q: int, floor: int, budget: int) -> int | None:
    """Exact distance if it exceeds ``floor``, else ``None``."""
    M = generator_matrix(points, q)
    if trial_distance(M, 4, stop_at=floor).bound <= floor:
        return None
    r = bz_min_distance(M, budget=budget, target=floor, exact=True)
    if r.upper <= floor:
        return None
    if not r.exact:
        raise SearchError("distance budget exhausted for %r" % (points,))
    return r.upper


def profile_table(q: int, m: int, bounds: BoundsTable | None = None,
                  budget: int = BZ_BUDGET, classes=None) -> list[ProfileRow]:
    """Largest exact distance per dimension over all point sets, alongside
    the largest over complete polygons (plain toric codes)."""
    check_size(q, m)
    n = (q - 1) ** 2
    best: dict[int, tuple[int, tuple]] = {}
    toric: dict[int, int] = {}
    for _, points, full in iter_point_sets(m, None, classes):
        k = len(points)
        cur = best.get(k, (0, ()))[0]
        d = _exact_above(points, q, cur, budget)
        if d is not None:
            best[k] = (d, points)
        if full:
            tcur = toric.get(k, 0)
            dt = d if d is not None else _exact_above(points, q, tcur, budget)
            if dt is not None and dt > tcur:
                toric[k] = dt
    rows = []
    for k in sorted(best):
        d, ex = best[k]
        rows.append(ProfileRow(n, k, d, bounds.get(q, n, k) if bounds else None,
                               toric.get(k, 0), ex))
    return rows
