"""Best-known minimum distances d_g keyed by (q, n, k).

Only values readable from the champion table are built in; everything else
must be ingested from a CSV file of ``q,n,k,d`` lines.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from pathlib import Path

BOUNDS_ENV = "GTORIC_BOUNDS"

# (8, 49, k) -> d of the champion codes, plus the [49,12,28] code that was
# already on record
_RECORDS = {12: 28, 13: 27, 14: 26, 16: 24, 17: 23, 19: 21, 25: 16, 26: 15}

# [36,19,12] over GF(7) is not catalogued but is not to be counted as a champion
_EXCLUSIONS = {(7, 36, 19): 12}


class BoundsParseError(ValueError):
    pass


@dataclass
class BoundsTable:
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    provenance: dict[tuple[int, int, int], str] = field(default_factory=dict)

    @classmethod
    def builtin(cls, edition: str = "records") -> "BoundsTable":
        """``records``: the champion distances themselves, so only strictly
        better codes count.  ``prior``: one below each new champion
        distance (28 kept for k = 12), the reference point for re-finding
        the champions."""
        t = cls()
        if edition == "records":
            for k, d in _RECORDS.items():
                t.set(8, 49, k, d, "builtin")
        elif edition == "prior":
            for k, d in _RECORDS.items():
                t.set(8, 49, k, d if k == 12 else d - 1, "builtin-prior")
        elif edition != "none":
            raise ValueError("unknown bounds edition %r" % edition)
        for key, d in _EXCLUSIONS.items():
            t.set(*key, d, "builtin-exclusion")
        return t

    def set(self, q: int, n: int, k: int, d: int, provenance: str = "ingested") -> None:
        self.entries[(q, n, k)] = d
        self.provenance[(q, n, k)] = provenance

    def get(self, q: int, n: int, k: int) -> int | None:
        return self.entries.get((q, n, k))

    def ingested(self) -> bool:
        return any(p == "ingested" for p in self.provenance.values())

    def is_champion(self, q: int, n: int, k: int, d: int) -> bool | None:
        dg = self.get(q, n, k)
        return None if dg is None else d > dg

    def __len__(self) -> int:
        return len(self.entries)


def load_bounds(path: str | Path | None, base: BoundsTable | None = None) -> BoundsTable:
    """Merge a ``q,n,k,d`` CSV over ``base`` (builtin records by default);
    ingested lines win."""
    table = base if base is not None else BoundsTable.builtin()
    if path is None:
        return table
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            try:
                q, n, k, d = (int(x) for x in row)
            except ValueError:
                raise BoundsParseError("%s:%d: expected four integers q,n,k,d, got %r"
                                       % (path, lineno, ",".join(row))) from None
            if q < 2 or n < 1 or not 1 <= k <= n or not 1 <= d <= n:
                raise BoundsParseError("%s:%d: out-of-range entry q=%d n=%d k=%d d=%d"
                                       % (path, lineno, q, n, k, d))
            table.set(q, n, k, d, "ingested")
    return table


def default_bounds_path() -> str | None:
    return os.environ.get(BOUNDS_ENV) or None
