"""Per-length census of compressible strings.

A census row collects every length-n string found compressible at the
current budget.  In exhaustive mode the membership is exact for the
truncated machine, and the strict-subset property (fewer than 2**n members
at every n) is a theorem, not an observation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

from .bits import nat_to_string
from .enumerator import EnumerationResult


@dataclass(frozen=True)
class CensusRow:
    n: int
    members: frozenset[str]
    count: int
    h_upper_n: int | None  # H_up of the string identified with the number n

    @property
    def gap(self) -> float | None:
        """n - log2(count); diagnostic only, never asserted against a constant."""
        if self.count == 0:
            return None
        return self.n - math.log2(self.count)


def census(enum: EnumerationResult, n: int, T=1) -> CensusRow:
    """Length-n compressible strings under threshold T (H_up(s) < T*n)."""
    if n < 0:
        raise ValueError("n must be a natural number")
    t = Fraction(T)
    members = frozenset(
        s for s in enum.compressible_stream(t).members if len(s) == n
    )
    return CensusRow(n, members, len(members), enum.complexity_upper(nat_to_string(n)))


def census_profile(enum: EnumerationResult, T=1, n_max: int | None = None) -> list[CensusRow]:
    """Census rows for n = 0 .. n_max (default: longest compressible string)."""
    t = Fraction(T)
    stream = enum.compressible_stream(t)
    if n_max is None:
        n_max = max((len(s) for s in stream.members), default=0)
    by_len: dict[int, set[str]] = {}
    for s in stream.members:
        by_len.setdefault(len(s), set()).add(s)
    rows = []
    for n in range(n_max + 1):
        members = frozenset(by_len.get(n, set()))
        rows.append(CensusRow(n, members, len(members), enum.complexity_upper(nat_to_string(n))))
    return rows


def write_profile_csv(rows: list[CensusRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "count", "two_pow_n", "gap", "h_upper_n"])
        for row in rows:
            writer.writerow(
                [
                    row.n,
                    row.count,
                    1 << row.n,
                    "" if row.gap is None else f"{row.gap:.6f}",
                    "" if row.h_upper_n is None else row.h_upper_n,
                ]
            )
