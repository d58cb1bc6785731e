"""Dovetailed enumeration of the machine's halting programs under a budget.

The schedule is recompute-from-scratch dovetailing: round r runs every
program of length <= min(r, max_len) for 2**r steps.  Because each run is a
pure function, the whole schedule collapses to a single decode per program
with the final step cap; the round in which a program first halts is then
max(|p|, ceil(log2 steps)).  This keeps enumeration stateless, replayable,
and independent of the worker count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from . import core
from .bits import pair_to_bits
from .machine import Machine, OutcomeKind

_CHUNK = 1 << 16


@dataclass(frozen=True)
class Budget:
    """Enumeration limits: program length cap and round cap.

    Rounds beyond max_rounds never run, so a program of length L needs
    max_rounds >= L to be scheduled at all, and a halting program needs
    2**max_rounds steps to be discovered.
    """

    max_len: int
    max_rounds: int = 32

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")

    @property
    def step_cap(self) -> int:
        return 1 << self.max_rounds

    def covers(self, other: "Budget") -> bool:
        return self.max_len >= other.max_len and self.max_rounds >= other.max_rounds


@dataclass(frozen=True)
class HaltEvent:
    seq: int
    round: int
    program: str
    output: str
    steps: int


@dataclass(frozen=True)
class CompressibleStream:
    """Outputs s with H_up(s) < T|s|, in order of first qualifying witness."""

    threshold: Fraction
    members: tuple[str, ...]

    def __contains__(self, s: str) -> bool:
        return s in set(self.members)

    def __len__(self) -> int:
        return len(self.members)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


class EnumerationResult:
    """Completed enumeration: ordered halt events plus decided/undecided counts."""

    def __init__(self, events, budget, machine_digest, machine_identity, counts):
        self.events: list[HaltEvent] = list(events)
        self.budget = budget
        self.machine_digest = machine_digest
        self.machine_identity = machine_identity
        self.counts = dict(counts)
        self._table: dict[str, tuple[int, str]] | None = None

    @property
    def undecided(self) -> int:
        return self.counts.get("out_of_budget", 0)

    def is_exhaustive(self) -> bool:
        """True iff every program of length <= max_len was decided.

        In that case the halt set is exactly the domain of the truncated
        machine and every sum computed from it is an exact statement about
        that finite machine, not merely a lower bound.
        """
        return self.undecided == 0

    @property
    def complexity_table(self) -> dict[str, tuple[int, str]]:
        if self._table is None:
            table: dict[str, tuple[int, str]] = {}
            for ev in self.events:
                cur = table.get(ev.output)
                if cur is None or len(ev.program) < cur[0]:
                    table[ev.output] = (len(ev.program), ev.program)
            self._table = table
        return self._table

    def complexity_upper(self, s: str) -> int | None:
        entry = self.complexity_table.get(s)
        return entry[0] if entry else None

    def witness(self, s: str) -> str | None:
        entry = self.complexity_table.get(s)
        return entry[1] if entry else None

    def compressible_stream(self, threshold: Fraction | int) -> CompressibleStream:
        """Distinct outputs with H_up(s) < T|s|, entered at their first witness.

        Membership is the exact rational comparison |p| * den(T) < num(T) * |s|.
        """
        t = Fraction(threshold)
        if t <= 0:
            raise ValueError("threshold must be positive")
        seen: set[str] = set()
        members: list[str] = []
        for ev in self.events:
            if len(ev.program) * t.denominator < t.numerator * len(ev.output):
                if ev.output not in seen:
                    seen.add(ev.output)
                    members.append(ev.output)
        return CompressibleStream(t, tuple(members))


def _scan_task(args):
    length, lo, hi, cap = args
    return core.kernel_for(length, cap).scan_halts(length, lo, hi, cap)


def enumerate_domain(machine: Machine, budget: Budget, workers: int = 1) -> EnumerationResult:
    """Decide every program of length <= max_len under the budget's schedule.

    The result is identical for any worker count: tasks are fixed slices of
    the program space and events are merged in canonical order afterwards.
    """
    cap = budget.step_cap
    counts = {
        "halt": 0,
        "needs_more_input": 0,
        "halted_early": 0,
        "no_such_submachine": 0,
        "out_of_budget": 0,
    }
    tasks = []
    for length in range(1, budget.max_len + 1):
        if length > budget.max_rounds:
            # never scheduled: round r only admits programs of length <= r
            counts["out_of_budget"] += 1 << length
            continue
        total = 1 << length
        for lo in range(0, total, _CHUNK):
            tasks.append((length, lo, min(lo + _CHUNK, total), cap))

    if workers > 1 and tasks:
        with Pool(workers) as pool:
            results = pool.map(_scan_task, tasks)
    else:
        results = [_scan_task(t) for t in tasks]

    raw_events = []
    for (length, lo, hi, _), (halts, nmi, early, oob, sub_vals) in zip(tasks, results):
        counts["needs_more_input"] += nmi
        counts["halted_early"] += early
        counts["out_of_budget"] += oob
        for val, out_val, out_len, steps in halts:
            raw_events.append((length, val, pair_to_bits(out_val, out_len), steps))
        for val in sub_vals:
            outcome = machine.run_pair(val, length, cap)
            if outcome.kind is OutcomeKind.HALT:
                raw_events.append((length, val, outcome.output, outcome.steps))
            else:
                key = outcome.kind.value
                counts[key] = counts.get(key, 0) + 1

    keyed = []
    for length, val, output, steps in raw_events:
        rnd = max(length, _ceil_log2(steps))
        if rnd > budget.max_rounds:
            counts["out_of_budget"] += 1
            continue
        keyed.append((rnd, length, val, output, steps))
    keyed.sort(key=lambda item: item[:3])

    events = []
    for seq, (rnd, length, val, output, steps) in enumerate(keyed, start=1):
        events.append(HaltEvent(seq, rnd, pair_to_bits(val, length), output, steps))
    counts["halt"] = len(events)

    return EnumerationResult(events, budget, machine.digest(), machine.identity(), counts)


def write_log(result: EnumerationResult, path) -> None:
    """JSONL event log: one header line, then one line per halt event."""
    with open(path, "w") as fh:
        header = {
            "machine": result.machine_digest,
            "identity": result.machine_identity,
            "budget": {"max_len": result.budget.max_len, "max_rounds": result.budget.max_rounds},
            "exhaustive": result.is_exhaustive(),
            "counts": result.counts,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for ev in result.events:
            fh.write(
                json.dumps(
                    {
                        "seq": ev.seq,
                        "round": ev.round,
                        "program": ev.program,
                        "output": ev.output,
                        "steps": ev.steps,
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def load_log(path) -> EnumerationResult:
    with open(path) as fh:
        header = json.loads(fh.readline())
        events = []
        for line in fh:
            d = json.loads(line)
            events.append(HaltEvent(d["seq"], d["round"], d["program"], d["output"], d["steps"]))
    budget = Budget(header["budget"]["max_len"], header["budget"]["max_rounds"])
    return EnumerationResult(events, budget, header["machine"], header["identity"], header["counts"])
