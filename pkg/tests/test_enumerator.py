from fractions import Fraction

import pytest

from omegalab import Budget, enumerate_domain
from omegalab.enumerator import load_log, write_log
from reference import ref_halting_set, ref_steps


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(0)
    with pytest.raises(ValueError):
        Budget(4, 0)
    assert Budget(8).step_cap == 1 << 32
    assert Budget(10, 20).covers(Budget(8, 16))
    assert not Budget(10, 20).covers(Budget(12, 16))


def test_l2_events(enum_at):
    res = enum_at(2, 8)
    assert [(e.program, e.output, e.round, e.seq) for e in res.events] == [("01", "", 2, 1)]
    assert res.counts["halt"] == 1
    assert res.counts["needs_more_input"] == 5
    assert res.is_exhaustive()


def test_rounds_and_order(enum14):
    # canonical order: (round, length, lex); seq dense from 1
    keys = [(e.round, len(e.program), e.program) for e in enum14.events]
    assert keys == sorted(keys)
    assert [e.seq for e in enum14.events] == list(range(1, len(enum14.events) + 1))
    for e in enum14.events:
        assert e.round >= len(e.program)
        assert (1 << e.round) >= e.steps  # halts within its discovery round


def test_matches_reference_halting_set(enum_at):
    res = enum_at(12)
    got = {(e.program, e.output) for e in res.events}
    want = set(ref_halting_set(12))
    assert got == want
    steps = {e.program: e.steps for e in res.events}
    for p, s in want:
        assert steps[p] == ref_steps(p, s)


def test_round_cap_excludes_long_programs(machine):
    res = enumerate_domain(machine, Budget(6, 4))
    # lengths 5, 6 never scheduled within 4 rounds
    assert not res.is_exhaustive()
    assert res.counts["out_of_budget"] >= (1 << 5) + (1 << 6)
    assert all(len(e.program) <= 4 for e in res.events)


def test_worker_independence(machine):
    one = enumerate_domain(machine, Budget(12, 32), workers=1)
    four = enumerate_domain(machine, Budget(12, 32), workers=4)
    assert one.events == four.events
    assert one.counts == four.counts


def test_determinism(machine):
    a = enumerate_domain(machine, Budget(10, 32))
    b = enumerate_domain(machine, Budget(10, 32))
    assert a.events == b.events


def test_complexity_table(enum14):
    assert enum14.complexity_upper("") == 2
    assert enum14.witness("") == "01"
    assert enum14.complexity_upper("0" * 20) <= 12
    assert enum14.complexity_upper("1" * 300) is None
    h, w = enum14.complexity_table["0" * 12]
    assert h == len(w) == 11


def test_compressible_stream(enum14):
    st = enum14.compressible_stream(1)
    assert st.members[0] == "0" * 12
    assert len(st.members) == 115
    assert all(s == "0" * len(s) for s in st.members)  # only zero runs compress here
    assert len(set(st.members)) == len(st.members)
    for s in st.members:
        assert enum14.complexity_upper(s) < len(s)
    half = enum14.compressible_stream(Fraction(1, 2))
    for s in half.members:
        assert 2 * enum14.complexity_upper(s) < len(s)
    with pytest.raises(ValueError):
        enum14.compressible_stream(0)


def test_stream_first_witness_order(enum14):
    st = enum14.compressible_stream(1)
    first = []
    seen = set()
    for e in enum14.events:
        if e.output in seen or not len(e.program) < len(e.output):
            continue
        seen.add(e.output)
        first.append(e.output)
    assert list(st.members) == first


def test_log_roundtrip(tmp_path, enum14):
    path = tmp_path / "log.jsonl"
    write_log(enum14, path)
    back = load_log(path)
    assert back.events == enum14.events
    assert back.counts == enum14.counts
    assert back.budget == enum14.budget
    assert back.machine_digest == enum14.machine_digest
    assert back.is_exhaustive()
