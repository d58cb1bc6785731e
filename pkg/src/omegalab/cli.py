"""Batch front end: enumerate, measure, census, extract, fixedpoint.

Artifacts are plain JSON/JSONL/CSV with the machine digest and budget
embedded, so any of them can be regenerated bit for bit from its own
metadata.  Worker count never changes output bytes.  Exit codes: 0 on
success, 2 on usage errors (argparse's default), 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import census as census_mod
from . import enumerator, extractor, fixedpoint, measures
from .machine import Machine


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("temperature must be positive")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    budget = enumerator.Budget(args.max_len, args.max_rounds)
    result = enumerator.enumerate_domain(Machine(), budget, workers=args.workers)
    enumerator.write_log(result, args.out)
    summary = {
        "events": len(result.events),
        "exhaustive": result.is_exhaustive(),
        "counts": result.counts,
        "machine": result.machine_digest,
        "budget": {"max_len": budget.max_len, "max_rounds": budget.max_rounds},
        "log": args.out,
    }
    sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_measure(args) -> int:
    enum = enumerator.load_log(args.log)
    report = measures.evaluate(enum, args.quantity, args.T, args.prec)
    _emit(report.to_json(enum), args.out)
    return 0


def cmd_census(args) -> int:
    enum = enumerator.load_log(args.log)
    rows = census_mod.census_profile(enum, args.T, args.n_max)
    census_mod.write_profile_csv(rows, args.out)
    if args.members:
        with open(args.members, "w") as fh:
            header = {
                "machine": enum.machine_digest,
                "budget": {"max_len": enum.budget.max_len, "max_rounds": enum.budget.max_rounds},
                "T": _frac_str(args.T),
            }
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for row in rows:
                for s in sorted(row.members):
                    fh.write(json.dumps({"n": row.n, "s": s}, sort_keys=True) + "\n")
    sys.stdout.write(f"wrote {len(rows)} census rows to {args.out}\n")
    return 0


def cmd_extract(args) -> int:
    enum = enumerator.load_log(args.log)
    s = extractor.extract_incompressible(enum, args.n, args.T, args.mode)
    payload = {
        "n": args.n,
        "T": _frac_str(args.T),
        "mode": args.mode,
        "string": s,
        "verified": extractor.verify_incompressible(enum, s, args.T),
        "exhaustive": enum.is_exhaustive(),
        "advisory": not enum.is_exhaustive(),
        "machine": enum.machine_digest,
        "budget": {"max_len": enum.budget.max_len, "max_rounds": enum.budget.max_rounds},
    }
    _emit(payload, args.out)
    return 0


def cmd_fixedpoint(args) -> int:
    enum = enumerator.load_log(args.log)
    consts = fixedpoint.derive_constants(enum, args.T, args.t, args.prec)
    k_full = fixedpoint.stream_length(enum)
    span = args.t - args.T
    grid = [args.T + span * Fraction(j, args.grid + 1) for j in range(1, args.grid + 1)]
    upper_ok = all(
        fixedpoint.check_upper_gap(enum, k, consts, x, args.prec)
        for x in grid
        for k in range(0, k_full + 1)
    )
    lower_ok = all(
        fixedpoint.check_lower_gap(enum, k, consts, args.t, args.prec)
        for k in range(1, k_full + 1)
    )
    floors = [fixedpoint.check_floor_identities(consts, n) for n in range(consts.n2, 65)]
    ctx = fixedpoint.default_context(enum, args.T, args.t, prec=args.prec)
    trips = []
    for n in range(1, args.n_max + 1):
        trip = fixedpoint.reconstruction_roundtrip(enum, args.T, n, ctx)
        trips.append({"n": n, "ok": trip.ok, "selector_bits": len(trip.selector)})
    payload = {
        "T": _frac_str(args.T),
        "t": _frac_str(args.t),
        "constants": {
            "c_upper": consts.c_upper,
            "c_lower": consts.c_lower,
            "n0": consts.n0,
            "n1": consts.n1,
            "n2": consts.n2,
        },
        "upper_gap_all_k_and_grid": upper_ok,
        "lower_gap_all_k": lower_ok,
        "floor_identities_all_n": all(a and b for a, b in floors),
        "roundtrips": trips,
        "roundtrip_all_ok": all(t["ok"] for t in trips),
        "stream_length": k_full,
        "machine": enum.machine_digest,
        "budget": {"max_len": enum.budget.max_len, "max_rounds": enum.budget.max_rounds},
    }
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omegalab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="decide all programs up to a length cap")
    p.add_argument("--max-len", type=_positive, required=True)
    p.add_argument("--max-rounds", type=_positive, default=32)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("measure", help="evaluate one of the five sums from a log")
    p.add_argument("--quantity", choices=["omega", "cs", "z", "cst", "csbt"], required=True)
    p.add_argument("--T", type=_fraction, default=None)
    p.add_argument("--prec", type=_positive, default=64)
    p.add_argument("--log", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("census", help="per-length compressible-string census CSV")
    p.add_argument("--T", type=_fraction, default=Fraction(1))
    p.add_argument("--n-max", type=_positive, default=None)
    p.add_argument("--log", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--members", default=None, help="optional JSONL membership dump")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("extract", help="produce a budget-incompressible string")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--T", type=_fraction, default=Fraction(1))
    p.add_argument("--mode", choices=["cs", "csb"], default="cs")
    p.add_argument("--log", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fixedpoint", help="gap constants, inequality sweeps, reconstruction")
    p.add_argument("--T", type=_fraction, required=True)
    p.add_argument("--t", type=_fraction, required=True)
    p.add_argument("--n-max", type=_positive, default=24)
    p.add_argument("--grid", type=_positive, default=16)
    p.add_argument("--prec", type=_positive, default=96)
    p.add_argument("--log", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fixedpoint)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # runtime failures -> exit 1, usage already exits 2
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
