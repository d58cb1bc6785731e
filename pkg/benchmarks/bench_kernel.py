"""Compare the compiled decode kernel against the pure-Python twin.

Run:  python3 benchmarks/bench_kernel.py [max_len]

Scans every program up to max_len with both kernels, checks that the
aggregate results agree, and reports wall time and throughput.
"""

import sys
import time

from omegalab import _purecore
from omegalab.enumerator import _CHUNK

try:
    from omegalab import _fastcore
except ImportError:
    _fastcore = None


def scan_all(kernel, max_len: int, cap: int):
    totals = [0, 0, 0, 0]  # halts, nmi, early, oob
    sub_total = 0
    halt_hash = 0
    for length in range(1, max_len + 1):
        total = 1 << length
        for lo in range(0, total, _CHUNK):
            halts, nmi, early, oob, sub_vals = kernel.scan_halts(
                length, lo, min(lo + _CHUNK, total), cap
            )
            totals[0] += len(halts)
            totals[1] += nmi
            totals[2] += early
            totals[3] += oob
            sub_total += len(sub_vals)
            for h in halts:
                halt_hash = (halt_hash * 1000003 + hash(tuple(h))) & (2**64 - 1)
    return totals, sub_total, halt_hash


def main():
    max_len = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    cap = 1 << 32
    programs = (1 << (max_len + 1)) - 2

    results = {}
    for name, kernel in (("pure-python", _purecore), ("cython", _fastcore)):
        if kernel is None:
            print(f"{name:12s}  (not built)")
            continue
        t0 = time.perf_counter()
        summary = scan_all(kernel, max_len, cap)
        dt = time.perf_counter() - t0
        results[name] = summary
        print(f"{name:12s}  {dt:8.3f} s   {programs / dt:12.0f} programs/s")

    if len(results) == 2:
        a, b = results.values()
        print("agree:", a == b)
        if a != b:
            sys.exit(1)


if __name__ == "__main__":
    main()
