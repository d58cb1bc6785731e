"""Pure-Python decode kernel for the four-branch prefix-free machine.

The compiled twin lives in _fastcore.pyx; both implement exactly the same
contract and are interchangeable (omegalab.core picks one at import time).

Programs are packed bit strings (value, length), MSB first.  The decoder
reads bits left to right:

    0   g(n) w   |w| = n-1   -> w                  (raw)
    10  g(n) w   |w| = n-1   -> w w                (square)
    110 g(n) w   |w| = n-1   -> 0**phi(w)          (zero run)
    111 g(e) rest            -> submachine e on rest

where g is the Elias gamma code and phi(w) = int('1'+w, 2) - 1.  A program
halts only if the decoder finishes having consumed every input bit.

Step accounting (shared contract): one step per input bit read, one step per
output bit emitted, plus one final halt transition.
"""

from __future__ import annotations

HALT = 0
NEEDS_INPUT = 1
HALTED_EARLY = 2
OUT_OF_BUDGET = 3
SUBMACHINE = 5

IMPLEMENTATION = "pure-python"


def decode_pair(val: int, length: int, budget: int):
    """Decode one program.

    Returns (kind, out_val, out_len, consumed, steps, sub_index).  For
    SUBMACHINE, consumed covers the '111' header plus g(e) and sub_index is
    e; the caller routes the remaining bits to the registered decoder.
    """
    pos = 0
    steps = 0

    # inlined bit reader: None signals needs-more-input, -1 budget exhaustion
    def read():
        nonlocal pos, steps
        if steps + 1 > budget:
            return -1
        if pos >= length:
            return None
        steps += 1
        bit = (val >> (length - 1 - pos)) & 1
        pos += 1
        return bit

    branch = 0
    for _ in range(3):
        bit = read()
        if bit is None:
            return (NEEDS_INPUT, 0, 0, pos, steps, 0)
        if bit < 0:
            return (OUT_OF_BUDGET, 0, 0, pos, budget, 0)
        if bit == 0:
            break
        branch += 1

    # Elias gamma: count zeros, then read that many more numeral bits
    zeros = 0
    while True:
        bit = read()
        if bit is None:
            return (NEEDS_INPUT, 0, 0, pos, steps, 0)
        if bit < 0:
            return (OUT_OF_BUDGET, 0, 0, pos, budget, 0)
        if bit == 1:
            break
        zeros += 1
    n = 1
    for _ in range(zeros):
        bit = read()
        if bit is None:
            return (NEEDS_INPUT, 0, 0, pos, steps, 0)
        if bit < 0:
            return (OUT_OF_BUDGET, 0, 0, pos, budget, 0)
        n = (n << 1) | bit

    if branch == 3:
        return (SUBMACHINE, 0, 0, pos, steps, n)

    w = 0
    for _ in range(n - 1):
        bit = read()
        if bit is None:
            return (NEEDS_INPUT, 0, 0, pos, steps, 0)
        if bit < 0:
            return (OUT_OF_BUDGET, 0, 0, pos, budget, 0)
        w = (w << 1) | bit
    wlen = n - 1

    if branch == 0:
        out_val, out_len = w, wlen
    elif branch == 1:
        out_val, out_len = (w << wlen) | w, 2 * wlen
    else:
        out_val, out_len = 0, ((1 << wlen) | w) - 1

    if steps + out_len + 1 > budget:
        return (OUT_OF_BUDGET, 0, 0, pos, budget, 0)
    steps += out_len + 1
    kind = HALT if pos == length else HALTED_EARLY
    return (kind, out_val, out_len, pos, steps, 0)


def scan_halts(length: int, lo: int, hi: int, budget: int):
    """Decode every program (v, length) for v in [lo, hi).

    Returns (halts, nmi, early, oob, sub_vals) where halts is a list of
    (val, out_val, out_len, steps) and sub_vals collects programs that hit
    the submachine branch (decided by the caller against its registry).
    """
    halts = []
    sub_vals = []
    nmi = early = oob = 0
    for v in range(lo, hi):
        kind, out_val, out_len, _, steps, _ = decode_pair(v, length, budget)
        if kind == HALT:
            halts.append((v, out_val, out_len, steps))
        elif kind == NEEDS_INPUT:
            nmi += 1
        elif kind == HALTED_EARLY:
            early += 1
        elif kind == OUT_OF_BUDGET:
            oob += 1
        else:
            sub_vals.append(v)
    return halts, nmi, early, oob, sub_vals
