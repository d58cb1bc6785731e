# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled decode kernel; semantic twin of _purecore (see its docstring).

Restricted to program lengths <= 62 and step budgets < 2**62 so everything
fits in C long longs; omegalab.core falls back to the pure kernel outside
that range.
"""

HALT = 0
NEEDS_INPUT = 1
HALTED_EARLY = 2
OUT_OF_BUDGET = 3
SUBMACHINE = 5

IMPLEMENTATION = "cython"

DEF K_HALT = 0
DEF K_NMI = 1
DEF K_EARLY = 2
DEF K_OOB = 3
DEF K_SUB = 5


cdef struct Outcome:
    int kind
    long long out_val
    long long out_len
    long long consumed
    long long steps
    long long sub_index


cdef inline Outcome _decode(long long val, long long length, long long budget) noexcept nogil:
    cdef Outcome o
    cdef long long pos = 0, steps = 0
    cdef long long n, w, wlen, out_val, out_len
    cdef int branch = 0, bit, zeros, i

    o.out_val = 0
    o.out_len = 0
    o.sub_index = 0

    # branch header
    for i in range(3):
        if steps + 1 > budget:
            o.kind = K_OOB; o.consumed = pos; o.steps = budget
            return o
        if pos >= length:
            o.kind = K_NMI; o.consumed = pos; o.steps = steps
            return o
        steps += 1
        bit = <int>((val >> (length - 1 - pos)) & 1)
        pos += 1
        if bit == 0:
            break
        branch += 1

    # Elias gamma
    zeros = 0
    while True:
        if steps + 1 > budget:
            o.kind = K_OOB; o.consumed = pos; o.steps = budget
            return o
        if pos >= length:
            o.kind = K_NMI; o.consumed = pos; o.steps = steps
            return o
        steps += 1
        bit = <int>((val >> (length - 1 - pos)) & 1)
        pos += 1
        if bit == 1:
            break
        zeros += 1
    n = 1
    for i in range(zeros):
        if steps + 1 > budget:
            o.kind = K_OOB; o.consumed = pos; o.steps = budget
            return o
        if pos >= length:
            o.kind = K_NMI; o.consumed = pos; o.steps = steps
            return o
        steps += 1
        bit = <int>((val >> (length - 1 - pos)) & 1)
        pos += 1
        n = (n << 1) | bit

    if branch == 3:
        o.kind = K_SUB; o.consumed = pos; o.steps = steps; o.sub_index = n
        return o

    w = 0
    for i in range(<int>(n - 1)):
        if steps + 1 > budget:
            o.kind = K_OOB; o.consumed = pos; o.steps = budget
            return o
        if pos >= length:
            o.kind = K_NMI; o.consumed = pos; o.steps = steps
            return o
        steps += 1
        bit = <int>((val >> (length - 1 - pos)) & 1)
        pos += 1
        w = (w << 1) | bit
    wlen = n - 1

    if branch == 0:
        out_val = w; out_len = wlen
    elif branch == 1:
        out_val = (w << wlen) | w; out_len = 2 * wlen
    else:
        out_val = 0; out_len = ((<long long>1 << wlen) | w) - 1

    if steps + out_len + 1 > budget:
        o.kind = K_OOB; o.consumed = pos; o.steps = budget
        return o
    steps += out_len + 1
    o.kind = K_HALT if pos == length else K_EARLY
    o.out_val = out_val; o.out_len = out_len
    o.consumed = pos; o.steps = steps
    return o


def decode_pair(long long val, long long length, long long budget):
    cdef Outcome o = _decode(val, length, budget)
    return (o.kind, o.out_val, o.out_len, o.consumed, o.steps, o.sub_index)


def scan_halts(long long length, long long lo, long long hi, long long budget):
    cdef long long v
    cdef long long nmi = 0, early = 0, oob = 0
    cdef Outcome o
    halts = []
    sub_vals = []
    for v in range(lo, hi):
        o = _decode(v, length, budget)
        if o.kind == K_HALT:
            halts.append((v, o.out_val, o.out_len, o.steps))
        elif o.kind == K_NMI:
            nmi += 1
        elif o.kind == K_EARLY:
            early += 1
        elif o.kind == K_OOB:
            oob += 1
        else:
            sub_vals.append(v)
    return halts, nmi, early, oob, sub_vals
