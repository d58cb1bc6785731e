"""Mean-value gap inequalities, candidate narrowing, and the composite machine.

Everything here runs over the finite compressible-string enumeration of a
completed budget.  The stream s_1, s_2, ... is the first-witness ordering
of strings with H_up(s) < |s|; partial sums over it, certified constants
for the two mean-value gap inequalities, and the reconstruction map that
recovers the binary expansion of a temperature from a prefix of the
compressible-string sum plus a short selector.

Transcendental constants enter only through certified rational enclosures,
so every inequality check is sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bits import bit_prefix_value, expansion_prefix, pair_to_bits
from .dyadic import Dyadic, DyadicInterval
from .enumerator import EnumerationResult
from .machine import Machine, OutcomeKind, phi
from .measures import cs_lower, cst_lower, pow2_term


class ReconstructFailed(Exception):
    """No witness indices exist at this budget (precondition gap)."""


def ln2_enclosure(terms: int = 64) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ln 2 from sum 1/(k 2**k), tail < 1/((K+1) 2**K)."""
    if terms < 1:
        raise ValueError("need at least one term")
    partial = sum(Fraction(1, k << k) for k in range(1, terms + 1))
    return partial, partial + Fraction(1, (terms + 1) << terms)


def _stream_lengths(enum: EnumerationResult) -> list[int]:
    cache = getattr(enum, "_stream_lengths", None)
    if cache is None:
        cache = [len(s) for s in enum.compressible_stream(1).members]
        enum._stream_lengths = cache
    return cache


def _cumulative(enum: EnumerationResult, x: Fraction, prec: int, weighted: bool):
    """Cumulative interval sums of 2**(-l_i/x), optionally weighted by l_i."""
    cache = getattr(enum, "_fp_cache", None)
    if cache is None:
        cache = enum._fp_cache = {}
    key = (x, prec, weighted)
    if key not in cache:
        sums = [DyadicInterval.zero()]
        for length in _stream_lengths(enum):
            term = pow2_term(Fraction(length) / x, prec)
            if weighted:
                term = term.scale(length)
            sums.append(sums[-1] + term)
        cache[key] = sums
    return cache[key]


def z_k(enum: EnumerationResult, k: int, x, prec: int = 64) -> DyadicInterval:
    """Enclosure of sum_{i<=k} 2**(-|s_i|/x); exact when the exponents are integers."""
    sums = _cumulative(enum, Fraction(x), prec, weighted=False)
    if not 0 <= k < len(sums):
        raise ValueError(f"k={k} out of range (stream length {len(sums) - 1})")
    return sums[k]


def w_k(enum: EnumerationResult, k: int, x, prec: int = 64) -> DyadicInterval:
    """Enclosure of sum_{i<=k} |s_i| 2**(-|s_i|/x)."""
    sums = _cumulative(enum, Fraction(x), prec, weighted=True)
    if not 0 <= k < len(sums):
        raise ValueError(f"k={k} out of range (stream length {len(sums) - 1})")
    return sums[k]


def stream_length(enum: EnumerationResult) -> int:
    return len(_stream_lengths(enum))


@dataclass(frozen=True)
class GapConstants:
    """Certified constants for the gap inequalities at temperatures T < t < 1.

    2**c_upper dominates W(t) ln2 / T**2 from above (upper mean-value gap);
    2**-c_lower is dominated by ln2 |s_1| 2**(-|s_1|/T) (lower gap).  The
    thresholds n0, n1 and their maximum n2 bound where the floor identities
    start to hold.
    """

    T: Fraction
    t: Fraction
    c_upper: int
    c_lower: int
    n0: int
    n1: int
    n2: int


def prefix_value(T: Fraction, n: int) -> Fraction:
    """Value of the first n expansion bits of T (expansion with infinitely many zeros)."""
    return bit_prefix_value(expansion_prefix(T, n))


def derive_constants(enum: EnumerationResult, T, t, prec: int = 96) -> GapConstants:
    """Certified gap constants from interval bounds of known rounding direction.

    c_upper uses upper bounds of W(t) and ln 2; c_lower uses lower bounds of
    the first stream term.  Requires a nonempty stream and 0 < T < t < 1.
    """
    T = Fraction(T)
    t = Fraction(t)
    if not 0 < T < t < 1:
        raise ValueError("need 0 < T < t < 1")
    k_full = stream_length(enum)
    if k_full == 0:
        raise ReconstructFailed("empty compressible stream at this budget")
    ln2_lo, ln2_hi = ln2_enclosure(max(prec, 32))

    w_hi = w_k(enum, k_full, t, prec).hi.as_fraction()
    upper = w_hi * ln2_hi / (T * T)
    c_upper = 0
    while Fraction(1 << c_upper) < upper:
        c_upper += 1

    l1 = _stream_lengths(enum)[0]
    term_lo = pow2_term(Fraction(l1) / T, prec).lo.as_fraction()
    lower = ln2_lo * l1 * term_lo
    if lower <= 0:
        raise ReconstructFailed("first-term lower bound vanished; raise prec")
    c_lower = 0
    while Fraction(1, 1 << c_lower) > lower:
        c_lower += 1

    # n0: least n such that 0.(T|n) + 2**-n < t for every n' >= n.  Beyond
    # n* with 2**-n* < t - T the condition holds automatically, so only a
    # finite scan is needed.
    n_star = 1
    while Fraction(1, 1 << n_star) >= t - T:
        n_star += 1
    n0 = n_star
    for n in range(n_star - 1, 0, -1):
        if prefix_value(T, n) + Fraction(1, 1 << n) < t:
            n0 = n
        else:
            break

    # n1: least n with (n' - c) 2**-n' <= 1 for all n' >= n; always 1 since
    # n - c <= n < 2**n, verified by scan up to the point it is monotone
    n1 = 1
    assert all(m - c_upper <= (1 << m) for m in range(1, 65))

    n2 = max(n0, n1, c_upper + 1)
    return GapConstants(T, t, c_upper, c_lower, n0, n1, n2)


def check_upper_gap(enum, k: int, constants: GapConstants, x, prec: int = 96) -> bool:
    """Certified instance of: Z_k(x) - Z_k(T) < 2**c_upper (x - T)."""
    x = Fraction(x)
    if not constants.T < x < constants.t:
        raise ValueError("x must lie strictly between T and t")
    diff_hi = (
        z_k(enum, k, x, prec).hi.as_fraction()
        - z_k(enum, k, constants.T, prec).lo.as_fraction()
    )
    return diff_hi < (1 << constants.c_upper) * (x - constants.T)


def check_lower_gap(enum, k: int, constants: GapConstants, t, prec: int = 96) -> bool:
    """Certified instance of: Z_k(t) - Z_k(T) > 2**-c_lower (t - T); needs k >= 1."""
    t = Fraction(t)
    if k < 1:
        raise ValueError("lower gap needs k >= 1 (the first stream element)")
    if not constants.T < t < 1:
        raise ValueError("t must lie strictly between T and 1")
    diff_lo = (
        z_k(enum, k, t, prec).lo.as_fraction()
        - z_k(enum, k, constants.T, prec).hi.as_fraction()
    )
    return diff_lo > Fraction(t - constants.T, 1 << constants.c_lower)


def check_floor_identities(constants: GapConstants, n: int) -> tuple[bool, bool]:
    """Both halves of the floor sandwich at n, with c = c_upper:

    floor(0.(T|n) (n-c)) <= T (n-c)   and   T (n-c) - 2 <= floor(...).
    """
    T, c = constants.T, constants.c_upper
    approx = prefix_value(T, n) * (n - c)
    floored = approx.numerator // approx.denominator
    exact = T * (n - c)
    return (floored <= exact, exact - 2 <= floored)


def _offset(j: int) -> int:
    """Candidate offset order 0, +1, -1, +2, -2, ..."""
    if j == 0:
        return 0
    return (j + 1) // 2 if j % 2 else -(j // 2)


@dataclass(frozen=True)
class CandidateSet:
    """Dyadic-integer neighbours of t_n, in offset order, clamped to n bits."""

    candidates: tuple[str, ...]
    dropped: tuple[int, ...]  # offset-order indices that left the n-bit range


def candidate_set(t_n: str, c: int) -> CandidateSet:
    n = len(t_n)
    base = int(t_n, 2) if t_n else 0
    candidates = []
    dropped = []
    for j in range((1 << (c + 1)) + 3):
        value = base + _offset(j)
        if 0 <= value < (1 << n):
            candidates.append(pair_to_bits(value, n))
        else:
            dropped.append(j)
    return CandidateSet(tuple(candidates), tuple(dropped))


def candidate_at(t_n: str, c: int, index: int) -> str:
    """Candidate at an offset-order index without materializing the set."""
    if not 0 <= index < (1 << (c + 1)) + 3:
        raise ReconstructFailed(f"selector index {index} out of candidate range")
    value = (int(t_n, 2) if t_n else 0) + _offset(index)
    if not 0 <= value < (1 << len(t_n)):
        raise ReconstructFailed(f"candidate at index {index} leaves the {len(t_n)}-bit range")
    return pair_to_bits(value, len(t_n))


@dataclass(frozen=True)
class PhiContext:
    """Finite approximation tables standing in for the proof's recursive ones.

    f: rationals strictly above the target temperature, below 1, decreasing
    toward it.  g: rationals below or equal to the tempered
    compressible-string sum, increasing toward it.  c is the candidate
    constant (the lower-gap constant).  prec controls interval certification.
    """

    f: tuple[Fraction, ...]
    g: tuple[Fraction, ...]
    c: int
    prec: int = 96


def default_context(enum: EnumerationResult, T, t, depth: int = 48, prec: int = 96) -> PhiContext:
    """Tables converging to T from above and to the tempered sum from below."""
    T = Fraction(T)
    t = Fraction(t)
    constants = derive_constants(enum, T, t, prec)
    f = tuple(T + (t - T) / (1 << l) for l in range(1, depth + 1))
    g = tuple(
        cst_lower(enum, T, prec=8 + m).lo.as_fraction() for m in range(1, depth + 1)
    )
    return PhiContext(f, g, constants.c_lower, prec)


@dataclass(frozen=True)
class _Frame:
    k0: int
    l0: int
    m0: int
    f_l0: Fraction
    g_m0: Fraction
    t_n: str


def _candidate_frame(enum: EnumerationResult, n: int, cs_prefix: str, ctx: PhiContext) -> _Frame:
    if n < 1:
        raise ReconstructFailed("n must be positive")
    alpha = Dyadic(int(cs_prefix, 2) if cs_prefix else 0, len(cs_prefix))
    members = enum.compressible_stream(1).members
    running = Dyadic.zero()
    k0 = None
    for k, s in enumerate(members, start=1):
        running = running + Dyadic.pow2(len(s))
        if alpha < running:
            k0 = k
            break
    if k0 is None:
        raise ReconstructFailed("partial sums never exceed the given prefix")
    for l0, f_l in enumerate(ctx.f, start=1):
        z_hi = z_k(enum, k0, f_l, ctx.prec).hi.as_fraction()
        for m0, g_m in enumerate(ctx.g, start=1):
            if z_hi < g_m:
                t_n = expansion_prefix(f_l, n)
                return _Frame(k0, l0, m0, f_l, g_m, t_n)
    raise ReconstructFailed("no certified (l0, m0) pair within the context tables")


def phi_reconstruct(
    enum: EnumerationResult, n: int, cs_prefix: str, selector: str, ctx: PhiContext
) -> str:
    """Rebuild an n-bit expansion prefix from a sum prefix and a selector.

    Follows the candidate-narrowing construction: locate the cutoff k0 for
    the prefix, certify an approximation pair (l0, m0), take the n-bit
    expansion of f(l0), and let the selector pick among its dyadic-integer
    neighbours.  With the correct selector the result is the target
    temperature's n-bit prefix, exactly.
    """
    if len(selector) != ctx.c + 2:
        raise ReconstructFailed(f"selector must have exactly {ctx.c + 2} bits")
    frame = _candidate_frame(enum, n, cs_prefix, ctx)
    return candidate_at(frame.t_n, ctx.c, int(selector, 2) if selector else 0)


def true_selector(enum: EnumerationResult, n: int, cs_prefix: str, target: Fraction, ctx: PhiContext) -> str:
    """Selector bits that make phi_reconstruct return target's n-bit prefix."""
    frame = _candidate_frame(enum, n, cs_prefix, ctx)
    want = int(expansion_prefix(Fraction(target), n), 2)
    base = int(frame.t_n, 2)
    diff = want - base
    j = 0 if diff == 0 else (2 * diff - 1 if diff > 0 else -2 * diff)
    if j >= (1 << (ctx.c + 1)) + 3:
        raise ReconstructFailed("target prefix is not among the candidates")
    return pair_to_bits(j, ctx.c + 2)


@dataclass(frozen=True)
class RoundTrip:
    n: int
    prefix_bits: str
    selector: str
    reconstructed: str
    expected: str
    tail_certified: bool
    k0: int

    @property
    def ok(self) -> bool:
        return self.reconstructed == self.expected and self.tail_certified


def reconstruction_roundtrip(enum: EnumerationResult, T, n: int, ctx: PhiContext) -> RoundTrip:
    """Full self-consistency pass at one n.

    Feeds the true ceil(T n)-bit prefix of the compressible-string sum
    (expansion with infinitely many ones, so the prefix value is strictly
    below the sum), derives the correct selector, reconstructs, and also
    certifies the tail bound sum_{i>k0} 2**(-|s_i|/T) < 2**-n.
    """
    T = Fraction(T)
    cs_value = cs_lower(enum).as_fraction()
    if cs_value == 0:
        raise ReconstructFailed("compressible-string sum is zero at this budget")
    m = -((-T.numerator * n) // T.denominator)  # ceil(T n)
    prefix = expansion_prefix(cs_value, m, ones=True)
    frame = _candidate_frame(enum, n, prefix, ctx)
    selector = true_selector(enum, n, prefix, T, ctx)
    rebuilt = phi_reconstruct(enum, n, prefix, selector, ctx)
    tail_ok = (
        cst_lower(enum, T, ctx.prec).hi.as_fraction()
        - z_k(enum, frame.k0, T, ctx.prec).lo.as_fraction()
        < Fraction(1, 1 << n)
    )
    return RoundTrip(n, prefix, selector, rebuilt, expansion_prefix(T, n), tail_ok, frame.k0)


@dataclass(frozen=True)
class CompositeOutcome:
    status: str  # halt | needs_more_input | halted_early | out_of_budget | undefined
    output: str | None = None
    consumed: int = 0


class CompositeMachine:
    """Prefix-free decoder for inputs p q v s.

    p and q are programs of the base machine (self-delimiting by its own
    exact-consumption reads), v has phi(output of q) bits, s has c+2 bits;
    the result is the reconstruction applied to (phi(output of p), v, s).
    Prefix-freeness is inherited: the p and q reads are self-delimiting and
    the v, s tails have lengths fixed by what precedes them.
    """

    def __init__(self, machine: Machine, enum: EnumerationResult, ctx: PhiContext):
        self.machine = machine
        self.enum = enum
        self.ctx = ctx

    def decode(self, bits: str, step_budget: int) -> CompositeOutcome:
        first = self.machine.decode_prefix(bits, step_budget)
        if first.kind is not OutcomeKind.HALT:
            return CompositeOutcome(first.kind.value, consumed=first.consumed)
        n = phi(first.output)
        rest = bits[first.consumed :]
        second = self.machine.decode_prefix(rest, step_budget)
        if second.kind is not OutcomeKind.HALT:
            return CompositeOutcome(second.kind.value, consumed=first.consumed + second.consumed)
        m = phi(second.output)
        pos = first.consumed + second.consumed
        v = bits[pos : pos + m]
        if len(v) < m:
            return CompositeOutcome("needs_more_input", consumed=len(bits))
        selector = bits[pos + m : pos + m + self.ctx.c + 2]
        if len(selector) < self.ctx.c + 2:
            return CompositeOutcome("needs_more_input", consumed=len(bits))
        consumed = pos + m + self.ctx.c + 2
        try:
            output = phi_reconstruct(self.enum, n, v, selector, self.ctx)
        except ReconstructFailed:
            return CompositeOutcome("undefined", consumed=consumed)
        status = "halt" if consumed == len(bits) else "halted_early"
        return CompositeOutcome(status, output, consumed)
