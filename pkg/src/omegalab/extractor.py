"""Cutoff search and incompressible-string extraction.

These are the effective procedures hiding inside the convergence proofs:
given a true binary prefix of one of the sums, find how many enumeration
terms push the partial sum past it (the cutoff), and use the per-length
census to produce a string the budgeted machine cannot compress.
"""

from __future__ import annotations

from fractions import Fraction

from .bits import pair_to_bits
from .census import census
from .dyadic import Dyadic, DyadicInterval
from .enumerator import EnumerationResult
from .measures import pow2_term


class NoCutoff(Exception):
    """The full-budget sum never exceeds the given prefix value."""


def _mode_terms(enum: EnumerationResult, T: Fraction, mode: str):
    """(stream, exponent per element) for the two sum families.

    cs mode sums 2**(-|s|/T) over strings with H_up(s) < |s|; csb mode sums
    2**(-|s|) over strings with H_up(s) < T|s|.
    """
    if mode == "cs":
        stream = enum.compressible_stream(1)
        return stream, lambda s: Fraction(len(s)) / T
    if mode == "csb":
        stream = enum.compressible_stream(T)
        return stream, lambda s: Fraction(len(s))
    raise ValueError(f"unknown mode {mode!r}")


def find_cutoff(
    enum: EnumerationResult, alpha_prefix: str, T=1, mode: str = "cs", prec: int = 64
) -> int:
    """Least k with (certified lower bound of) sum of first k terms > 0.alpha_prefix.

    Comparing against the interval's lower end keeps the strict inequality
    sound under outward rounding.
    """
    t = Fraction(T)
    if not 0 < t <= 1:
        raise ValueError("cutoff search needs 0 < T <= 1")
    alpha = Dyadic(int(alpha_prefix, 2) if alpha_prefix else 0, len(alpha_prefix))
    stream, exponent = _mode_terms(enum, t, mode)
    running = DyadicInterval.zero()
    for k, s in enumerate(stream.members, start=1):
        running = running + pow2_term(exponent(s), prec)
        if alpha < running.lo:
            return k
    raise NoCutoff(f"budget sum never exceeds 0.{alpha_prefix}")


def extract_incompressible(
    enum: EnumerationResult, n: int, T=1, mode: str = "cs"
) -> str:
    """Lexicographically least length-m string outside the census set.

    m is floor(T*n) in cs mode and n in csb mode.  Existence is guaranteed:
    the census set at any length m has fewer than 2**m members.
    """
    t = Fraction(T)
    if not 0 < t <= 1:
        raise ValueError("extraction needs 0 < T <= 1")
    if mode == "cs":
        m = (t.numerator * n) // t.denominator
        row = census(enum, m, 1)
    elif mode == "csb":
        m = n
        row = census(enum, m, t)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if m < 1:
        raise ValueError("target length floor(T*n) (or n) must be >= 1")
    for val in range(1 << m):
        s = pair_to_bits(val, m)
        if s not in row.members:
            return s
    raise AssertionError("census covered all strings of its length")  # unreachable


def verify_incompressible(enum: EnumerationResult, s: str, T=1) -> bool:
    """True iff no discovered program p outputs s with |p| < T|s|."""
    t = Fraction(T)
    h = enum.complexity_upper(s)
    if h is None:
        return True
    return h * t.denominator >= t.numerator * len(s)


def tail_after_cutoff(
    enum: EnumerationResult, k: int, T=1, mode: str = "cs", prec: int = 64
) -> DyadicInterval:
    """Enclosure of the sum of terms strictly after position k."""
    t = Fraction(T)
    stream, exponent = _mode_terms(enum, t, mode)
    running = DyadicInterval.zero()
    for s in stream.members[k:]:
        running = running + pow2_term(exponent(s), prec)
    return running
