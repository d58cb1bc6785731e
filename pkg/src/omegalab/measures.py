"""The five halting-probability-style sums at a fixed enumeration budget.

All values are lower bounds for the ideal machine and exact values for the
budget-truncated machine when the enumeration is exhaustive.  Sums whose
terms are 2**(-k) for integer k are exact dyadics; rational temperatures
introduce terms 2**(-num/den) which are enclosed by outward-rounded
intervals of per-term width <= 2**-prec.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic, DyadicInterval, pow2_enclosure
from .enumerator import EnumerationResult


def _as_temperature(T) -> Fraction:
    t = Fraction(T)
    if t <= 0:
        raise ValueError("temperature must be positive")
    return t


def pow2_term(exponent: Fraction, prec: int) -> DyadicInterval:
    """Enclosure of 2**-exponent for a nonnegative rational exponent."""
    if exponent.denominator == 1:
        return DyadicInterval.point(Dyadic.pow2(exponent.numerator))
    return pow2_enclosure(exponent.numerator, exponent.denominator, prec)


def sum_pow2(exponents, prec: int) -> DyadicInterval:
    total = DyadicInterval.zero()
    for e in exponents:
        total = total + pow2_term(e, prec)
    return total


def omega_lower(enum: EnumerationResult) -> Dyadic:
    """Sum of 2**-|p| over discovered halting programs; exact dyadic."""
    total = Dyadic.zero()
    for ev in enum.events:
        total = total + Dyadic.pow2(len(ev.program))
    return total


def cs_lower(enum: EnumerationResult) -> Dyadic:
    """Sum of 2**-|s| over compressible strings (H_up(s) < |s|); exact dyadic."""
    total = Dyadic.zero()
    for s in enum.compressible_stream(1).members:
        total = total + Dyadic.pow2(len(s))
    return total


def z_lower(enum: EnumerationResult, T, prec: int = 64) -> DyadicInterval:
    """Enclosure of the tempered halting sum: 2**(-|p|/T) over halt programs.

    Degenerates to the plain halting sum at T=1 and to exact dyadics
    whenever num(T) divides every |p| * den(T).
    """
    t = _as_temperature(T)
    return sum_pow2(
        (Fraction(len(ev.program)) / t for ev in enum.events), prec
    )


def cst_lower(enum: EnumerationResult, T, prec: int = 64, trend: bool = False) -> DyadicInterval:
    """Enclosure of sum 2**(-|s|/T) over compressible strings (H_up(s) < |s|).

    The membership test does not involve T; only the exponent does.  For
    T > 1 the family diverges in the limit, so only flagged partial-sum
    trends are allowed: pass trend=True to get the partial sum anyway.
    """
    t = _as_temperature(T)
    if t > 1 and not trend:
        raise ValueError("T > 1 is a divergent family; pass trend=True for partial sums")
    return sum_pow2(
        (Fraction(len(s)) / t for s in enum.compressible_stream(1).members), prec
    )


def csbt_lower(enum: EnumerationResult, T, trend: bool = False) -> Dyadic:
    """Sum of 2**-|s| over strings with H_up(s) < T|s|; exact dyadic.

    T enters only through the membership threshold, so every term is dyadic.
    """
    t = _as_temperature(T)
    if t > 1 and not trend:
        raise ValueError("T > 1 is a divergent family; pass trend=True for partial sums")
    total = Dyadic.zero()
    for s in enum.compressible_stream(t).members:
        total = total + Dyadic.pow2(len(s))
    return total


def t_convergence_sum(enum: EnumerationResult, T) -> Dyadic:
    """Sum over compressible strings of (2**(-|s|/T))**T, by exponent algebra.

    (|s|/T) * T == |s| exactly in rational arithmetic, so the sum is the
    plain compressible-string sum, bit for bit; computed here through the
    exponent route as an independent identity check.
    """
    t = _as_temperature(T)
    total = Dyadic.zero()
    for s in enum.compressible_stream(1).members:
        inner = Fraction(len(s)) / t
        outer = inner * t
        if outer.denominator != 1:
            raise ArithmeticError("exponent algebra failed to cancel")
        total = total + Dyadic.pow2(outer.numerator)
    return total


@dataclass(frozen=True)
class MeasureReport:
    quantity: str
    T: Fraction | None
    interval: DyadicInterval
    prec: int | None
    divergent_family: bool

    def to_json(self, enum: EnumerationResult) -> dict:
        d = {
            "quantity": self.quantity,
            "T": f"{self.T.numerator}/{self.T.denominator}" if self.T is not None else None,
            "budget": {
                "max_len": enum.budget.max_len,
                "max_rounds": enum.budget.max_rounds,
            },
            "exhaustive": enum.is_exhaustive(),
            "lo": self.interval.lo.decimal(),
            "hi": self.interval.hi.decimal(),
            "exact": self.interval.exact,
            "prec": self.prec,
            "machine": enum.machine_digest,
        }
        if self.divergent_family:
            d["divergent_family"] = True
        return d


def evaluate(enum: EnumerationResult, quantity: str, T=None, prec: int = 64) -> MeasureReport:
    """Uniform entry point used by the command line."""
    t = _as_temperature(T) if T is not None else None
    divergent = t is not None and t > 1
    if quantity == "omega":
        iv, t, prec_out = DyadicInterval.point(omega_lower(enum)), None, None
        divergent = False
    elif quantity == "cs":
        iv, t, prec_out = DyadicInterval.point(cs_lower(enum)), None, None
        divergent = False
    elif quantity == "z":
        if t is None:
            raise ValueError("z requires --T")
        iv, prec_out = z_lower(enum, t, prec), prec
    elif quantity == "cst":
        if t is None:
            raise ValueError("cst requires --T")
        iv, prec_out = cst_lower(enum, t, prec, trend=divergent), prec
    elif quantity == "csbt":
        if t is None:
            raise ValueError("csbt requires --T")
        iv, prec_out = DyadicInterval.point(csbt_lower(enum, t, trend=divergent)), None
    else:
        raise ValueError(f"unknown quantity {quantity!r}")
    return MeasureReport(quantity, t, iv, prec_out, divergent)
