"""Exact rational helpers shared by every module."""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
TWO = Fraction(2)


def q(value) -> Fraction:
    """Coerce ints, Fractions, floats and ``"p/q"`` strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    return Fraction(value)


def fmt(value) -> str:
    """Serialize a rational as ``"p/q"`` (denominator always present)."""
    value = q(value)
    return f"{value.numerator}/{value.denominator}"


def fmt_any(value):
    """Serialize an exact or floating value for JSON output."""
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return fmt(value)
    if value == INF:
        return "inf"
    if value == -INF:
        return "-inf"
    return float(f"{float(value):.17g}")


def pow2(n: int) -> Fraction:
    return Fraction(2) ** n


def floor_log2(t: Fraction) -> int:
    """Largest n with 2**n <= t, for t > 0."""
    t = q(t)
    if t <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    n = t.numerator.bit_length() - t.denominator.bit_length()
    while pow2(n) > t:
        n -= 1
    while pow2(n + 1) <= t:
        n += 1
    return n


def ceil_log2(t: Fraction) -> int:
    """Smallest n with 2**n >= t, for t > 0."""
    n = floor_log2(t)
    return n if pow2(n) == t else n + 1


def exact_log2(s: Fraction):
    """Return n if s == 2**n, else None."""
    s = q(s)
    if s <= 0:
        return None
    n = floor_log2(s)
    return n if pow2(n) == s else None


def exact_root(value: Fraction, k: int):
    """k-th root of a nonnegative rational if it is rational, else None."""
    value = q(value)
    if value < 0:
        return None
    if value == 0:
        return ZERO
    num = _int_root(value.numerator, k)
    den = _int_root(value.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, k: int):
    r = round(n ** (1.0 / k)) if n < 2**1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**k <= n:
                lo = mid
            else:
                hi = mid - 1
        r = lo
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None
