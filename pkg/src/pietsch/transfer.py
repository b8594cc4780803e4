"""The transfer maps between sequences and step functions.

``pietsch_D`` spreads a sequence over dyadic cells, ``phi_sample`` samples the
decreasing rearrangement at the points ``2**n`` and ``phi_av`` averages it over
the dyadic cells.  Tails of the outputs are derived in closed form.
"""

from __future__ import annotations

from fractions import Fraction

from ._rational import ZERO, ceil_log2, floor_log2, pow2
from .exceptions import NonClosedForm
from .seqcore import DyadicSequence, Tail
from .stepfn import FarTail, Rearrangement, StepFunction, ZeroTail, distribution

__all__ = ["pietsch_D", "phi_sample", "phi_av", "phi_av_cell"]


def pietsch_D(x: DyadicSequence) -> StepFunction:
    """Dx = sum_n x_n chi_[2**n, 2**(n+1))."""
    bps = tuple(pow2(n) for n in range(x.lo, x.hi + 2))
    vals = x.values
    zt = None
    if x.left.is_zero:
        bps = (ZERO,) + bps
        vals = (ZERO,) + vals
    else:
        zt = ZeroTail(x.left.c, x.left.r, x.lo)
    ft = None if x.right.is_zero else FarTail(x.right.c, x.right.r, x.hi + 1)
    return StepFunction(zt, bps, vals, ZERO, ft)


def _first_level(rear: Rearrangement):
    for level in rear.levels():
        return level
    return None


def _left_frame(rear: Rearrangement):
    """(lo, left tail) valid for both samples and cell averages below lo."""
    if rear.top is not None:
        return rear.top.lo, Tail(rear.top.c, rear.top.r)
    first = _first_level(rear)
    if first is None:
        return None
    value, mass, _ = first
    return floor_log2(mass), Tail.const(value)


def _core(f: StepFunction) -> StepFunction:
    """f without its far tail."""
    if f.far_tail is None:
        return f
    return StepFunction(f.zero_tail, f.breakpoints, f.values, ZERO)


def phi_sample(f: StepFunction) -> DyadicSequence:
    """Phi f = {f*(2**n)} with right-continuous f*."""
    rear = Rearrangement(f)
    frame = _left_frame(rear)
    if frame is None:
        return DyadicSequence(0, (rear.V,), Tail.const(rear.V), Tail.const(rear.V))
    lo, left = frame
    if rear.far is None:
        hi = ceil_log2(rear.core_mass)
        right = Tail.const(rear.V)
    else:
        # Far level m (value b rho**m, mass 2**(h+m-1)) occupies
        # [2**(h+m-1) + delta_m, 2**(h+m) + delta'_m) where delta_m is the
        # non-far mass above its value minus 2**h; delta_m increases to excess.
        b, rho, h = rear.far
        core = _core(f)
        excess = rear.core_mass - pow2(h)
        if excess <= 0:
            # level m covers the sample point 2**(h+m-1) for every m >= 2
            hi, right = h, Tail(b * rho, rho)
        else:
            m = 1
            while not (distribution(core, b * rho**m) - pow2(h) > 0
                       and pow2(h + m - 1) >= excess):
                m += 1
            # from here on level m covers the sample point 2**(h+m)
            hi, right = h + m - 1, Tail(b * rho ** (m - 1), rho)
    if hi < lo:
        right, hi = right.reanchored(lo - hi), lo
    vals = rear.values_at([pow2(n) for n in range(lo, hi + 1)])
    return DyadicSequence(lo, tuple(vals), left, right)


def phi_av_cell(f: StepFunction, n: int, rear: Rearrangement = None) -> Fraction:
    """2**-n times the integral of f* over [2**n, 2**(n+1))."""
    rear = rear or Rearrangement(f)
    return rear.integral(pow2(n), pow2(n + 1)) / pow2(n)


def phi_av(f: StepFunction) -> DyadicSequence:
    """Phi_av f = {2**-n int_{2**n}^{2**(n+1)} f*}."""
    rear = Rearrangement(f)
    frame = _left_frame(rear)
    if frame is None:
        return DyadicSequence(0, (rear.V,), Tail.const(rear.V), Tail.const(rear.V))
    lo, left = frame
    if rear.far is None:
        hi = ceil_log2(rear.core_mass)
        right = Tail.const(rear.V)
    else:
        b, rho, h = rear.far
        if rear.small is not None or rear.core_mass != pow2(h):
            raise NonClosedForm(
                "cell averages of f* mix two geometric ratios at infinity"
            )
        last = rear.finite[-1][0] if rear.finite else None
        m = 1
        for v, _, idx in rear.levels():
            if idx is not None and (last is None or v < last):
                m = idx
                break
        hi, right = h + m - 2, Tail(b * rho ** (m - 1), rho)
    if hi < lo:
        right, hi = right.reanchored(lo - hi), lo
    vals = [phi_av_cell(f, n, rear) for n in range(lo, hi + 1)]
    return DyadicSequence(lo, tuple(vals), left, right)
