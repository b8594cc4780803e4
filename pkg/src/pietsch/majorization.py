"""Uniform majorization of singular value functions.

``Y`` is uniformly majorized by ``X`` with constant ``lam`` when

    int_{lam*a}^{b} mu(Y) <= int_{a}^{b} mu(X)   for all 0 <= lam*a <= b.

With ``F(t) = int_0^t`` the gap splits as ``G(a, b) = g1(b) - g2(a)`` where
``g1 = F_X - F_Y`` and ``g2(a) = F_X(a) - F_Y(lam*a)``.  Both are piecewise
linear, so G is linear on every cell of the grid cut out by the kinks of g1
(in b), the kinks of g2 (in a) and the diagonal ``lam*a = b``.  A linear
function on a convex polygon is minimized at a vertex; on the diagonal
``G = int_a^{lam*a} mu(X) >= 0``, so only grid vertices with ``lam*a <= b``
matter.  Along unbounded cells G grows with slope ``V_X - V_Y`` in b (the
constant values at infinity) and with slope ``(lam-1) V_X >= 0`` along the
diagonal direction, so the only limit to check is ``V_X >= V_Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._rational import ZERO, pow2, q
from .exceptions import DivergentIntegral, UnsupportedTail
from .opmodel import add, singular_value_function
from .stepfn import StepFunction, decreasing_rearrangement, dilate, scale
from . import stepfn

__all__ = [
    "MajorizationResult",
    "uniformly_majorized",
    "series_majorization_check",
    "grid_majorized",
]


@dataclass
class MajorizationResult:
    holds: bool
    margin: object  # smallest G over the checked vertices
    witness: Optional[tuple] = None  # (a, b) attaining a negative gap
    checked: int = 0

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        from ._rational import fmt_any

        return {
            "majorized": self.holds,
            "margin": fmt_any(self.margin),
            "witness": None if self.witness is None else [fmt_any(v) for v in self.witness],
            "checked": self.checked,
        }


def _mu(Z) -> StepFunction:
    if isinstance(Z, StepFunction):
        mu = decreasing_rearrangement(Z)
    else:
        mu = singular_value_function(Z)
    if mu.zero_tail is not None and mu.zero_tail.r >= 2:
        raise DivergentIntegral("mu is not integrable near 0 (zero-tail ratio >= 2)")
    if not mu.is_tail_free():
        raise UnsupportedTail("uniform majorization is decided for tail-free mu only")
    return mu


class _Primitive:
    """F(t) = int_0^t mu, evaluated with a running sum over sorted pieces."""

    def __init__(self, mu: StepFunction):
        self.mu = mu
        self.starts = list(mu.breakpoints)
        acc, cum = [ZERO], ZERO
        for lo, hi, v in mu.pieces():
            cum += (hi - lo) * v
            acc.append(cum)
        self.acc = acc

    def __call__(self, t: Fraction) -> Fraction:
        from bisect import bisect_right

        bps = self.starts
        if t >= bps[-1]:
            return self.acc[-1] + (t - bps[-1]) * self.mu.v_inf
        i = bisect_right(bps, t) - 1
        return self.acc[i] + (t - bps[i]) * self.mu.values[i]


def uniformly_majorized(Y, X, lam: int = 1, tolerance=0) -> MajorizationResult:
    """Decide ``Y`` uniformly majorized by ``X`` with constant ``lam``."""
    if int(lam) != lam or lam < 1:
        raise ValueError("lambda must be a positive integer")
    lam = int(lam)
    muY, muX = _mu(Y), _mu(X)
    FX, FY = _Primitive(muX), _Primitive(muY)
    if muX.v_inf < muY.v_inf:
        far = max(muX.t_end, muY.t_end) + 1
        b = far + (FY(far) - FX(far)) / (muY.v_inf - muX.v_inf) + 1
        gap = FX(b) - FY(b)
        return MajorizationResult(False, gap, (ZERO, b), 1)
    b_cands = sorted(set(muX.breakpoints) | set(muY.breakpoints))
    a_cands = sorted({ZERO} | set(muX.breakpoints) | {t / lam for t in muY.breakpoints})
    g1 = {b: FX(b) - FY(b) for b in b_cands}
    g2 = {a: FX(a) - FY(lam * a) for a in a_cands}
    best, witness, checked = None, None, 0
    for b in b_cands:
        for a in a_cands:
            if lam * a > b:
                break
            gap = g1[b] - g2[a]
            checked += 1
            if best is None or gap < best:
                best, witness = gap, (a, b)
    if best is None:
        best = ZERO
    holds = best >= -q(tolerance)
    return MajorizationResult(holds, best, None if holds else witness, checked)


def series_majorization_check(parts: Sequence, lam: int = 2) -> MajorizationResult:
    """Check sum_k X_k  majorized by  2 sum_k sigma_{2**k} mu(X_k), k = 1..K."""
    if not parts:
        raise ValueError("need at least one part")
    total = parts[0]
    for P in parts[1:]:
        total = stepfn.add(total, P) if isinstance(total, StepFunction) else add(total, P)
    bound = None
    for k, P in enumerate(parts, start=1):
        term = dilate(_mu(P), pow2(k))
        bound = term if bound is None else stepfn.add(bound, term)
    return uniformly_majorized(total, scale(2, bound), lam)


def grid_majorized(Y, X, lam: int = 1, step=Fraction(1, 64), span=None) -> bool:
    """Brute-force oracle on a uniform grid (floating point, vectorized).

    Returns False only when a grid pair (a, b) violates the inequality by
    more than 1e-9.
    """
    muY, muX = _mu(Y), _mu(X)
    if span is None:
        span = 2 * max(muX.t_end, muY.t_end, Fraction(1))
    n = int(span / step) + 1
    t = np.arange(n) * float(step)
    mid = t[:-1] + float(step) / 2

    def sampled(mu):
        return np.array([float(stepfn.evaluate(mu, Fraction(x))) for x in mid])

    def prim(vals):
        return np.concatenate([[0.0], np.cumsum(vals) * float(step)])

    FX, FY = prim(sampled(muX)), prim(sampled(muY))
    idx = np.arange(n)
    ia = idx[: (n - 1) // lam + 1]
    # G[a, b] = FX[b] - FX[a] - (FY[b] - FY[lam a]) for lam*a <= b
    G = (FX[None, :] - FY[None, :]) - (FX[ia][:, None] - FY[lam * ia][:, None])
    valid = (lam * ia)[:, None] <= idx[None, :]
    return bool(np.all(G[valid] >= -1e-9))
