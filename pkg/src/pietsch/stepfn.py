"""Exact right-continuous step functions on (0, inf).

A :class:`StepFunction` has up to three regions:

* a geometric dyadic tail at zero, ``c * r**(lo-n)`` on ``[2**n, 2**(n+1))``
  for ``n < lo``;
* finitely many pieces ``values[i]`` on ``[t_i, t_{i+1})``;
* either a constant ``v_inf`` on ``[t_N, inf)`` or a geometric dyadic tail at
  infinity, ``c * r**(n-start+1)`` on ``[2**n, 2**(n+1))`` for ``n >= start``
  (with ``r < 1`` and ``t_N == 2**start``).

The far tail is what ``D`` produces from a sequence whose right tail decays
geometrically, so the image stays exact without truncation.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ._rational import INF, ZERO, ceil_log2, exact_log2, floor_log2, fmt, pow2, q
from .exceptions import IncompatibleTails, NonDyadicDilation, NotRepresentable
from .seqcore import Tail, _tail_le

__all__ = [
    "ZeroTail",
    "FarTail",
    "StepFunction",
    "indicator",
    "from_pieces",
    "evaluate",
    "integrate",
    "distribution",
    "dilate",
    "add",
    "scale",
    "absolute",
    "pointwise_le",
    "Rearrangement",
    "decreasing_rearrangement",
]


@dataclass(frozen=True)
class ZeroTail:
    """``c * r**(lo-n)`` on the dyadic cell ``[2**n, 2**(n+1))`` for ``n < lo``."""

    c: Fraction
    r: Fraction
    lo: int

    def __post_init__(self):
        object.__setattr__(self, "c", q(self.c))
        object.__setattr__(self, "r", q(self.r))
        object.__setattr__(self, "lo", int(self.lo))
        if self.r <= 0:
            raise ValueError("zero-tail ratio must be positive")

    def cell(self, n: int) -> Fraction:
        return self.c * self.r ** (self.lo - n)


@dataclass(frozen=True)
class FarTail:
    """``c * r**(n-start+1)`` on ``[2**n, 2**(n+1))`` for ``n >= start``."""

    c: Fraction
    r: Fraction
    start: int

    def __post_init__(self):
        object.__setattr__(self, "c", q(self.c))
        object.__setattr__(self, "r", q(self.r))
        object.__setattr__(self, "start", int(self.start))
        if self.r <= 0:
            raise ValueError("far-tail ratio must be positive")
        if self.r > 1 and self.c != 0:
            raise ValueError("far-tail ratio must be <= 1 (f must have finite distribution)")

    def cell(self, n: int) -> Fraction:
        return self.c * self.r ** (n - self.start + 1)


def _merge_equal(bps: list, vals: list):
    out_b, out_v = [bps[0]], []
    for i, v in enumerate(vals):
        if out_v and out_v[-1] == v:
            out_b[-1] = bps[i + 1]
        else:
            out_v.append(v)
            out_b.append(bps[i + 1])
    return out_b, out_v


@dataclass(frozen=True, eq=False)
class StepFunction:
    zero_tail: Optional[ZeroTail]
    breakpoints: tuple
    values: tuple
    v_inf: Fraction = ZERO
    far_tail: Optional[FarTail] = None

    def __post_init__(self):
        zt, ft = self.zero_tail, self.far_tail
        bps = [q(t) for t in self.breakpoints]
        vals = [q(v) for v in self.values]
        vinf = q(self.v_inf)
        if len(bps) != len(vals) + 1:
            raise ValueError("need exactly one more breakpoint than values")
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if zt is None:
            if bps[0] != 0:
                raise ValueError("first breakpoint must be 0 without a zero tail")
        elif bps[0] != pow2(zt.lo):
            raise ValueError("first breakpoint must equal 2**lo of the zero tail")
        if ft is not None:
            if bps[-1] != pow2(ft.start):
                raise ValueError("last breakpoint must equal 2**start of the far tail")
            if vinf != 0:
                raise ValueError("v_inf must be 0 when a far tail is present")

        if zt is not None and (zt.c == 0 or zt.r == 1):
            bps.insert(0, ZERO)
            vals.insert(0, zt.c)
            zt = None
        if ft is not None and (ft.c == 0 or ft.r == 1):
            vinf, ft = ft.c, None
        bps, vals = _merge_equal(bps, vals)

        while zt is not None and vals and vals[0] == zt.c and bps[1] >= pow2(zt.lo + 1):
            edge = pow2(zt.lo + 1)
            zt = ZeroTail(zt.c / zt.r, zt.r, zt.lo + 1)
            if bps[1] == edge:
                bps.pop(0)
                vals.pop(0)
            else:
                bps[0] = edge
        while ft is not None and vals and vals[-1] == ft.c and bps[-2] <= pow2(ft.start - 1):
            edge = pow2(ft.start - 1)
            ft = FarTail(ft.c / ft.r, ft.r, ft.start - 1)
            if bps[-2] == edge:
                bps.pop()
                vals.pop()
            else:
                bps[-1] = edge
        if ft is None:
            while vals and vals[-1] == vinf:
                vals.pop()
                bps.pop()

        object.__setattr__(self, "zero_tail", zt)
        object.__setattr__(self, "far_tail", ft)
        object.__setattr__(self, "breakpoints", tuple(bps))
        object.__setattr__(self, "values", tuple(vals))
        object.__setattr__(self, "v_inf", vinf)

    # -- basic queries -------------------------------------------------

    @property
    def t_end(self) -> Fraction:
        return self.breakpoints[-1]

    def pieces(self):
        """Yield ``(start, end, value)`` for each explicit piece."""
        b = self.breakpoints
        for i, v in enumerate(self.values):
            yield b[i], b[i + 1], v

    def is_tail_free(self) -> bool:
        return self.zero_tail is None and self.far_tail is None

    def is_compact(self) -> bool:
        """True when d_f(s) is finite for every s > 0 (no constant tail at infinity)."""
        return self.v_inf == 0

    def __call__(self, t) -> Fraction:
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return pointwise_le(self, other) and pointwise_le(other, self)

    def __hash__(self):
        return hash((self.v_inf, self.zero_tail is None, self.far_tail is None))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, alpha):
        return scale(alpha, self)

    def __repr__(self):
        parts = []
        if self.zero_tail is not None:
            z = self.zero_tail
            parts.append(f"zero_tail=({z.c}, {z.r}, lo={z.lo})")
        parts.append(" ".join(f"[{a},{b}):{v}" for a, b, v in self.pieces()) or "-")
        if self.far_tail is not None:
            ft = self.far_tail
            parts.append(f"far_tail=({ft.c}, {ft.r}, start={ft.start})")
        else:
            parts.append(f"v_inf={self.v_inf}")
        return "StepFunction(" + ", ".join(parts) + ")"

    def to_json(self) -> dict:
        zt = self.zero_tail
        data = {
            "zero_tail": None if zt is None else {"c": fmt(zt.c), "r": fmt(zt.r), "lo": zt.lo},
            "breakpoints": [fmt(t) for t in self.breakpoints],
            "values": [fmt(v) for v in self.values],
            "v_inf": fmt(self.v_inf),
        }
        if self.far_tail is not None:
            ft = self.far_tail
            data["far_tail"] = {"c": fmt(ft.c), "r": fmt(ft.r), "start": ft.start}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "StepFunction":
        zt = data.get("zero_tail")
        ft = data.get("far_tail")
        return cls(
            None if zt is None else ZeroTail(q(zt["c"]), q(zt["r"]), int(zt["lo"])),
            tuple(q(t) for t in data["breakpoints"]),
            tuple(q(v) for v in data["values"]),
            q(data.get("v_inf", 0)),
            None if ft is None else FarTail(q(ft["c"]), q(ft["r"]), int(ft["start"])),
        )


def from_pieces(breakpoints: Iterable, values: Iterable, v_inf=0) -> StepFunction:
    """Tail-free step function; a leading breakpoint 0 is added if missing."""
    bps = [q(t) for t in breakpoints]
    vals = [q(v) for v in values]
    if not bps or bps[0] != 0:
        bps.insert(0, ZERO)
        vals.insert(0, ZERO)
    return StepFunction(None, tuple(bps), tuple(vals), q(v_inf))


def indicator(a, b, value=1) -> StepFunction:
    """``value`` times the indicator of [a, b); ``b`` may be ``INF``."""
    a = q(a)
    if b == INF:
        return from_pieces([0, a] if a > 0 else [0], [0] if a > 0 else [], value)
    return from_pieces([0, a, q(b)] if a > 0 else [0, q(b)],
                       [0, value] if a > 0 else [value])


def constant(value) -> StepFunction:
    return StepFunction(None, (ZERO,), (), q(value))


# -- pointwise evaluation --------------------------------------------------


def evaluate(f: StepFunction, t) -> Fraction:
    """f(t) with right-continuous convention; t = 0 means 0+ for tail-free f."""
    t = q(t)
    if t < 0:
        raise ValueError("step functions live on (0, inf)")
    zt = f.zero_tail
    if t == 0:
        if zt is not None:
            raise ValueError("f(0+) is not a single value with a geometric zero tail")
        return f.values[0] if f.values else (f.far_tail.cell(f.far_tail.start)
                                             if f.far_tail else f.v_inf)
    if t < f.breakpoints[0]:
        return zt.cell(floor_log2(t))
    if t >= f.t_end:
        if f.far_tail is not None:
            return f.far_tail.cell(floor_log2(t))
        return f.v_inf
    i = bisect_right(f.breakpoints, t) - 1
    return f.values[i]


# -- integration -----------------------------------------------------------


def _sign_inf(c) -> float:
    return INF if c > 0 else -INF


def _cells_sum(cell, a: Fraction, b: Fraction) -> Fraction:
    """Integral of a dyadic-cell function over [a, b) with 0 < a <= b < inf."""
    if a >= b:
        return ZERO
    total = ZERO
    n = floor_log2(a)
    while pow2(n) < b:
        lo, hi = max(a, pow2(n)), min(b, pow2(n + 1))
        if hi > lo:
            total += (hi - lo) * cell(n)
        n += 1
    return total


def _zero_tail_integral(zt: ZeroTail, a: Fraction, b: Fraction):
    """Integral of the zero tail over [a, b) with 0 <= a <= b <= 2**lo."""
    if a >= b:
        return ZERO
    if a > 0:
        return _cells_sum(zt.cell, a, b)
    ratio = zt.r / 2
    if ratio >= 1:
        return _sign_inf(zt.c)
    nb = floor_log2(b)
    # full cells n < nb: c 2**lo sum_{k >= lo-nb+1} (r/2)**k
    full = zt.c * pow2(zt.lo) * ratio ** (zt.lo - nb + 1) / (1 - ratio)
    return full + (b - pow2(nb)) * zt.cell(nb)


def _far_tail_integral(ft: FarTail, a: Fraction, b):
    """Integral of the far tail over [a, b) with 2**start <= a <= b <= inf."""
    if b != INF:
        return _cells_sum(ft.cell, a, b)
    if ft.r * 2 >= 1:
        return _sign_inf(ft.c)
    n0 = ceil_log2(a)
    head = _cells_sum(ft.cell, a, pow2(n0))
    # full cells n >= n0: c r**(n0-start+1) 2**n0 / (1 - 2r)
    return head + ft.c * ft.r ** (n0 - ft.start + 1) * pow2(n0) / (1 - 2 * ft.r)


def integrate(f: StepFunction, a=0, b=INF):
    """Exact integral of f over [a, b); returns +-inf when divergent."""
    a = q(a)
    if b != INF:
        b = q(b)
        if b < a:
            raise ValueError("need a <= b")
    t0, tn = f.breakpoints[0], f.t_end
    total = ZERO
    if f.zero_tail is not None and a < t0:
        total += _zero_tail_integral(f.zero_tail, a, min(b, t0))
    for lo, hi, v in f.pieces():
        lo, hi = max(lo, a), min(hi, b)
        if hi > lo:
            total += (hi - lo) * v
    if b > tn:
        start = max(a, tn)
        if f.far_tail is not None:
            total += _far_tail_integral(f.far_tail, start, b)
        elif f.v_inf != 0:
            total += _sign_inf(f.v_inf) if b == INF else (b - start) * f.v_inf
    return total


def distribution(f: StepFunction, s) -> Fraction:
    """Lebesgue measure of {|f| > s} for s > 0 (``INF`` when |v_inf| > s)."""
    s = q(s)
    if s < 0:
        raise ValueError("distribution needs s >= 0")
    if abs(f.v_inf) > s:
        return INF
    total = sum((hi - lo for lo, hi, v in f.pieces() if abs(v) > s), ZERO)
    zt = f.zero_tail
    if zt is not None:
        a, r = abs(zt.c), zt.r
        if r > 1:
            k = 1
            while a * r**k <= s:
                k += 1
            total += pow2(zt.lo - k + 1)
        elif r < 1:
            if s == 0:
                total += pow2(zt.lo)
            else:
                k = 1
                while a * r**k > s:
                    total += pow2(zt.lo - k)
                    k += 1
    ft = f.far_tail
    if ft is not None:
        b, r = abs(ft.c), ft.r
        if s == 0:
            return INF
        m = 1
        while b * r**m > s:
            total += pow2(ft.start + m - 1)
            m += 1
    return total


# -- algebra ---------------------------------------------------------------


def scale(alpha, f: StepFunction) -> StepFunction:
    alpha = q(alpha)
    zt, ft = f.zero_tail, f.far_tail
    return StepFunction(
        None if zt is None else ZeroTail(alpha * zt.c, zt.r, zt.lo),
        f.breakpoints,
        tuple(alpha * v for v in f.values),
        alpha * f.v_inf,
        None if ft is None else FarTail(alpha * ft.c, ft.r, ft.start),
    )


def absolute(f: StepFunction) -> StepFunction:
    zt, ft = f.zero_tail, f.far_tail
    return StepFunction(
        None if zt is None else ZeroTail(abs(zt.c), zt.r, zt.lo),
        f.breakpoints,
        tuple(abs(v) for v in f.values),
        abs(f.v_inf),
        None if ft is None else FarTail(abs(ft.c), ft.r, ft.start),
    )


def dilate(f: StepFunction, s) -> StepFunction:
    """sigma_s f, i.e. t -> f(t/s)."""
    s = q(s)
    if s <= 0:
        raise ValueError("dilation factor must be positive")
    zt, ft = f.zero_tail, f.far_tail
    j = 0
    if zt is not None or ft is not None:
        j = exact_log2(s)
        if j is None:
            raise NonDyadicDilation(f"dilation by {s} breaks the dyadic tail")
    return StepFunction(
        None if zt is None else ZeroTail(zt.c, zt.r, zt.lo + j),
        tuple(s * t for t in f.breakpoints),
        f.values,
        f.v_inf,
        None if ft is None else FarTail(ft.c, ft.r, ft.start + j),
    )


def _low_level(f: StepFunction) -> int:
    """A dyadic level L such that (0, 2**L) lies in a single tail regime."""
    if f.zero_tail is not None:
        return f.zero_tail.lo
    if len(f.breakpoints) > 1:
        return floor_log2(f.breakpoints[1])
    return 0 if f.far_tail is None else f.far_tail.start


def _high_level(f: StepFunction) -> int:
    if f.far_tail is not None:
        return f.far_tail.start
    return ceil_log2(f.t_end) if f.t_end > 0 else 0


def _near(f: StepFunction, level: int) -> Tail:
    """Closed form below 2**level as a seqcore Tail: cell n -> c r**(level-n)."""
    if f.zero_tail is not None:
        zt = f.zero_tail
        return Tail(zt.c * zt.r ** (zt.lo - level), zt.r)
    return Tail.const(evaluate(f, pow2(level - 1)))


def _far(f: StepFunction, level: int) -> Tail:
    """Closed form above 2**level: cell n >= level -> c r**(n-level+1)."""
    if f.far_tail is not None:
        ft = f.far_tail
        return Tail(ft.c * ft.r ** (level - ft.start), ft.r)
    return Tail.const(f.v_inf)


def _common_frame(fs):
    lo = min(_low_level(f) for f in fs)
    hi = max(_high_level(f) for f in fs)
    hi = max(hi, lo)
    grid = {pow2(n) for n in range(lo, hi + 1)}
    for f in fs:
        grid.update(t for t in f.breakpoints if pow2(lo) <= t <= pow2(hi))
    return lo, hi, sorted(grid)


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise sum; tails must share ratios (or one side vanish)."""
    lo, hi, grid = _common_frame((f, g))
    near = [_near(f, lo), _near(g, lo)]
    far = [_far(f, hi), _far(g, hi)]

    def combine(a: Tail, b: Tail, side):
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.r != b.r:
            raise IncompatibleTails(f"{side} tails with ratios {a.r} and {b.r}")
        return Tail(a.c + b.c, a.r)

    nz = combine(*near, "zero")
    fz = combine(*far, "infinity")
    vals = [evaluate(f, t) + evaluate(g, t) for t in grid[:-1]]
    return _assemble(nz, lo, grid, vals, fz, hi)


def _assemble(near: Tail, lo: int, grid, vals, far: Tail, hi: int) -> StepFunction:
    zt = None if near.is_zero else ZeroTail(near.c, near.r, lo)
    bps = list(grid)
    if zt is None:
        bps.insert(0, ZERO)
        vals = [ZERO] + list(vals)
    if far.r == 1 or far.is_zero:
        return StepFunction(zt, tuple(bps), tuple(vals), far.c)
    return StepFunction(zt, tuple(bps), tuple(vals), ZERO, FarTail(far.c, far.r, hi))


def pointwise_le(f: StepFunction, g: StepFunction) -> bool:
    """Decide f(t) <= g(t) for every t > 0, exactly."""
    lo, hi, grid = _common_frame((f, g))
    if any(evaluate(f, t) > evaluate(g, t) for t in grid[:-1]):
        return False
    return _tail_le(_near(f, lo), _near(g, lo)) and _tail_le(_far(f, hi), _far(g, hi))


# -- decreasing rearrangement ---------------------------------------------


class Rearrangement:
    """Lazy exact description of f* as a descending stream of levels.

    f* is assembled from

    * a *top region* ``(0, tau0)`` when the zero tail grows (r > 1): there the
      tail cells keep their order and f* is again a geometric zero tail;
    * finitely many explicit levels (value, mass);
    * possibly an infinite decreasing family from a zero tail with r < 1
      (only when |v_inf| = 0) and the far-tail family;
    * the floor ``V = |v_inf|`` which f* takes after all mass above V.
    """

    def __init__(self, f: StepFunction):
        self.f = f
        V = abs(f.v_inf)
        self.V = V
        finite: dict = {}
        for lo, hi, v in f.pieces():
            v = abs(v)
            if v > V:
                finite[v] = finite.get(v, ZERO) + (hi - lo)
        ft = f.far_tail
        self.far = None if ft is None else (abs(ft.c), ft.r, ft.start)
        self.top = None  # (c, r, lo) zero tail of f* on (0, tau0)
        self.small = None  # (a, rho, lo) infinite decreasing family
        self.tau0 = ZERO
        zt = f.zero_tail
        if zt is not None:
            a, rho, lo = abs(zt.c), zt.r, zt.lo
            if rho > 1:
                ceiling = max([V, *finite.keys()] + ([self.far[0] * self.far[1]] if self.far else []))
                k0 = 1
                while a * rho**k0 <= ceiling:
                    k0 += 1
                for k in range(1, k0):
                    v = a * rho**k
                    if v > V:
                        finite[v] = finite.get(v, ZERO) + pow2(lo - k)
                self.top = ZeroTail(a * rho ** (k0 - 1), rho, lo - k0 + 1)
                self.tau0 = pow2(lo - k0 + 1)
            elif V > 0:
                k = 1
                while a * rho**k > V:
                    finite[a * rho**k] = finite.get(a * rho**k, ZERO) + pow2(lo - k)
                    k += 1
            else:
                self.small = (a, rho, lo)
        self.finite = sorted(finite.items(), reverse=True)
        small_mass = pow2(self.small[2]) if self.small else ZERO
        self.finite_mass = sum((m for _, m in self.finite), ZERO)
        # measure of everything above V except the far family
        self.core_mass = self.tau0 + self.finite_mass + small_mass
        self.total_mass = INF if self.far else self.core_mass

    # stream ---------------------------------------------------------------

    def levels(self):
        """Yield ``(value, mass, far_index)`` below the top region, descending.

        ``far_index`` is m >= 1 when the level contains far-tail cell m
        (value b r**m), else None.  Equal values are merged.
        """
        sources = [((v, m, None) for v, m in self.finite)]
        if self.small:
            a, rho, lo = self.small
            sources.append(((a * rho**k, pow2(lo - k), None) for k in _count(1)))
        if self.far:
            b, rho, h = self.far
            sources.append(((b * rho**m, pow2(h + m - 1), m) for m in _count(1)))
        pending = None
        for v, m, idx in heapq.merge(*sources, key=lambda e: -e[0]):
            if pending is not None and pending[0] == v:
                pending = (v, pending[1] + m, pending[2] if idx is None else idx)
                continue
            if pending is not None:
                yield pending
            pending = (v, m, idx)
        if pending is not None:
            yield pending

    # queries --------------------------------------------------------------

    def value_at(self, t) -> Fraction:
        return self.values_at([t])[0]

    def values_at(self, points) -> list:
        """Right-continuous f*(t) for each t > 0, in one pass over the levels."""
        pts = [q(t) for t in points]
        if any(t <= 0 for t in pts):
            raise ValueError("f* is sampled at t > 0")
        out = [None] * len(pts)
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        pending = []
        for i in order:
            t = pts[i]
            if t < self.tau0:
                out[i] = self.top.cell(floor_log2(t))
            elif t >= self.total_mass:
                out[i] = self.V
            else:
                pending.append(i)
        if pending:
            cum = self.tau0
            j = 0
            for v, m, _ in self.levels():
                cum += m
                while j < len(pending) and pts[pending[j]] < cum:
                    out[pending[j]] = v
                    j += 1
                if j == len(pending):
                    break
            for i in pending[j:]:
                out[i] = self.V
        return out

    def distribution(self, s) -> Fraction:
        return distribution(self.f, s)

    def _top_integral(self, a, b):
        if self.top is None or a >= b:
            return ZERO
        return _zero_tail_integral(self.top, a, b)

    def _scan_integral(self, a, b) -> Fraction:
        """Integral over [a, b) with tau0 <= a <= b < total mass (finite b)."""
        total, cum = ZERO, self.tau0
        if a >= b:
            return total
        for v, m, _ in self.levels():
            lo, hi = max(cum, a), min(cum + m, b)
            if hi > lo:
                total += (hi - lo) * v
            cum += m
            if cum >= b:
                break
        return total

    def _rest_integral(self):
        """Integral of f* over [tau0, inf) restricted to levels above V, no far family."""
        total = sum((v * m for v, m in self.finite), ZERO)
        if self.small:
            a, rho, lo = self.small
            ratio = rho / 2
            total += a * pow2(lo) * ratio / (1 - ratio)
        return total

    def _far_integral(self):
        b, rho, h = self.far
        if 2 * rho >= 1:
            return INF
        return b * rho * pow2(h) / (1 - 2 * rho)

    def integral(self, a=0, b=INF):
        """Exact integral of f* over [a, b)."""
        a = q(a)
        if b != INF:
            b = q(b)
        if a >= b:
            return ZERO
        total = self._top_integral(a, min(b, self.tau0))
        a = max(a, self.tau0)
        if a >= b:
            return total
        if self.far is None:
            T = self.core_mass
            if a < T:
                if b < T:
                    return total + self._scan_integral(a, b)
                total += self._rest_integral() - self._scan_integral(self.tau0, a)
            if b == INF:
                return total + (INF if self.V > 0 else ZERO)
            return total + (b - max(a, T)) * self.V
        if b != INF:
            return total + self._scan_integral(a, b)
        tail = self._far_integral()
        if tail == INF:
            return INF
        return total + self._rest_integral() + tail - self._scan_integral(self.tau0, a)

    def step_function(self) -> StepFunction:
        """f* as a StepFunction, when it has finitely many non-tail pieces."""
        if self.small:
            raise NotRepresentable(
                "f* has infinitely many pieces accumulating at a finite point"
            )
        bps = [self.tau0]
        vals = []
        cum = self.tau0
        last_finite = self.finite[-1][0] if self.finite else None
        far_tail = None
        for v, m, idx in self.levels():
            if self.far and (last_finite is None or v < last_finite):
                # only pure far levels remain: they must sit on dyadic cells
                b, rho, h = self.far
                if cum != pow2(h + idx - 1):
                    raise NotRepresentable(
                        "far-tail levels of f* are not aligned with dyadic cells"
                    )
                far_tail = FarTail(b * rho ** (idx - 1), rho, h + idx - 1)
                break
            cum += m
            bps.append(cum)
            vals.append(v)
        zt = self.top
        if zt is None:
            bps[0] = ZERO
        return StepFunction(zt, tuple(bps), tuple(vals),
                            ZERO if far_tail else self.V, far_tail)


def _count(start):
    k = start
    while True:
        yield k
        k += 1


def decreasing_rearrangement(f: StepFunction) -> StepFunction:
    """f*, the nonincreasing right-continuous rearrangement of |f|."""
    return Rearrangement(f).step_function()
