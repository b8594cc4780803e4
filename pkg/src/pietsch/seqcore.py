"""Two-sided rational sequences with closed-form geometric tails.

A :class:`DyadicSequence` stores an explicit window ``values[lo..hi]`` and a
:class:`Tail` on each side.  Below the window ``x[n] = left.c * left.r**(lo-n)``,
above it ``x[n] = right.c * right.r**(n-hi)``.  Every sequence the transfer
maps produce is eventually geometric, so all identities stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._rational import HALF, ONE, TWO, ZERO, fmt, q
from .exceptions import IncompatibleTails, NotRepresentable, UnboundedResult

__all__ = [
    "Tail",
    "DyadicSequence",
    "basis",
    "constant",
    "indicator",
    "ordering_numbers",
    "shift",
    "scale",
    "add",
    "absolute",
    "solve_cohomology",
    "pointwise_le",
    "DEFAULT_DEPTH",
]

INDEX_SETS = ("Z", "Z+", "Z-")
DEFAULT_DEPTH = 128


@dataclass(frozen=True)
class Tail:
    """Geometric tail ``c * r**k`` at distance ``k >= 1`` from the window.

    ``c == 0`` is the Zero tail; ``r == 1`` is a constant tail.
    """

    c: Fraction = ZERO
    r: Fraction = ONE

    def __post_init__(self):
        c, r = q(self.c), q(self.r)
        if r <= 0:
            raise ValueError(f"tail ratio must be positive, got {r}")
        if c == 0:
            r = ONE
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "r", r)

    @classmethod
    def zero(cls) -> "Tail":
        return cls()

    @classmethod
    def geom(cls, c, r) -> "Tail":
        return cls(q(c), q(r))

    @classmethod
    def const(cls, c) -> "Tail":
        return cls(q(c), ONE)

    @property
    def is_zero(self) -> bool:
        return self.c == 0

    @property
    def kind(self) -> str:
        return "zero" if self.is_zero else "geom"

    def at(self, k: int) -> Fraction:
        """Value at distance ``k`` from the window edge."""
        return self.c * self.r**k

    def reanchored(self, k: int) -> "Tail":
        """The same tail seen from an edge moved ``k`` steps outward."""
        return Tail(self.c * self.r**k, self.r)

    def scaled(self, alpha) -> "Tail":
        return Tail(q(alpha) * self.c, self.r)

    def to_json(self) -> dict:
        if self.is_zero:
            return {"kind": "zero"}
        return {"kind": "geom", "c": fmt(self.c), "r": fmt(self.r)}

    @classmethod
    def from_json(cls, data: dict) -> "Tail":
        if data.get("kind", "zero") == "zero":
            return cls()
        return cls(q(data["c"]), q(data["r"]))


@dataclass(frozen=True, eq=False)
class DyadicSequence:
    """Element of S(Z) (or of S(Z+), S(Z-) via ``index_set``).

    The constructor canonicalizes: window entries that merely continue a tail
    pattern are folded into the tail.
    """

    lo: int
    values: tuple
    left: Tail = Tail()
    right: Tail = Tail()
    index_set: str = "Z"

    def __post_init__(self):
        vals = [q(v) for v in self.values]
        if not vals:
            raise ValueError("window must hold at least one value")
        if self.index_set not in INDEX_SETS:
            raise ValueError(f"unknown index set {self.index_set!r}")
        left, right, lo = self.left, self.right, int(self.lo)
        if right.r > 1:
            raise UnboundedResult("right tail must satisfy r <= 1 (bounded at +inf)")
        while len(vals) > 1 and vals[0] == left.c:
            vals.pop(0)
            lo += 1
            left = Tail(left.c / left.r, left.r)
        while len(vals) > 1 and vals[-1] == right.c:
            vals.pop()
            right = Tail(right.c / right.r, right.r)
        if left.is_zero and right.is_zero and len(vals) == 1 and vals[0] == 0:
            lo = 0
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "values", tuple(vals))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._check_index_set()

    def _check_index_set(self):
        if self.index_set == "Z+":
            if not self.left.is_zero or any(
                v != 0 for n, v in self.items() if n < 0
            ):
                raise ValueError("Z+ sequence must vanish for n < 0")
        elif self.index_set == "Z-":
            if not self.right.is_zero or any(
                v != 0 for n, v in self.items() if n > 0
            ):
                raise ValueError("Z- sequence must vanish for n > 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def items(self):
        return zip(range(self.lo, self.hi + 1), self.values)

    def value(self, n: int) -> Fraction:
        if n < self.lo:
            return self.left.at(self.lo - n)
        if n > self.hi:
            return self.right.at(n - self.hi)
        return self.values[n - self.lo]

    __getitem__ = value

    def window(self, pad: int = 0) -> range:
        return range(self.lo - pad, self.hi + pad + 1)

    def sample(self, indices: Iterable[int]) -> list:
        return [self.value(n) for n in indices]

    def left_at(self, new_lo: int) -> Tail:
        """Left tail anchored at ``new_lo <= lo``."""
        return self.left.reanchored(self.lo - new_lo)

    def right_at(self, new_hi: int) -> Tail:
        """Right tail anchored at ``new_hi >= hi``."""
        return self.right.reanchored(new_hi - self.hi)

    def extended(self, new_lo: int, new_hi: int) -> tuple:
        """Non-canonical window ``(values, left, right)`` over ``[new_lo, new_hi]``."""
        new_lo, new_hi = min(new_lo, self.lo), max(new_hi, self.hi)
        return (
            [self.value(n) for n in range(new_lo, new_hi + 1)],
            self.left_at(new_lo),
            self.right_at(new_hi),
        )

    def is_finitely_supported(self) -> bool:
        return self.left.is_zero and self.right.is_zero

    def __eq__(self, other):
        if not isinstance(other, DyadicSequence):
            return NotImplemented
        if self.index_set != other.index_set:
            return False
        for a, b in ((self.left, other.left), (self.right, other.right)):
            if a.is_zero != b.is_zero or a.r != b.r:
                return False
        lo = min(self.lo, other.lo) - 1
        hi = max(self.hi, other.hi) + 1
        return all(self.value(n) == other.value(n) for n in range(lo, hi + 1))

    def __hash__(self):
        return hash((self.left.is_zero, self.left.r, self.right.is_zero,
                     self.right.r, self.index_set))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, alpha):
        return scale(alpha, self)

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return (f"DyadicSequence(lo={self.lo}, [{vals}], left={self.left.kind}"
                f"{'' if self.left.is_zero else (self.left.c, self.left.r)}, "
                f"right={self.right.kind}"
                f"{'' if self.right.is_zero else (self.right.c, self.right.r)}"
                f"{'' if self.index_set == 'Z' else ', ' + self.index_set})")

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "values": [fmt(v) for v in self.values],
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "index_set": self.index_set,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DyadicSequence":
        values = [q(v) for v in data["values"]]
        if "hi" in data and data["hi"] != data["lo"] + len(values) - 1:
            raise ValueError("hi does not match lo + len(values) - 1")
        return cls(
            int(data["lo"]),
            tuple(values),
            Tail.from_json(data.get("left", {"kind": "zero"})),
            Tail.from_json(data.get("right", {"kind": "zero"})),
            data.get("index_set", "Z"),
        )


def basis(n: int, index_set: str = "Z") -> DyadicSequence:
    """The unit vector e_n."""
    return DyadicSequence(n, (ONE,), index_set=index_set)


def constant(c=1) -> DyadicSequence:
    """c times the indicator of Z."""
    c = q(c)
    return DyadicSequence(0, (c,), Tail.const(c), Tail.const(c))


def indicator(lo=None, hi=None) -> DyadicSequence:
    """Indicator of the integer interval [lo, hi]; ``None`` means unbounded."""
    if lo is None and hi is None:
        return constant(1)
    if lo is None:
        return DyadicSequence(hi, (ONE,), Tail.const(1), Tail())
    if hi is None:
        return DyadicSequence(lo, (ONE,), Tail(), Tail.const(1))
    return DyadicSequence(lo, (ONE,) * (hi - lo + 1))


def absolute(x: DyadicSequence) -> DyadicSequence:
    return DyadicSequence(
        x.lo,
        tuple(abs(v) for v in x.values),
        Tail(abs(x.left.c), x.left.r),
        Tail(abs(x.right.c), x.right.r),
        x.index_set,
    )


def ordering_numbers(x: DyadicSequence) -> DyadicSequence:
    """o_n(x) = sup_{k >= n} |x_k| in closed form."""
    right = Tail(abs(x.right.c), x.right.r)
    running = abs(x.right.c) * x.right.r  # sup of the right tail (r <= 1)
    suffix = []
    for v in reversed(x.values):
        running = max(running, abs(v))
        suffix.append(running)
    suffix.reverse()
    top = suffix[0]
    a, r = abs(x.left.c), x.left.r
    if a == 0:
        return DyadicSequence(x.lo, tuple(suffix), Tail.const(top), right, x.index_set)
    if r <= 1:
        return DyadicSequence(x.lo, tuple(suffix), Tail.const(max(top, a * r)), right,
                              x.index_set)
    # growing left tail: o is flat at `top` until the tail overtakes it
    m0 = 1
    while a * r**m0 < top:
        m0 += 1
    lo = x.lo - m0 + 1
    values = [top] * (m0 - 1) + suffix
    return DyadicSequence(lo, tuple(values), Tail(a * r ** (m0 - 1), r), right,
                          x.index_set)


def shift(x: DyadicSequence, k: int = 1) -> DyadicSequence:
    """S_+^k x, i.e. ``(S_+ x)_n = x_{n-1}``; k < 0 shifts left on full Z.

    On Z+ the vacated index 0 is zero filled; on Z- the entry pushed past 0
    is truncated.
    """
    k = int(k)
    if x.index_set != "Z" and k < 0:
        raise ValueError(f"negative shift is undefined on {x.index_set}")
    moved = DyadicSequence(x.lo + k, x.values, x.left, x.right,
                           "Z" if x.index_set == "Z-" else x.index_set)
    if x.index_set != "Z-":
        return moved
    lo = min(moved.lo, 0)
    vals = [moved.value(n) for n in range(lo, 1)]
    return DyadicSequence(lo, tuple(vals), moved.left_at(lo), Tail(), "Z-")


def scale(alpha, x: DyadicSequence) -> DyadicSequence:
    alpha = q(alpha)
    return DyadicSequence(
        x.lo,
        tuple(alpha * v for v in x.values),
        x.left.scaled(alpha),
        x.right.scaled(alpha),
        x.index_set,
    )


def _sum_tails(a: Tail, b: Tail, side: str) -> Tail:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.r != b.r:
        raise IncompatibleTails(
            f"{side} tails with ratios {a.r} and {b.r} have no single geometric sum"
        )
    return Tail(a.c + b.c, a.r)


def add(x: DyadicSequence, y: DyadicSequence, depth: int = DEFAULT_DEPTH) -> DyadicSequence:
    """Pointwise sum; tails must share ratios (or one side be Zero)."""
    if x.index_set != y.index_set:
        raise ValueError(f"cannot add {x.index_set} and {y.index_set} sequences")
    lo, hi = min(x.lo, y.lo), max(x.hi, y.hi)
    if hi - lo + 1 > max(len(x.values), len(y.values)) + depth:
        raise IncompatibleTails(f"window extension beyond depth {depth}")
    left = _sum_tails(x.left_at(lo), y.left_at(lo), "left")
    right = _sum_tails(x.right_at(hi), y.right_at(hi), "right")
    vals = tuple(x.value(n) + y.value(n) for n in range(lo, hi + 1))
    return DyadicSequence(lo, vals, left, right, x.index_set)


def solve_cohomology(a: DyadicSequence) -> DyadicSequence:
    """Solve ``a = b - (1/2) S_+ b`` with ``b_n = sum_{j<=n} 2**(j-n) a_j``.

    Supported inputs: left tail Zero or geometric with ratio < 2 (so the
    defining series converges), right tail Zero or geometric with ratio != 1/2.
    A right tail produces a mixture of the ratios 1/2 and r unless its
    homogeneous part vanishes; that mixture is not a single geometric tail
    and raises :class:`NotRepresentable`.
    """
    if a.left.is_zero:
        left = Tail()
        prev = ZERO
    else:
        r = a.left.r
        if r >= 2:
            raise ValueError("left tail ratio must be < 2 for sum_{j<=n} 2**(j-n) a_j")
        left = Tail(TWO * a.left.c / (TWO - r), r)
        prev = left.at(1)
    vals = []
    for v in a.values:
        prev = v + HALF * prev
        vals.append(prev)
    last = vals[-1]
    if a.right.is_zero:
        right = Tail(last, HALF)
    else:
        c, r = a.right.c, a.right.r
        if r == HALF:
            raise NotRepresentable("right tail ratio 1/2 resonates with 1/2 S_+")
        particular = c * 2 * r / (2 * r - 1)
        if particular != last:
            raise NotRepresentable(
                "solution tail mixes ratios 1/2 and "
                f"{r}; not a single geometric tail"
            )
        right = Tail(particular, r)
    if right.r > 1:
        raise UnboundedResult("cohomology solution unbounded at +inf")
    index_set = "Z+" if a.index_set == "Z+" else "Z"
    return DyadicSequence(a.lo, tuple(vals), left, right, index_set)


def _tail_le(a: Tail, b: Tail) -> bool:
    """a.at(k) <= b.at(k) for every k >= 1."""
    # b.at(k) - a.at(k) = rb**k * (cb - ca * (ra/rb)**k); the bracket is
    # monotone in k, so checking k = 1 and the limit suffices.
    ca, ra, cb, rb = a.c, a.r, b.c, b.r
    if ca == 0 and cb == 0:
        return True
    first = cb * rb - ca * ra
    if first < 0:
        return False
    if ra < rb:
        limit_sign = (cb > 0) - (cb < 0) if cb != 0 else -((ca > 0) - (ca < 0))
    elif ra == rb:
        d = cb - ca
        limit_sign = (d > 0) - (d < 0)
    else:
        limit_sign = -((ca > 0) - (ca < 0))
    return limit_sign >= 0


def pointwise_le(x: DyadicSequence, y: DyadicSequence) -> bool:
    """Decide ``x_n <= y_n`` for every integer n."""
    lo, hi = min(x.lo, y.lo), max(x.hi, y.hi)
    if any(x.value(n) > y.value(n) for n in range(lo, hi + 1)):
        return False
    return _tail_le(x.left_at(lo), y.left_at(lo)) and _tail_le(
        x.right_at(hi), y.right_at(hi)
    )


def from_list(lo: int, values: Sequence, left: Tail = Tail(), right: Tail = Tail(),
              index_set: str = "Z") -> DyadicSequence:
    return DyadicSequence(lo, tuple(q(v) for v in values), left, right, index_set)
