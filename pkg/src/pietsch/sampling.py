"""Seeded random generators for sequences, step functions and block operators."""

from __future__ import annotations

import random
from fractions import Fraction

from .seqcore import DyadicSequence, Tail

LEFT_RATIOS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
RIGHT_RATIOS = (Fraction(1, 2), Fraction(1))
WEIGHTS = (Fraction(1, 2), Fraction(1), Fraction(2))


def rational(rng: random.Random, bound: int = 8, max_den: int = 16) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def nonneg_rational(rng: random.Random, bound: int = 8, max_den: int = 16) -> Fraction:
    return abs(rational(rng, bound, max_den))


def tail(rng: random.Random, ratios) -> Tail:
    if rng.random() < 0.3:
        return Tail()
    c = rational(rng)
    return Tail(c, rng.choice(ratios)) if c != 0 else Tail()


def sequence(rng: random.Random, max_len: int = 12, tails: bool = True,
             nonneg: bool = False) -> DyadicSequence:
    """Window of length <= max_len, values in [-8, 8] with denominators <= 16."""
    n = rng.randint(1, max_len)
    lo = rng.randint(-6, 6)
    draw = nonneg_rational if nonneg else rational
    vals = tuple(draw(rng) for _ in range(n))
    left = tail(rng, LEFT_RATIOS) if tails else Tail()
    right = tail(rng, RIGHT_RATIOS) if tails else Tail()
    if nonneg:
        left, right = Tail(abs(left.c), left.r), Tail(abs(right.c), right.r)
    return DyadicSequence(lo, vals, left, right)


def nonincreasing_sequence(rng: random.Random, max_len: int = 12,
                           tails: bool = True) -> DyadicSequence:
    """Nonnegative nonincreasing sequence with closed-form tails."""
    n = rng.randint(1, max_len)
    lo = rng.randint(-6, 6)
    steps = sorted((nonneg_rational(rng, 2) for _ in range(n)), reverse=True)
    vals, acc = [], Fraction(0)
    for s in reversed(steps):
        acc += s
        vals.append(acc)
    vals.reverse()
    left, right = Tail(), Tail()
    if tails:
        choice = rng.random()
        if choice < 0.5:
            # left: constant >= head or growing toward -inf
            r = rng.choice((Fraction(1), Fraction(3, 2), Fraction(2)))
            left = Tail(vals[0] + nonneg_rational(rng, 2), r)
        choice = rng.random()
        if choice < 0.5 and vals[-1] > 0:
            right = Tail(vals[-1], rng.choice(RIGHT_RATIOS))
        elif choice < 0.7:
            right = Tail(vals[-1] / 2, Fraction(1, 2)) if vals[-1] > 0 else Tail()
    return DyadicSequence(lo, tuple(vals), left, right)


def diagonal(rng: random.Random, max_dim: int = 6, nonneg: bool = True) -> list:
    dim = rng.randint(1, max_dim)
    draw = nonneg_rational if nonneg else rational
    return [draw(rng, 4) for _ in range(dim)]


def matrix(rng: random.Random, dim: int) -> list:
    """Rational entries uniform in [-4, 4]."""
    return [[rational(rng, 4) for _ in range(dim)] for _ in range(dim)]


def block_shape(rng: random.Random, max_blocks: int = 3, max_dim: int = 6) -> list:
    return [(rng.randint(1, max_dim), rng.choice(WEIGHTS))
            for _ in range(rng.randint(1, max_blocks))]
