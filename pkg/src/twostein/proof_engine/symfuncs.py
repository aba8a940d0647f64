"""Restricted complex vectors and the ten symmetrization coefficients.

A ZVector is a complexified vector X = sum x_i e_i + sum y_a e_a whose x
part and y part each have at most two nonzero entries; on such vectors the
third and fourth elementary symmetric functions vanish identically.

Elementary symmetric functions use the ordered-tuple normalization

    sigma_h(v) = sum over ordered h-tuples of distinct indices = h! * e_h,

so sigma_2 of (x1, x2) is 2*x1*x2.  The ten coefficients A1..A3, B1..B3,
C1..C4 are the multipliers produced by summing the quartic trace over all
permutations of the x and of the y coordinates; in terms of e2 = sigma_2/2
they read

    A1 = (d1-1)! d2! (sigma1^4 - 4 sigma1^2 e2 + 2 e2^2)
    A2 = (d1-2)! d2! (sigma1^2 e2 - 2 e2^2)
    A3 = (d1-2)! d2! (2 e2^2)
    C1 = (d1-1)!(d2-1)! 2 (sigma1^2 - 2 e2)(x) (sigma1^2 - 2 e2)(y)
    C2 = (d1-1)!(d2-2)! 4 (sigma1^2 - 2 e2)(x) e2(y)
    C3 = (d1-2)!(d2-1)! 4 e2(x) (sigma1^2 - 2 e2)(y)
    C4 = (d1-2)!(d2-2)! 4 e2(x) e2(y)

with B_h obtained from A_h by swapping d1 with d2 and x with y, the
convention sigma_h = 0 for h above the block dimension, and m! = 0 for
m < 0.  (sigma1^2 - 2 e2 is the power sum sum v_t^2.)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpq

from ..conditions import BlockSplit
from ..fields import GaussianRational

__all__ = ["elementary_symmetric", "ZVector", "CoefficientVector10",
           "abc_coefficients", "factorial0"]


def elementary_symmetric(v):
    """(sigma1, sigma2, sigma3, sigma4) in the ordered-tuple convention.

    Works over any commutative ring scalar (exact rational, gaussian
    rational, float, complex).
    """
    e = [1, 0, 0, 0, 0]
    for z in v:
        for h in range(4, 0, -1):
            e[h] = e[h] + z * e[h - 1]
    return e[1], 2 * e[2], 6 * e[3], 24 * e[4]


def factorial0(m: int) -> int:
    """m! with the convention that negative arguments give 0."""
    return 0 if m < 0 else math.factorial(m)


def _coerce_gq(v) -> GaussianRational:
    if isinstance(v, GaussianRational):
        return v
    return GaussianRational(v)


class ZVector:
    """Member of the restricted set: at most two nonzero x and two nonzero y."""

    __slots__ = ("split", "x", "y", "sigma_x", "sigma_y")

    def __init__(self, split: BlockSplit, x, y):
        if len(x) != split.d1 or len(y) != split.d2:
            raise ValueError("component lengths must match the split")
        self.split = split
        self.x = tuple(_coerce_gq(v) for v in x)
        self.y = tuple(_coerce_gq(v) for v in y)
        if sum(1 for v in self.x if v) > 2 or sum(1 for v in self.y if v) > 2:
            raise ValueError("at most two nonzero entries allowed in each block")
        self.sigma_x = elementary_symmetric(self.x)
        self.sigma_y = elementary_symmetric(self.y)

    def scaled(self, c) -> "ZVector":
        c = _coerce_gq(c)
        return ZVector(self.split, [c * v for v in self.x], [c * v for v in self.y])

    def full_coordinates(self):
        """Length-n coordinate tuple in the split's basis order."""
        return self.x + self.y

    def norm_sq(self) -> GaussianRational:
        acc = GaussianRational(0)
        for v in self.x + self.y:
            acc = acc + v * v
        return acc

    def __repr__(self):
        return f"ZVector(d1={self.split.d1}, d2={self.split.d2}, x={self.x}, y={self.y})"

    def __eq__(self, other):
        return (isinstance(other, ZVector) and self.split == other.split
                and self.x == other.x and self.y == other.y)

    __hash__ = None


@dataclass(frozen=True)
class CoefficientVector10:
    """The aggregated coefficients (A1..A3, B1..B3, C1..C4)."""

    a1: GaussianRational
    a2: GaussianRational
    a3: GaussianRational
    b1: GaussianRational
    b2: GaussianRational
    b3: GaussianRational
    c1: GaussianRational
    c2: GaussianRational
    c3: GaussianRational
    c4: GaussianRational

    FIELDS = ("a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "c4")

    def as_tuple(self):
        return tuple(getattr(self, name) for name in self.FIELDS)

    def __add__(self, other: "CoefficientVector10") -> "CoefficientVector10":
        return CoefficientVector10(*(a + b for a, b in
                                     zip(self.as_tuple(), other.as_tuple())))

    def scaled(self, c) -> "CoefficientVector10":
        c = _coerce_gq(c)
        return CoefficientVector10(*(c * v for v in self.as_tuple()))

    @classmethod
    def zero(cls) -> "CoefficientVector10":
        return cls(*(GaussianRational(0) for _ in range(10)))

    @classmethod
    def from_values(cls, values) -> "CoefficientVector10":
        vals = [_coerce_gq(v) for v in values]
        if len(vals) != 10:
            raise ValueError("expected 10 coefficients")
        return cls(*vals)


def random_zvector(split: BlockSplit, seed: int) -> ZVector:
    """Seeded restricted vector with gaussian-rational entries in the first
    two slots of each block (fewer when a block is one-dimensional)."""
    import random as _random

    rng = _random.Random(seed)

    def draw():
        return GaussianRational(rng.randrange(-5, 6), rng.randrange(-5, 6))

    x = [GaussianRational(0)] * split.d1
    y = [GaussianRational(0)] * split.d2
    x[0] = draw()
    if split.d1 > 1:
        x[1] = draw()
    y[0] = draw()
    if split.d2 > 1:
        y[1] = draw()
    return ZVector(split, x, y)


def abc_coefficients(X: ZVector) -> CoefficientVector10:
    """The ten symmetrization multipliers of a restricted vector."""
    d1, d2 = X.split.d1, X.split.d2
    s1x, s2x = X.sigma_x[0], X.sigma_x[1]
    s1y, s2y = X.sigma_y[0], X.sigma_y[1]
    half = mpq(1, 2)
    e2x = s2x * half
    e2y = s2y * half
    p2x = s1x * s1x - 2 * e2x   # sum of squares of the x entries
    p2y = s1y * s1y - 2 * e2y

    f_a1 = factorial0(d1 - 1) * factorial0(d2)
    f_a23 = factorial0(d1 - 2) * factorial0(d2)
    f_b1 = factorial0(d2 - 1) * factorial0(d1)
    f_b23 = factorial0(d2 - 2) * factorial0(d1)

    a1 = f_a1 * (s1x ** 4 - 4 * (s1x ** 2) * e2x + 2 * e2x ** 2)
    a2 = f_a23 * ((s1x ** 2) * e2x - 2 * e2x ** 2)
    a3 = f_a23 * (2 * e2x ** 2)
    b1 = f_b1 * (s1y ** 4 - 4 * (s1y ** 2) * e2y + 2 * e2y ** 2)
    b2 = f_b23 * ((s1y ** 2) * e2y - 2 * e2y ** 2)
    b3 = f_b23 * (2 * e2y ** 2)
    c1 = factorial0(d1 - 1) * factorial0(d2 - 1) * 2 * p2x * p2y
    c2 = factorial0(d1 - 1) * factorial0(d2 - 2) * 4 * p2x * e2y
    c3 = factorial0(d1 - 2) * factorial0(d2 - 1) * 4 * e2x * p2y
    c4 = factorial0(d1 - 2) * factorial0(d2 - 2) * 4 * e2x * e2y
    return CoefficientVector10(*(_coerce_gq(v) for v in
                                 (a1, a2, a3, b1, b2, b3, c1, c2, c3, c4)))
