import itertools
import random

import pytest
from gmpy2 import mpq

from twostein import BlockSplit, GaussianRational
from twostein.proof_engine import (CoefficientVector10, ZVector,
                                   abc_coefficients, elementary_symmetric)
from twostein.proof_engine.symfuncs import factorial0, random_zvector

I = GaussianRational(0, 1)


def brute_sigma(values, h):
    """Ordered-tuple oracle: sum over h-tuples of pairwise distinct indices."""
    total = 0
    for tup in itertools.permutations(range(len(values)), h):
        prod = 1
        for t in tup:
            prod = prod * values[t]
        total = total + prod
    return total


def test_elementary_symmetric_examples():
    s1, s2, s3, s4 = elementary_symmetric([GaussianRational(1), I])
    assert s1 == GaussianRational(1, 1)
    assert s2 == GaussianRational(0, 2)
    assert s3 == GaussianRational(0) and s4 == GaussianRational(0)

    assert elementary_symmetric([1, 0, 0]) == (1, 0, 0, 0)
    assert elementary_symmetric([1, 1, 1, 1]) == (4, 12, 24, 24)


def test_elementary_symmetric_matches_brute_force():
    rng = random.Random(3)
    for _ in range(5):
        vals = [mpq(rng.randrange(-4, 5)) for _ in range(5)]
        sigma = elementary_symmetric(vals)
        for h in range(1, 5):
            assert sigma[h - 1] == brute_sigma(vals, h)


def test_factorial0():
    assert factorial0(-1) == 0
    assert factorial0(0) == 1
    assert factorial0(4) == 24


def test_zvector_membership():
    split = BlockSplit(3, 3)
    with pytest.raises(ValueError):
        ZVector(split, [1, 1, 1], [0, 0, 0])
    v = ZVector(split, [1, 2, 0], [0, I, 3])
    assert v.sigma_x[2] == GaussianRational(0)  # sigma3 vanishes on the set
    assert v.sigma_x[3] == GaussianRational(0)
    assert v.sigma_y[2] == GaussianRational(0)


def test_abc_case_one_values():
    # d1 = 1, d2 = 4, X = e_0 + i e_1
    split = BlockSplit(1, 4)
    X = ZVector(split, [1], [I, 0, 0, 0])
    c = abc_coefficients(X)
    assert c.a1 == GaussianRational(24)
    assert c.b1 == GaussianRational(6)
    assert c.c1 == GaussianRational(-12)
    for name in ("a2", "a3", "b2", "b3", "c2", "c3", "c4"):
        assert getattr(c, name) == GaussianRational(0)


def test_abc_single_x_entry():
    # sigma1(x) = 1, sigma2(x) = 0, y = 0: only A1 = (d1-1)! d2! survives
    split = BlockSplit(3, 3)
    X = ZVector(split, [1, 0, 0], [0, 0, 0])
    c = abc_coefficients(X)
    assert c.a1 == GaussianRational(2 * 6)
    for name in ("a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "c4"):
        assert getattr(c, name) == GaussianRational(0)


def test_abc_zero_vector():
    split = BlockSplit(3, 3)
    c = abc_coefficients(ZVector(split, [0, 0, 0], [0, 0, 0]))
    assert all(v == GaussianRational(0) for v in c.as_tuple())


def test_abc_quartic_homogeneity():
    split = BlockSplit(2, 4)
    X = random_zvector(split, 5)
    t = GaussianRational(mpq(2, 3), mpq(-1, 2))
    scaled = abc_coefficients(X.scaled(t))
    base = abc_coefficients(X)
    t4 = t ** 4
    assert scaled.as_tuple() == tuple(t4 * v for v in base.as_tuple())


def test_coefficient_vector_arithmetic():
    a = CoefficientVector10.from_values(range(10))
    b = a.scaled(2)
    assert (a + a).as_tuple() == b.as_tuple()
    assert CoefficientVector10.zero().as_tuple() == tuple(
        GaussianRational(0) for _ in range(10))
