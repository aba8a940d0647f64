import random

import pytest
from gmpy2 import mpq

from twostein import BlockSplit, GaussianRational
from twostein.proof_engine import (CoefficientVector10, UnreachableTargetError,
                                   case2_prescription, select_xi_eta,
                                   solve_vector_set)


def test_zero_target_gives_empty_set():
    out = solve_vector_set(CoefficientVector10.zero(), BlockSplit(2, 3))
    assert out.distinct_count == 0
    assert out.aggregate.as_tuple() == CoefficientVector10.zero().as_tuple()


def test_case2_prescription_target_3_3():
    # xi = eta = 1 at the balanced split: A1 = B1 = 4, A3 = B3 = 1, C1 = -4
    split = BlockSplit(3, 3)
    w = select_xi_eta(3, 3)
    target = case2_prescription(split, w)
    assert target.a1 == GaussianRational(4)
    assert target.b1 == GaussianRational(4)
    assert target.a3 == GaussianRational(1)
    assert target.b3 == GaussianRational(1)
    assert target.c1 == GaussianRational(-4)
    out = solve_vector_set(target, split)
    assert out.aggregate.as_tuple() == target.as_tuple()


def test_case2_prescription_target_2_3():
    split = BlockSplit(2, 3)
    w = select_xi_eta(2, 3)
    target = case2_prescription(split, w)
    out = solve_vector_set(target, split)
    assert out.aggregate.as_tuple() == target.as_tuple()


def random_gaussian_target(seed):
    rng = random.Random(seed)

    def draw():
        return GaussianRational(mpq(rng.randrange(-20, 21), rng.randrange(1, 7)),
                                mpq(rng.randrange(-20, 21), rng.randrange(1, 7)))

    return CoefficientVector10.from_values([draw() for _ in range(10)])


@pytest.mark.parametrize("d1,d2", [(2, 3), (3, 3)])
def test_random_targets_reproduced_exactly(d1, d2):
    split = BlockSplit(d1, d2)
    for seed in range(5):
        target = random_gaussian_target(seed)
        out = solve_vector_set(target, split)
        assert out.aggregate.as_tuple() == target.as_tuple()
        assert out.distinct_count <= 40


def test_unit_coordinate_targets_reachable():
    # the probe pool spans all twenty real coordinate directions
    split = BlockSplit(2, 3)
    for pos in range(10):
        for part in (GaussianRational(1), GaussianRational(0, 1)):
            vals = [GaussianRational(0)] * 10
            vals[pos] = part
            out = solve_vector_set(CoefficientVector10.from_values(vals), split)
            assert out.aggregate.as_tuple() == tuple(vals)


def test_degenerate_split_rejects_unreachable_coordinates():
    split = BlockSplit(1, 4)
    bad = [GaussianRational(0)] * 10
    bad[1] = GaussianRational(1)  # a2 is identically zero when d1 = 1
    with pytest.raises(UnreachableTargetError):
        solve_vector_set(CoefficientVector10.from_values(bad), split)


def test_degenerate_split_solves_reachable_targets():
    split = BlockSplit(1, 4)
    rng = random.Random(9)

    def draw():
        return GaussianRational(mpq(rng.randrange(-9, 10), rng.randrange(1, 5)),
                                mpq(rng.randrange(-9, 10), rng.randrange(1, 5)))

    vals = [GaussianRational(0)] * 10
    for pos in (0, 3, 4, 5, 6, 7):  # a1, b1, b2, b3, c1, c2
        vals[pos] = draw()
    target = CoefficientVector10.from_values(vals)
    out = solve_vector_set(target, split)
    assert out.aggregate.as_tuple() == target.as_tuple()


def test_multiplicities_are_positive_integers():
    out = solve_vector_set(random_gaussian_target(17), BlockSplit(2, 3))
    for vec, mult in out.entries:
        assert isinstance(mult, int) and mult > 0
        assert vec.split == BlockSplit(2, 3)
