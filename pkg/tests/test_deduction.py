import json

import pytest
from gmpy2 import mpq

from twostein import BlockSplit, make_constant_curvature, shift
from twostein.proof_engine import (HypothesisError, component_equalities,
                                   constant_curvature_deduction)
from twostein.sampling import block_orthogonal, rotate_tensor
from twostein.zoo import random_block_tensor, su3_so3_tensor


def test_constant_curvature_accepted():
    cT = shift(make_constant_curvature(5, 5))  # constant curvature 3
    res = constant_curvature_deduction(cT, BlockSplit(2, 3), seed=1, basis_sweeps=3)
    assert res.ok
    assert res.curvature == 3
    stages = [t["stage"] for t in res.trace]
    assert stages == ["input", "hypothesis_block_condition", "hypothesis_two_stein",
                      "ledger", "quadratic_form", "basis_sweep",
                      "model_comparison", "verdict"]
    json.loads(res.to_json())  # serializable


def test_singleton_branch_accepted():
    cT = make_constant_curvature(5, mpq(-3, 2))
    res = constant_curvature_deduction(cT, BlockSplit(1, 4), seed=2, basis_sweeps=3)
    assert res.ok and res.curvature == mpq(-3, 2)
    assert any(t["stage"] == "singleton_identity" for t in res.trace)


def test_su3_rejected_on_block_condition():
    with pytest.raises(HypothesisError) as err:
        constant_curvature_deduction(shift(su3_so3_tensor(1)), BlockSplit(1, 4),
                                     basis_sweeps=2)
    assert err.value.hypothesis == "block_condition"


def test_random_block_rejected_on_trace_condition():
    with pytest.raises(HypothesisError) as err:
        constant_curvature_deduction(random_block_tensor(2, 3, 3), BlockSplit(2, 3),
                                     basis_sweeps=2)
    assert err.value.hypothesis == "two_stein"


def test_verdict_invariant_under_block_rotations():
    cT = shift(make_constant_curvature(6, 4))
    split = BlockSplit(3, 3)
    for t in range(3):
        Q = block_orthogonal(3, 3, 50 + t)
        rotated = rotate_tensor(cT, Q)
        res = constant_curvature_deduction(rotated, split, seed=t, basis_sweeps=2)
        assert res.ok and res.curvature == 2


def test_component_equalities_structure():
    eqs = component_equalities(make_constant_curvature(5, 2), BlockSplit(2, 3))
    assert set(eqs) == {"within_w1", "within_w2", "mixed", "trace_ratios",
                       "cross_family"}
    assert all(v == 0.0 for v in eqs.values())
    eqs_bad = component_equalities(random_block_tensor(2, 3, 5), BlockSplit(2, 3))
    assert any(v > 0 for v in eqs_bad.values())


def test_dimension_and_split_guards():
    with pytest.raises(ValueError):
        constant_curvature_deduction(make_constant_curvature(4, 1), BlockSplit(2, 2))
    with pytest.raises(ValueError):
        constant_curvature_deduction(make_constant_curvature(5, 1), BlockSplit(3, 2))
    with pytest.raises(ValueError):
        constant_curvature_deduction(make_constant_curvature(5, 1), BlockSplit(2, 4))
