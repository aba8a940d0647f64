import itertools
import random

import pytest
from gmpy2 import mpq

from twostein import (CurvatureTensor, F64, ParseError, RATIONAL,
                      SymmetryConflictError, bianchi_project, emit_tensor,
                      jacobi, make_constant_curvature, pair_symmetrize,
                      parse_tensor, ricci, shift, unshift, validate_symmetries)
from twostein.core import canonical_index
from twostein.zoo import random_tensor, su3_so3_tensor


def test_constant_curvature_components():
    T = make_constant_curvature(5, 1)
    assert T[0, 1, 0, 1] == 1
    assert T[0, 1, 1, 0] == -1
    assert T[0, 1, 2, 3] == 0
    assert validate_symmetries(T).ok


def test_constant_curvature_zero():
    T = make_constant_curvature(5, 0)
    assert all(v == 0 for v in T.entries.flat)


def test_constant_curvature_ricci_multiple_of_identity():
    # kappa*(n-1) on the diagonal
    rho = ricci(make_constant_curvature(3, 2))
    for u in range(3):
        for v in range(3):
            assert rho.matrix[u, v] == (4 if u == v else 0)


def test_invalid_dimension():
    with pytest.raises(ValueError):
        make_constant_curvature(1, 1)


def test_validate_flags_missing_antisymmetry_partner():
    ent = RATIONAL.empty_array((2, 2, 2, 2))
    ent[0, 1, 0, 1] = mpq(1)  # partner entries left at zero
    report = validate_symmetries(CurvatureTensor(2, RATIONAL, ent))
    assert not report.ok
    assert any(v.identity == "antisymmetry_second_pair" and v.indices == (0, 1, 1, 0)
               for v in report.violations)


def test_random_symmetrized_tensor_is_valid():
    assert validate_symmetries(random_tensor(5, 42)).ok


def test_ricci_of_zero_and_einstein_zoo():
    assert all(v == 0 for v in ricci(make_constant_curvature(4, 0)).matrix.flat)
    rho = ricci(su3_so3_tensor(6))
    lam = rho.matrix[0, 0]
    for u in range(5):
        for v in range(5):
            assert rho.matrix[u, v] == (lam if u == v else 0)


def test_jacobi_constant_curvature_diagonal():
    J = jacobi(make_constant_curvature(5, mpq(7, 3)), [1, 0, 0, 0, 0])
    for u in range(5):
        for v in range(5):
            expected = mpq(7, 3) if u == v and u > 0 else 0
            assert J.matrix[u, v] == expected


def test_jacobi_zero_vector():
    J = jacobi(random_tensor(4, 3), [0, 0, 0, 0])
    assert all(v == 0 for v in J.matrix.flat)


def test_jacobi_invariants_on_samples():
    T = random_tensor(5, 11)
    rho = ricci(T)
    rng = random.Random(5)
    for _ in range(5):
        X = [mpq(rng.randrange(-4, 5)) for _ in range(5)]
        J = jacobi(T, X)
        assert J.trace() == rho(X, X)
        # annihilates X
        assert all(v == 0 for v in J.apply(X))
        # quadratic scaling
        J2 = jacobi(T, [3 * x for x in X])
        assert all(J2.matrix[u, v] == 9 * J.matrix[u, v]
                   for u in range(5) for v in range(5))


def test_jacobi_mixed_block_vanishes_for_block_tensor():
    from twostein.zoo import random_block_tensor

    T = random_block_tensor(2, 3, 8)
    J = jacobi(T, [mpq(2), mpq(-3), 0, 0, 0])  # X in the first block
    for i in range(2):
        for a in range(2, 5):
            assert J.matrix[i, a] == 0


def test_shift_examples():
    assert shift(make_constant_curvature(5, 2)) == make_constant_curvature(5, 0)
    assert shift(make_constant_curvature(5, 7)) == make_constant_curvature(5, 5)
    assert shift(make_constant_curvature(4, 0)) == make_constant_curvature(4, -2)
    T = random_tensor(4, 9)
    assert unshift(shift(T)) == T
    assert shift(unshift(T)) == T


def test_shift_preserves_differences():
    A = random_tensor(4, 1)
    B = random_tensor(4, 2)
    assert shift(A) - shift(B) == A - B


def test_bianchi_projection_idempotent():
    rng = random.Random(17)
    raw = RATIONAL.empty_array((4, 4, 4, 4))
    for idx in itertools.product(range(4), repeat=4):
        raw[idx] = mpq(rng.randrange(-9, 10))
    sym = pair_symmetrize(raw)
    once = bianchi_project(sym)
    twice = bianchi_project(once)
    assert all(once[idx] == twice[idx] for idx in itertools.product(range(4), repeat=4))


# -- serialization -----------------------------------------------------------

def test_parse_minimal_generating_set():
    T = parse_tensor('{"dim":2,"field":"rational","entries":[[0,1,0,1,"1"]]}')
    assert T == make_constant_curvature(2, 1)


def test_parse_symmetry_conflict():
    # antisymmetry forces the second value to be -1
    text = '{"dim":2,"field":"rational","entries":[[0,1,0,1,"1"],[1,0,0,1,"1"]]}'
    with pytest.raises(SymmetryConflictError):
        parse_tensor(text)


def test_parse_consistent_duplicate_is_fine():
    text = '{"dim":2,"field":"rational","entries":[[0,1,0,1,"1"],[1,0,0,1,"-1"]]}'
    assert parse_tensor(text) == make_constant_curvature(2, 1)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_tensor("not json")
    with pytest.raises(ParseError):
        parse_tensor('{"dim":2,"field":"rational","entries":[[0,1,0,9,"1"]]}')
    with pytest.raises(ParseError):
        parse_tensor('{"dim":2,"field":"nope","entries":[]}')
    with pytest.raises(ParseError):
        parse_tensor('{"dim":2,"field":"rational","entries":[[0,1,0,1,0.5]]}')


def test_emit_parse_roundtrip_zoo():
    from twostein.zoo import complex_space_form, product_sphere_tensor

    for T in (make_constant_curvature(5, mpq(5, 3)), su3_so3_tensor(1),
              complex_space_form(2, 4), product_sphere_tensor(2, 3, 2, 1),
              random_tensor(4, 77)):
        text = emit_tensor(T)
        back = parse_tensor(text)
        assert back == T
        assert emit_tensor(back) == text  # canonical form is a fixed point


def test_emit_deterministic_bytes():
    a = emit_tensor(random_tensor(5, 123))
    b = emit_tensor(random_tensor(5, 123))
    assert a == b


def test_float_field_roundtrip():
    T = make_constant_curvature(4, 1.25, F64)
    back = parse_tensor(emit_tensor(T))
    assert back.field.name == "f64"
    assert back == T


def test_canonical_index_forced_zero():
    rep, sign, forced = canonical_index((0, 0, 1, 2))
    assert forced
    rep, sign, forced = canonical_index((2, 3, 0, 1))
    assert rep == (0, 1, 2, 3) and sign == 1 and not forced
    rep, sign, forced = canonical_index((1, 0, 2, 3))
    assert rep == (0, 1, 2, 3) and sign == -1 and not forced
