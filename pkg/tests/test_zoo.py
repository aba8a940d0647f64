import itertools

import pytest
from gmpy2 import mpq

from twostein import (BlockSplit, block_condition_residual, einstein_deficit,
                      jacobi, make_constant_curvature, two_stein_certificate,
                      validate_symmetries)
from twostein.sampling import cayley_orthogonal
from twostein.zoo import (ZooSpec, complex_space_form, generate,
                          product_sphere_tensor, quaternionic_space_form,
                          random_block_tensor, random_tensor, su3_so3_tensor)

ALL_SPECS = [
    ZooSpec("constant", {"dim": 5, "kappa": "2"}),
    ZooSpec("complex_space_form", {"m": 2, "c": "4"}),
    ZooSpec("quaternionic_space_form", {"q": 1, "c": "4"}),
    ZooSpec("su3_so3", {"scale": "1"}),
    ZooSpec("product_spheres", {"p": 2, "q": 3, "kappa1": "2", "kappa2": "1"}),
    ZooSpec("random", {"dim": 5}, seed=3),
    ZooSpec("random_block", {"d1": 2, "d2": 3}, seed=3),
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_every_zoo_tensor_is_valid(spec):
    assert validate_symmetries(generate(spec)).ok


def test_complex_space_form_m1_is_constant_curvature():
    assert complex_space_form(1, mpq(5)) == make_constant_curvature(2, 5)


def test_complex_space_form_two_stein_and_f1():
    T = complex_space_form(2, 4)
    cert = two_stein_certificate(T)
    assert cert.verdict == "two_stein"
    assert cert.f1 == 6  # Jacobi spectrum (0, 4, 1, 1) for unit X
    assert cert.f2 == 18


def test_complex_space_form_not_constant_curvature():
    T = complex_space_form(2, 4)
    assert T[0, 2, 0, 2] != T[0, 1, 0, 1]  # e1 = J e0 is a special direction


def test_quaternionic_space_form():
    T = quaternionic_space_form(1, 4)
    assert two_stein_certificate(T).verdict == "two_stein"
    zero = quaternionic_space_form(1, 0)
    assert all(v == 0 for v in zero.entries.flat)
    _, deficit = einstein_deficit(quaternionic_space_form(2, 4))
    assert deficit == 0.0


def test_su3_tensor_two_stein_exact():
    cert = two_stein_certificate(su3_so3_tensor(6))
    assert cert.verdict == "two_stein"
    assert cert.residual1 == 0.0 and cert.residual2 == 0.0
    assert cert.f1 == mpq(1, 2)
    assert cert.f2 == mpq(1, 8)
    assert cert.f1 > 0  # compact model: positive Einstein constant


def test_su3_tensor_is_not_constant_curvature():
    # the trace and squared trace of the Jacobi operator are constant but the
    # cubed trace varies with the direction, so the spectra differ
    T = su3_so3_tensor(6)

    def tr_cubed(X):
        M = jacobi(T, X).matrix
        total = mpq(0)
        for u in range(5):
            for v in range(5):
                for w in range(5):
                    total += M[u, v] * M[v, w] * M[w, u]
        return total

    e0 = [1, 0, 0, 0, 0]
    Q = cayley_orthogonal(5, 3)
    rotated = [Q[i][0] for i in range(5)]
    assert tr_cubed(e0) != tr_cubed(rotated)


def test_su3_scale_law():
    base = su3_so3_tensor(6)
    scaled = su3_so3_tensor(mpq(3, 2))
    factor = mpq(6) / mpq(3, 2)
    for idx in itertools.product(range(5), repeat=4):
        assert scaled[idx] == factor * base[idx]
    assert two_stein_certificate(scaled).verdict == "two_stein"


def test_product_sphere_block_and_einstein():
    split = BlockSplit(2, 3)
    assert block_condition_residual(product_sphere_tensor(2, 3, 1, 1), split) == 0.0
    _, deficit = einstein_deficit(product_sphere_tensor(2, 3, 2, 1))
    assert deficit == 0.0
    cert = two_stein_certificate(product_sphere_tensor(2, 3, 2, 1))
    assert cert.verdict == "einstein"


def test_random_tensor_determinism():
    assert random_tensor(5, 7) == random_tensor(5, 7)
    assert random_tensor(5, 7) != random_tensor(5, 8)
    assert random_block_tensor(2, 3, 7) == random_block_tensor(2, 3, 7)


def test_random_tensor_generically_nonzero():
    T = random_tensor(5, 3)
    assert any(v != 0 for v in T.entries.flat)


def test_random_block_tensor_postconditions():
    for (d1, d2, seed) in ((2, 3, 1), (1, 4, 2), (3, 3, 3), (2, 4, 4)):
        T = random_block_tensor(d1, d2, seed)
        assert validate_symmetries(T).ok
        assert block_condition_residual(T, BlockSplit(d1, d2)) == 0.0


def test_zoospec_json_roundtrip():
    spec = ZooSpec("random_block", {"d1": 2, "d2": 3}, seed=9)
    again = ZooSpec.from_json(spec.to_json())
    assert again == spec
    assert generate(again) == generate(spec)
