"""Weight selection and the positive semidefinite decomposition of the
final quadratic form.

For weights (xi, eta) satisfying the four inequalities below, the
combination

    Q = A1*P1 + A3*P3 + B1*Q1 + B3*Q3 + C1*S1,
    A1 = (d2-d1+1)xi + d2*eta,   A3 = xi,
    B1 = (d1-d2+1)eta + d1*xi,   B3 = eta,   C1 = -2(xi+eta),

is positive semidefinite in the tensor components and splits as
Q = q1 + q2 + q3 + q4 along component classes: q1 and q2 are explicit sums
of squares over pairwise-distinct index 4-tuples inside one block, q3 is a
completed-square form in the diagonal components, and q4 collects the
remaining families, each certified nonnegative by a small eigenvalue
computation plus an exact 2x2 determinant identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from ..conditions import BlockSplit, block_condition_residual
from ..core import CurvatureTensor
from .ledger import FormLedger, IdentityViolationError, coefficient_forms
from .symfuncs import CoefficientVector10

__all__ = [
    "WeightPair", "select_xi_eta", "case2_prescription",
    "QuadDecomposition", "final_quadratic_form",
    "case1_identity_check", "q4_psd_witness", "Q4Certificate",
]


@dataclass(frozen=True)
class WeightPair:
    """Positive weights (xi, eta) with the derived quantities

        mu = (d2-1)*eta + (d2-d1-1)*xi   > 0
        nu = (d1-1)*xi + (d1-d2-1)*eta   > 0
        (d1-d2-2)*eta + d1*xi  >= 0
        (d2-d1-2)*xi + d2*eta  >= 0

    all four verified at construction.
    """

    d1: int
    d2: int
    xi: object
    eta: object

    def __post_init__(self):
        if not (self.xi > 0 and self.eta > 0):
            raise ValueError("weights must be positive")
        if self.mu <= 0 or self.nu <= 0:
            raise ValueError(f"weight inequalities fail: mu={self.mu}, nu={self.nu}")
        if self.ineq3 < 0 or self.ineq4 < 0:
            raise ValueError(
                f"weight inequalities fail: {self.ineq3}, {self.ineq4}")

    @property
    def mu(self):
        return (self.d2 - 1) * self.eta + (self.d2 - self.d1 - 1) * self.xi

    @property
    def nu(self):
        return (self.d1 - 1) * self.xi + (self.d1 - self.d2 - 1) * self.eta

    @property
    def ineq3(self):
        return (self.d1 - self.d2 - 2) * self.eta + self.d1 * self.xi

    @property
    def ineq4(self):
        return (self.d2 - self.d1 - 2) * self.xi + self.d2 * self.eta


def select_xi_eta(d1: int, d2: int) -> WeightPair:
    """Deterministic valid weights for 2 <= d1 <= d2, d1 + d2 >= 5.

    Equal blocks take xi = eta = 1.  For d2 >= d1 + 2, eta = 1 and xi is one
    more than the larger of the two lower bounds (d2-d1+1)/(d1-1) and
    (d2-d1+2)/d1.  For d2 = d1 + 1, eta = 1 and xi is the midpoint of the
    admissible open interval (max(2/(d1-1), 3/d1), d1+1).
    """
    if not (2 <= d1 <= d2):
        raise ValueError("requires 2 <= d1 <= d2")
    if d1 + d2 < 5:
        raise ValueError("requires d1 + d2 >= 5 (no valid weights exist below)")
    if d2 == d1:
        xi = eta = mpq(1)
    elif d2 >= d1 + 2:
        eta = mpq(1)
        xi = max(mpq(d2 - d1 + 1, d1 - 1), mpq(d2 - d1 + 2, d1)) + 1
    else:  # d2 == d1 + 1
        eta = mpq(1)
        lo = max(mpq(2, d1 - 1), mpq(3, d1))
        hi = mpq(d1 + 1)
        xi = (lo + hi) / 2
    return WeightPair(d1, d2, xi, eta)


def case2_prescription(split: BlockSplit, w: WeightPair) -> CoefficientVector10:
    """Aggregate coefficient target that zeroes the symmetrized right-hand
    side: A3 = xi, B3 = eta, C1 = -2(xi+eta), A1 and B1 as in the module
    docstring, all other coordinates zero."""
    d1, d2 = split.d1, split.d2
    xi, eta = w.xi, w.eta
    return CoefficientVector10.from_values([
        (d2 - d1 + 1) * xi + d2 * eta, 0, xi,
        (d1 - d2 + 1) * eta + d1 * xi, 0, eta,
        -2 * (xi + eta), 0, 0, 0,
    ])


@dataclass(frozen=True)
class QuadDecomposition:
    """Value and parts of the final quadratic form, with the diagonal trace
    vectors U_k = sum_i T_ikik, V_k = sum_a T_akak (k in W1) and
    U_a = sum_c T_caca, V_a = sum_i T_iaia (a in W2)."""

    total: object
    q1: object
    q2: object
    q3: object
    q4: object
    u_k: tuple
    v_k: tuple
    u_a: tuple
    v_a: tuple
    weights: WeightPair

    def parts(self):
        return self.q1, self.q2, self.q3, self.q4


def final_quadratic_form(T: CurvatureTensor, split: BlockSplit, w: WeightPair,
                         ledger: FormLedger | None = None,
                         tolerance: float | None = None) -> QuadDecomposition:
    """Evaluate the final quadratic form and its four-part decomposition.

    The total comes from the ledger with the case-2 coefficient values; the
    parts are computed from their component formulas.  Both the
    completed-square identity for q3 and total == q1+q2+q3+q4 are asserted
    (exactly over exact fields).
    """
    f = T.field
    if f.is_complex:
        raise ValueError("final_quadratic_form requires a real field")
    if split.d1 < 2:
        raise ValueError("requires d1 >= 2 (the singleton case has its own identity)")
    if (w.d1, w.d2) != (split.d1, split.d2):
        raise ValueError("weight pair built for a different split")
    tol = f.default_tolerance if tolerance is None else tolerance
    if ledger is None:
        ledger = coefficient_forms(T, split, tolerance=tol)

    d1, d2 = split.d1, split.d2
    xi = f.coerce(w.xi)
    eta = f.coerce(w.eta)
    mu = f.coerce(w.mu)
    nu = f.coerce(w.nu)
    pres = case2_prescription(split, w)
    led = ledger.as_dict()

    def _real(gq_or_scalar):
        v = gq_or_scalar
        return f.coerce(v.re) if hasattr(v, "re") else f.coerce(v)

    total = (_real(pres.a1) * led["p1"] + _real(pres.a3) * led["p3"]
             + _real(pres.b1) * led["q1"] + _real(pres.b3) * led["q3"]
             + _real(pres.c1) * led["s1"])

    A = T.entries
    W1 = list(split.w1)
    W2 = list(split.w2)
    z = f.zero()

    q1 = z
    if d1 >= 4:
        for tup in itertools.permutations(W1, 4):
            i, j, k, l = tup
            q1 = q1 + (A[i, k, j, l] + A[j, k, i, l]) ** 2
    q1 = xi * q1 / 2
    q2 = z
    if d2 >= 4:
        for tup in itertools.permutations(W2, 4):
            a, c, b, d = tup
            q2 = q2 + (A[a, c, b, d] + A[a, d, b, c]) ** 2
    q2 = eta * q2 / 2

    r = {(i, k): A[i, k, i, k] for i in W1 for k in W1}
    s = {(a, c): A[a, c, a, c] for a in W2 for c in W2}
    mix = {(i, a): A[i, a, i, a] for i in W1 for a in W2}
    u_k = tuple(sum((r[i, k] for i in W1), z) for k in W1)
    v_k = tuple(sum((mix[k, a] for a in W2), z) for k in W1)
    u_a = tuple(sum((s[c, a] for c in W2), z) for a in W2)
    v_a = tuple(sum((mix[i, a] for i in W1), z) for a in W2)

    alpha = _real(pres.a1)
    beta = _real(pres.b1)
    # completed-square form; the first two difference sums run over the
    # off-column indices only (the in-column diagonal entry vanishes)
    q3 = alpha * sum(((r[i, k] - r[j, k]) ** 2 for k in W1 for i in W1 for j in W1
                      if i != k and j != k), z) / (2 * (d1 - 1))
    q3 = q3 + beta * sum(((s[a, c] - s[a, d]) ** 2 for a in W2 for c in W2 for d in W2
                          if c != a and d != a), z) / (2 * (d2 - 1))
    q3 = q3 + mu * sum(((mix[i, a] - mix[j, a]) ** 2 for a in W2
                        for i in W1 for j in W1), z) / (2 * d1)
    q3 = q3 + nu * sum(((mix[i, a] - mix[i, b]) ** 2 for a in W2 for b in W2
                        for i in W1), z) / (2 * d2)
    q3 = q3 + (xi + eta) * d2 * (d1 - 1) * sum(
        ((u_k[k] / (d1 - 1) - v_k[k] / d2) ** 2 for k in range(d1)), z)
    q3 = q3 + (xi + eta) * d1 * (d2 - 1) * sum(
        ((u_a[a - d1] / (d2 - 1) - v_a[a - d1] / d1) ** 2 for a in W2), z)

    # raw collection of the same diagonal families
    q3_raw = alpha * sum((v ** 2 for v in r.values()), z)
    q3_raw = q3_raw + xi * sum((u ** 2 for u in u_k), z)
    q3_raw = q3_raw + beta * sum((v ** 2 for v in s.values()), z)
    q3_raw = q3_raw + eta * sum((u ** 2 for u in u_a), z)
    q3_raw = q3_raw + ((d2 - 2) * xi + (d1 - 2) * eta) * sum((v ** 2 for v in mix.values()), z)
    q3_raw = q3_raw + xi * sum((u ** 2 for u in v_a), z)
    q3_raw = q3_raw + eta * sum((u ** 2 for u in v_k), z)
    q3_raw = q3_raw - 2 * (xi + eta) * (
        sum((u_k[k] * v_k[k] for k in range(d1)), z)
        + sum((u_a[a] * v_a[a] for a in range(d2)), z))
    _assert_close(f, q3, q3_raw, tol, "q3 completed-square identity")

    cA1 = (d2 - d1 + 4) * xi + d2 * eta
    cB1 = (d1 - d2 - 2) * eta + d1 * xi
    q4 = z
    for k in W1:
        for l in W1:
            if k == l:
                continue
            us = [A[i, k, i, l] for i in W1]
            vs = [A[a, k, a, l] for a in W2]
            su = sum(us, z)
            sv = sum(vs, z)
            q4 = q4 + cA1 * sum((u ** 2 for u in us), z) + cB1 * sum((v ** 2 for v in vs), z)
            q4 = q4 + xi * su ** 2 + eta * sv ** 2 - 2 * (xi + eta) * su * sv
    cA2 = (d1 - d2 + 4) * eta + d1 * xi
    cB2 = (d2 - d1 - 2) * xi + d2 * eta
    for c in W2:
        for d in W2:
            if c == d:
                continue
            us = [A[a, c, a, d] for a in W2]
            vs = [A[i, c, i, d] for i in W1]
            su = sum(us, z)
            sv = sum(vs, z)
            q4 = q4 + cA2 * sum((u ** 2 for u in us), z) + cB2 * sum((v ** 2 for v in vs), z)
            q4 = q4 + eta * su ** 2 + xi * sv ** 2 - 2 * (xi + eta) * su * sv
    _assert_close(f, total, q1 + q2 + q3 + q4, tol, "four-part decomposition")
    return QuadDecomposition(total, q1, q2, q3, q4, u_k, v_k, u_a, v_a, w)


def _assert_close(field, a, b, tol, label):
    d = a - b
    bad = field.magnitude_nonzero(d) if field.is_exact else field.magnitude(d) > tol
    if bad:
        raise IdentityViolationError(f"{label} failed: {a} vs {b}")


def case1_identity_check(T: CurvatureTensor, split: BlockSplit,
                         ledger: FormLedger | None = None,
                         tolerance: float | None = None):
    """Singleton-block identity: with d1 = 1,

        d2*P1 + Q1 - 2*S1  =  sum_{a != c,d} (T[0,c,0,d] - T[a,c,a,d])^2.

    Returns (ledger value, sum of squares); the two must agree exactly.
    """
    if split.d1 != 1:
        raise ValueError("requires d1 = 1")
    f = T.field
    tol = f.default_tolerance if tolerance is None else tolerance
    if ledger is None:
        ledger = coefficient_forms(T, split, tolerance=tol)
    d2 = split.d2
    lhs = d2 * ledger.p1 + ledger.q1 - 2 * ledger.s1
    A = T.entries
    z = f.zero()
    sos = z
    for a in split.w2:
        for c in split.w2:
            if c == a:
                continue
            for d in split.w2:
                if d == a:
                    continue
                sos = sos + (A[0, c, 0, d] - A[a, c, a, d]) ** 2
    _assert_close(f, lhs, sos, tol, "singleton-block identity")
    return lhs, sos


@dataclass(frozen=True)
class Q4Certificate:
    """Eigenvalue certificate for the two bracket families of q4.

    det_value is the exact 2x2 determinant
    ((d2+2)xi + d2*eta)((d1-2)eta + d1*xi) - d2(d1-2)(xi+eta)^2 and must
    equal 2(d1+d2)xi^2 + 2(d1+d2-2)xi*eta exactly.
    """

    min_eigenvalue_first: float
    min_eigenvalue_second: float
    det_value: object
    det_expected: object
    passes: bool


def _bracket_matrix(n_u, n_v, diag_u, diag_v, w_sum_u, w_sum_v, cross):
    """Matrix of c_u*sum u^2 + c_v*sum v^2 + a*(sum u)^2 + b*(sum v)^2
    + 2*cross*(sum u)(sum v) in the variables (u, v)."""
    dim = n_u + n_v
    M = np.zeros((dim, dim))
    for t in range(n_u):
        M[t, t] = diag_u
    for t in range(n_v):
        M[n_u + t, n_u + t] = diag_v
    M[:n_u, :n_u] += w_sum_u
    M[n_u:, n_u:] += w_sum_v
    M[:n_u, n_u:] += cross
    M[n_u:, :n_u] += cross
    return M


def q4_psd_witness(split: BlockSplit, w: WeightPair,
                   tolerance: float = 1e-12) -> Q4Certificate:
    """Certify positive semidefiniteness of both q4 bracket families.

    Builds each bracket's quadratic form in variables (u_1..u_{m-2},
    v_1..v_m'), checks its minimum eigenvalue is >= -tolerance, and checks
    the determinant identity of the 2x2 block left after the orthogonal
    change of variables, exactly.
    """
    d1, d2 = split.d1, split.d2
    if (w.d1, w.d2) != (d1, d2):
        raise ValueError("weight pair built for a different split")
    xi, eta = mpq(w.xi), mpq(w.eta)
    M1 = _bracket_matrix(d1 - 2, d2,
                         float((d2 - d1 + 4) * xi + d2 * eta),
                         float((d1 - d2 - 2) * eta + d1 * xi),
                         float(xi), float(eta), -float(xi + eta))
    M2 = _bracket_matrix(d2 - 2, d1,
                         float((d1 - d2 + 4) * eta + d1 * xi),
                         float((d2 - d1 - 2) * xi + d2 * eta),
                         float(eta), float(xi), -float(xi + eta))
    min1 = float(np.min(np.linalg.eigvalsh(M1))) if M1.size else 0.0
    min2 = float(np.min(np.linalg.eigvalsh(M2))) if M2.size else 0.0
    det_value = ((d2 + 2) * xi + d2 * eta) * ((d1 - 2) * eta + d1 * xi) \
        - d2 * (d1 - 2) * (xi + eta) ** 2
    det_expected = 2 * (d1 + d2) * xi ** 2 + 2 * (d1 + d2 - 2) * xi * eta
    passes = (min1 >= -tolerance and min2 >= -tolerance
              and det_value == det_expected)
    return Q4Certificate(min1, min2, det_value, det_expected, passes)
