"""Coefficient forms of the quartic trace and their symmetrized aggregates.

For a block-compatible tensor the Jacobi matrix of X = (x, y) has blocks
quadratic in x and y, so Tr(T_X^2) expands as

    sum_i x_i^4 p1_i + sum_{i!=j} x_i^3 x_j p2_ij + sum_{i!=j} x_i^2 x_j^2 p3_ij
    + (degenerate-index families p4, p5) + (the same in y with q-forms)
    + 2 sum x_i^2 y_a^2 s1_ia + 2 sum x_i^2 y_a y_b s2_iab
    + 2 sum x_i x_j y_a^2 s3_ija + 2 sum x_i x_j y_a y_b s4_ijab,

with every p/q/s a quadratic form in the tensor components, read off the
fully symmetric quartic coefficient tensor.  Summing the expansion over all
permutations of the x and the y coordinates of a restricted vector X kills
the p4/p5/q4/q5 families and produces

    S(X) = sum_h A_h(x) P_h + sum_h B_h(y) Q_h + sum_h C_h(x,y) S_h

with the aggregates P_h, Q_h, S_h defined here and the multipliers from
:mod:`.symfuncs`.  Five aggregates have independent hand-coded closed
forms; ``coefficient_forms`` computes both paths and insists they agree.
"""
from __future__ import annotations

import itertools
import math

from gmpy2 import mpq

from ..conditions import BlockSplit, block_condition_residual
from ..core import CurvatureTensor
from ..fields import GaussianRational
from ..polarization import quartic_coefficients
from .symfuncs import CoefficientVector10, ZVector, abc_coefficients

__all__ = [
    "FormLedger", "coefficient_forms", "published_aggregates",
    "symmetrized_trace_direct", "symmetrized_trace_formula",
    "rhs_identity_value", "trace_jacobi_square_complex",
    "CombinatorialGuardError", "IdentityViolationError",
    "PERMUTATION_GUARD",
]

PERMUTATION_GUARD = 10 ** 7


class CombinatorialGuardError(RuntimeError):
    """d1! * d2! exceeds the direct-summation guard."""


class IdentityViolationError(AssertionError):
    """Two expressions that must agree exactly disagreed (internal bug)."""


class FormLedger:
    """Values of the ten aggregates for a fixed (tensor, split).

    ``raw`` optionally holds the per-index coefficient-form families
    (p1, p2, p3, q1, q2, q3, s1, s2, s3, s4) keyed by their index tuples.
    """

    __slots__ = ("split", "p1", "p2", "p3", "q1", "q2", "q3",
                 "s1", "s2", "s3", "s4", "raw")

    KEYS = ("p1", "p2", "p3", "q1", "q2", "q3", "s1", "s2", "s3", "s4")

    def __init__(self, split, values, raw=None):
        self.split = split
        for k in self.KEYS:
            setattr(self, k, values[k])
        self.raw = raw

    def as_dict(self):
        return {k: getattr(self, k) for k in self.KEYS}

    def scaled_check(self, factor):
        """Ledger values are quadratic in the tensor: scaling the tensor by
        t scales every aggregate by t^2."""
        return {k: getattr(self, k) * factor ** 2 for k in self.KEYS}

    def __repr__(self):
        vals = ", ".join(f"{k}={getattr(self, k)}" for k in self.KEYS)
        return f"FormLedger(d1={self.split.d1}, d2={self.split.d2}, {vals})"


def published_aggregates(T: CurvatureTensor, split: BlockSplit) -> dict:
    """Hand-coded closed forms of the five published aggregates:

        P1 = sum_{ikl} T_ikil^2 + sum_{iab} T_iaib^2
        P3 = sum_{i!=j} ( sum_kl T_ikil T_jkjl + sum_kl T_ikjl^2
                          + sum_kl T_ikjl T_jkil + sum_ab T_iaib T_jajb
                          + 2 sum_ab T_iajb^2 )
        Q1, Q3 = the same with the blocks swapped
        S1 = sum_{ikla} T_ikil T_akal + sum_{iacd} T_icid T_acad
             + sum_{ikac} T_akic^2
    """
    A = T.entries
    z = T.field.zero()
    W1 = list(split.w1)
    W2 = list(split.w2)

    P1 = sum((A[i, k, i, l] ** 2 for i in W1 for k in W1 for l in W1), z) + \
        sum((A[i, a, i, b] ** 2 for i in W1 for a in W2 for b in W2), z)
    Q1 = sum((A[a, c, a, d] ** 2 for a in W2 for c in W2 for d in W2), z) + \
        sum((A[a, k, a, l] ** 2 for a in W2 for k in W1 for l in W1), z)

    P3 = z
    for i in W1:
        for j in W1:
            if i == j:
                continue
            P3 = P3 + sum((A[i, k, i, l] * A[j, k, j, l] for k in W1 for l in W1), z)
            P3 = P3 + sum((A[i, k, j, l] ** 2 for k in W1 for l in W1), z)
            P3 = P3 + sum((A[i, k, j, l] * A[j, k, i, l] for k in W1 for l in W1), z)
            P3 = P3 + sum((A[i, a, i, b] * A[j, a, j, b] for a in W2 for b in W2), z)
            P3 = P3 + 2 * sum((A[i, a, j, b] ** 2 for a in W2 for b in W2), z)
    Q3 = z
    for a in W2:
        for b in W2:
            if a == b:
                continue
            Q3 = Q3 + sum((A[a, c, a, d] * A[b, c, b, d] for c in W2 for d in W2), z)
            Q3 = Q3 + sum((A[a, c, b, d] ** 2 for c in W2 for d in W2), z)
            Q3 = Q3 + sum((A[a, c, b, d] * A[b, c, a, d] for c in W2 for d in W2), z)
            Q3 = Q3 + sum((A[a, k, a, l] * A[b, k, b, l] for k in W1 for l in W1), z)
            Q3 = Q3 + 2 * sum((A[a, k, b, l] ** 2 for k in W1 for l in W1), z)

    S1 = sum((A[i, k, i, l] * A[a, k, a, l] for i in W1 for k in W1 for l in W1 for a in W2), z) + \
        sum((A[i, c, i, d] * A[a, c, a, d] for i in W1 for a in W2 for c in W2 for d in W2), z) + \
        sum((A[a, k, i, c] ** 2 for i in W1 for k in W1 for a in W2 for c in W2), z)
    return {"p1": P1, "p3": P3, "q1": Q1, "q3": Q3, "s1": S1}


def coefficient_forms(T: CurvatureTensor, split: BlockSplit,
                      keep_raw: bool = False,
                      tolerance: float | None = None) -> FormLedger:
    """Extract every aggregate from the quartic coefficient tensor.

    Requires the block conditions to hold (the expansion above is only
    valid then).  The five published aggregates are recomputed from their
    hand-coded closed forms and must agree with the extracted values,
    exactly on exact fields.
    """
    f = T.field
    if f.is_complex:
        raise ValueError("coefficient_forms requires a real tensor field")
    if split.n != T.n:
        raise ValueError("split does not match tensor dimension")
    tol = f.default_tolerance if tolerance is None else tolerance
    residual = block_condition_residual(T, split)
    blocks_ok = residual == 0.0 if f.is_exact else residual <= tol
    if not blocks_ok:
        raise ValueError(
            f"block conditions fail for split ({split.d1},{split.d2}): residual {residual}")

    F = quartic_coefficients(T)
    W1 = list(split.w1)
    W2 = list(split.w2)
    z = f.zero()

    values = {
        "p1": sum((F[i, i, i, i] for i in W1), z),
        "p2": 4 * sum((F[i, i, i, j] for i in W1 for j in W1 if i != j), z),
        "p3": 3 * sum((F[i, i, j, j] for i in W1 for j in W1 if i != j), z),
        "q1": sum((F[a, a, a, a] for a in W2), z),
        "q2": 4 * sum((F[a, a, a, b] for a in W2 for b in W2 if a != b), z),
        "q3": 3 * sum((F[a, a, b, b] for a in W2 for b in W2 if a != b), z),
        "s1": 3 * sum((F[i, i, a, a] for i in W1 for a in W2), z),
        "s2": 3 * sum((F[i, i, a, b] for i in W1 for a in W2 for b in W2 if a != b), z),
        "s3": 3 * sum((F[i, j, a, a] for i in W1 for j in W1 if i != j for a in W2), z),
        "s4": 6 * sum((F[i, j, a, b] for i in W1 for j in W1 if i != j
                       for a in W2 for b in W2 if a != b), z),
    }

    pub = published_aggregates(T, split)
    for key, hand in pub.items():
        diff = values[key] - hand
        bad = f.magnitude_nonzero(diff) if f.is_exact else f.magnitude(diff) > tol
        if bad:
            raise IdentityViolationError(
                f"extracted aggregate {key} = {values[key]} disagrees with "
                f"its closed form {hand}")

    raw = None
    if keep_raw:
        raw = {
            "p1": {(i,): F[i, i, i, i] for i in W1},
            "p2": {(i, j): 4 * F[i, i, i, j] for i in W1 for j in W1 if i != j},
            "p3": {(i, j): 3 * F[i, i, j, j] for i in W1 for j in W1 if i != j},
            "q1": {(a,): F[a, a, a, a] for a in W2},
            "q2": {(a, b): 4 * F[a, a, a, b] for a in W2 for b in W2 if a != b},
            "q3": {(a, b): 3 * F[a, a, b, b] for a in W2 for b in W2 if a != b},
            "s1": {(i, a): 3 * F[i, i, a, a] for i in W1 for a in W2},
            "s2": {(i, a, b): 3 * F[i, i, a, b] for i in W1
                   for a in W2 for b in W2 if a != b},
            "s3": {(i, j, a): 3 * F[i, j, a, a] for i in W1 for j in W1 if i != j
                   for a in W2},
            "s4": {(i, j, a, b): 3 * F[i, j, a, b] for i in W1 for j in W1 if i != j
                   for a in W2 for b in W2 if a != b},
        }
    return FormLedger(split, values, raw)


# ---------------------------------------------------------------------------
# direct and formula evaluation of the symmetrized trace
# ---------------------------------------------------------------------------

def trace_jacobi_square_complex(T: CurvatureTensor, coords):
    """Tr(T_X^2) for a complex vector X over a real tensor.

    coords: length-n sequence of GaussianRational (exact tensors) or complex
    floats.  Exact tensors give an exact GaussianRational result.
    """
    n = T.n
    A = T.entries
    if not T.field.is_exact:
        import numpy as np

        X = np.array([complex(v) for v in coords])
        M = np.einsum("p,q,puqv->uv", X, X, A.astype(complex))
        return complex(np.sum(M * M.T))

    xs = [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in coords]
    support = [p for p in range(n) if xs[p]]
    zero = mpq(0)
    re = [[zero] * n for _ in range(n)]
    im = [[zero] * n for _ in range(n)]
    for p in support:
        Ap = A[p]
        for q in support:
            c = xs[p] * xs[q]
            cr, ci = c.re, c.im
            for u in range(n):
                row = Ap[u, q]
                re_u = re[u]
                im_u = im[u]
                for v in range(n):
                    t = row[v]
                    if t:
                        re_u[v] += cr * t
                        im_u[v] += ci * t
    tr_re = zero
    tr_im = zero
    for u in range(n):
        re_u = re[u]
        im_u = im[u]
        for v in range(n):
            a = re_u[v]
            b = im_u[v]
            tr_re += a * a - b * b
            tr_im += 2 * a * b
    return GaussianRational(tr_re, tr_im)


def symmetrized_trace_direct(T: CurvatureTensor, split: BlockSplit,
                             X: ZVector):
    """S(X): sum of Tr(T_{X^perm}^2) over all permutations of the x
    coordinates and of the y coordinates (d1! * d2! terms).

    Guarded at 10^7 permutations; beyond that use the formula path.
    """
    d1, d2 = split.d1, split.d2
    if math.factorial(d1) * math.factorial(d2) > PERMUTATION_GUARD:
        raise CombinatorialGuardError(
            f"d1! * d2! = {math.factorial(d1) * math.factorial(d2)} exceeds the guard")
    if X.split != split:
        raise ValueError("vector split does not match")
    if T.field.is_complex:
        raise ValueError("symmetrized traces are defined over real tensor fields")
    zero = GaussianRational(0)
    total = zero
    coords = [zero] * (d1 + d2)
    for pi in itertools.permutations(range(d1)):
        for i in range(d1):
            coords[pi[i]] = X.x[i]
        for tau in itertools.permutations(range(d2)):
            for a in range(d2):
                coords[d1 + tau[a]] = X.y[a]
            total = total + trace_jacobi_square_complex(T, coords)
    return total


def symmetrized_trace_formula(T: CurvatureTensor, split: BlockSplit,
                              X: ZVector, ledger: FormLedger | None = None):
    """S(X) via the aggregate expansion: evaluates the ten multipliers of X
    against the ledger of (T, split)."""
    if ledger is None:
        ledger = coefficient_forms(T, split)
    c = abc_coefficients(X)
    led = ledger.as_dict()
    pairs = (("a1", "p1"), ("a2", "p2"), ("a3", "p3"),
             ("b1", "q1"), ("b2", "q2"), ("b3", "q3"),
             ("c1", "s1"), ("c2", "s2"), ("c3", "s3"), ("c4", "s4"))
    total = GaussianRational(0)
    for ck, lk in pairs:
        total = total + getattr(c, ck) * led[lk]
    return total


def rhs_identity_value(X: ZVector, H):
    """Value of the symmetrized right-hand side H d1! d2! |X|^4, computed two
    ways and compared:

        H * (d1 A1 + d1(d1-1) A3 + d2 B1 + d2(d2-1) B3 + d1 d2 C1)
        == H * d1! * d2! * (|x|^2 + |y|^2)^2

    where |x|^2 = sigma1(x)^2 - sigma2(x) in the ordered-tuple convention.
    A mismatch raises IdentityViolationError (it would be an implementation
    bug, the equality is an algebraic identity).
    """
    d1, d2 = X.split.d1, X.split.d2
    c = abc_coefficients(X)
    Hq = H if isinstance(H, GaussianRational) else GaussianRational(H)
    via_abc = Hq * (d1 * c.a1 + d1 * (d1 - 1) * c.a3
                    + d2 * c.b1 + d2 * (d2 - 1) * c.b3 + d1 * d2 * c.c1)
    nrm = X.norm_sq()
    via_norm = Hq * (math.factorial(d1) * math.factorial(d2)) * nrm * nrm
    if via_abc != via_norm:
        raise IdentityViolationError(
            f"aggregate identity failed: {via_abc} != {via_norm}")
    return via_abc
