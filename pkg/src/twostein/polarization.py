"""Quartic polarization: exact coefficient extraction for X -> Tr(T_X^2).

Tr(T_X^2) is a homogeneous quartic in the components of X.  Its fully
symmetric coefficient tensor F satisfies

    Tr(T_X^2) = sum_{a,b,c,d} F[a,b,c,d] X_a X_b X_c X_d,

and two symmetric 4-linear forms agree iff they agree on the diagonal, so
"for all X" statements about the quartic reduce to finitely many component
equations on F.  For exact fields F is computed in integer arithmetic
(common-denominator scaling) and returned as exact rationals.
"""
from __future__ import annotations

import itertools
import math

import numpy as np
from gmpy2 import mpq

from .core import CurvatureTensor

_PERMS4 = list(itertools.permutations(range(4)))


def integer_scaled(T: CurvatureTensor):
    """(numerator array (object ints), common denominator) for exact tensors."""
    den = 1
    for v in T.entries.flat:
        d = int(v.denominator)
        den = den * d // math.gcd(den, d)
    n = T.n
    out = np.empty((n,) * 4, dtype=object)
    for idx in itertools.product(range(n), repeat=4):
        v = T.entries[idx]
        out[idx] = int(v.numerator) * (den // int(v.denominator))
    return out, den


def quartic_coefficients(T: CurvatureTensor) -> np.ndarray:
    """Fully symmetric coefficient tensor F of the quartic Tr(T_X^2).

    Exact fields give an object array of mpq; float fields a float array.
    """
    n = T.n
    if T.field.is_exact:
        if T.field.is_complex:
            raise ValueError("quartic extraction requires a real tensor field")
        Ti, den = integer_scaled(T)
        E = Ti.transpose(0, 2, 1, 3).reshape(n * n, n * n)
        Et = Ti.transpose(0, 2, 3, 1).reshape(n * n, n * n)
        D = E.dot(Et.T).reshape(n, n, n, n)
        S = np.zeros((n,) * 4, dtype=object)
        for perm in _PERMS4:
            S = S + D.transpose(perm)
        F = np.empty((n,) * 4, dtype=object)
        scale = mpq(1, 24 * den * den)
        for idx in itertools.product(range(n), repeat=4):
            F[idx] = S[idx] * scale
        return F
    A = np.asarray(T.entries)
    E = A.transpose(0, 2, 1, 3).reshape(n * n, n * n)
    Et = A.transpose(0, 2, 3, 1).reshape(n * n, n * n)
    D = (E @ Et.T).reshape(n, n, n, n)
    F = sum(D.transpose(perm) for perm in _PERMS4) / 24.0
    return F


def trace_jacobi_square(T: CurvatureTensor, X) -> object:
    """Tr(T_X^2) evaluated directly (X in the tensor's own field)."""
    from .core import jacobi

    return jacobi(T, X).trace_of_square()
