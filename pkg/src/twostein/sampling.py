"""Seeded sampling helpers: exact orthogonal matrices, orthonormal pairs,
tensor rotations.

Randomness comes from Python's Mersenne Twister (``random.Random``); every
report that depends on sampling records ``{"rng": "mt19937", "seed": ...}``.
Exact orthogonal matrices are built with the Cayley transform
Q = (I - A)^{-1} (I + A) of a skew-symmetric rational A, so columns are
exactly orthonormal rational vectors.
"""
from __future__ import annotations

import itertools
import random

import numpy as np
from gmpy2 import mpq

from .core import CurvatureTensor
from .fields import Field, RATIONAL
from .polarization import integer_scaled

RNG_NAME = "mt19937"


def derived_seed(master: int, index: int) -> int:
    """Independent per-sample seed derived from a master seed."""
    return master * 1_000_003 + index


def rational_skew(n: int, rng: random.Random):
    A = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = mpq(rng.randrange(-3, 4), rng.randrange(1, 4))
            A[i][j] = v
            A[j][i] = -v
    return A


def cayley_orthogonal(n: int, seed: int):
    """Exactly orthogonal rational n x n matrix, Q[i][j] = <e_i, Q e_j>."""
    rng = random.Random(seed)
    A = rational_skew(n, rng)
    # solve (I - A) Q = (I + A) by Gauss-Jordan; I - A is always invertible
    M = [[(mpq(1) if i == j else mpq(0)) - A[i][j] for j in range(n)]
         + [(mpq(1) if i == j else mpq(0)) + A[i][j] for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [[M[i][n + j] for j in range(n)] for i in range(n)]


def block_orthogonal(d1: int, d2: int, seed: int):
    """Block-diagonal orthogonal matrix Q1 (+) Q2 preserving the split."""
    n = d1 + d2
    Q1 = cayley_orthogonal(d1, derived_seed(seed, 1)) if d1 > 1 else [[mpq(1)]]
    Q2 = cayley_orthogonal(d2, derived_seed(seed, 2)) if d2 > 1 else [[mpq(1)]]
    Q = [[mpq(0)] * n for _ in range(n)]
    for i in range(d1):
        for j in range(d1):
            Q[i][j] = Q1[i][j]
    for i in range(d2):
        for j in range(d2):
            Q[d1 + i][d1 + j] = Q2[i][j]
    return Q


def orthonormal_pair(n: int, seed: int, field: Field = RATIONAL):
    """Unit orthogonal pair (X, Y), exact for exact fields."""
    if field.is_exact:
        Q = cayley_orthogonal(n, seed)
        X = [field.coerce(Q[i][0]) for i in range(n)]
        Y = [field.coerce(Q[i][1]) for i in range(n)]
        return X, Y
    rng = random.Random(seed)
    while True:
        X = np.array([rng.gauss(0, 1) for _ in range(n)])
        Y = np.array([rng.gauss(0, 1) for _ in range(n)])
        X = X / np.linalg.norm(X)
        Y = Y - np.dot(X, Y) * X
        ny = np.linalg.norm(Y)
        if ny > 1e-8:
            return list(X), list(Y / ny)


def permutation_matrix(n: int, perm, field: Field = RATIONAL):
    """Matrix with Q e_a = e_{perm[a]} (a coordinate relabeling)."""
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of range(n)")
    one = mpq(1)
    zero = mpq(0)
    return [[one if i == perm[a] else zero for a in range(n)] for i in range(n)]


def rotate_tensor(T: CurvatureTensor, Q) -> CurvatureTensor:
    """Pull back T along the basis change Q: T'(u...) = T(Qu, ...)."""
    n = T.n
    if T.field.is_exact:
        Ti, denT = integer_scaled(T)
        Qnum = np.empty((n, n), dtype=object)
        denQ = 1
        import math as _math
        for row in Q:
            for v in row:
                denQ = denQ * int(v.denominator) // _math.gcd(denQ, int(v.denominator))
        for i in range(n):
            for j in range(n):
                v = mpq(Q[i][j])
                Qnum[i, j] = int(v.numerator) * (denQ // int(v.denominator))
        cur = Ti
        for axis in range(4):
            moved = np.moveaxis(cur, axis, 0).reshape(n, -1)
            rotated = Qnum.T.dot(moved)
            cur = np.moveaxis(rotated.reshape((n,) * 4), 0, axis)
        scale = mpq(1, denT * denQ ** 4)
        ent = np.empty((n,) * 4, dtype=object)
        for idx in itertools.product(range(n), repeat=4):
            ent[idx] = cur[idx] * scale
        return CurvatureTensor(n, T.field, ent)
    Qa = np.array([[float(v) for v in row] for row in Q], dtype=T.entries.dtype)
    ent = np.einsum("pqrs,pa,qb,rc,sd->abcd", T.entries, Qa, Qa, Qa, Qa)
    return CurvatureTensor(n, T.field, ent)
