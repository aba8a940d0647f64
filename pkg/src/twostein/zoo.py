"""Ground-truth curvature tensors and seeded random generators.

Every generator returns a tensor passing validate_symmetries with an empty
report. Exact-field generators produce rational components so the condition
checkers can certify with zero residuals.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as _dcfield

import numpy as np
from gmpy2 import mpq

from .conditions import BlockSplit, is_forbidden_pattern
from .core import (CurvatureTensor, bianchi_project, make_constant_curvature,
                   pair_symmetrize)
from .fields import Field, RATIONAL, field_by_name
from .sampling import RNG_NAME

__all__ = [
    "ZooSpec", "complex_space_form", "quaternionic_space_form",
    "su3_so3_tensor", "product_sphere_tensor", "random_tensor",
    "random_block_tensor", "generate",
]


def _kd(a, b):
    return 1 if a == b else 0


def complex_space_form(m: int, c, field: Field = RATIONAL) -> CurvatureTensor:
    """Holomorphic space form of complex dimension m (real dimension 2m):

        T(X,Y,Z,W) = (c/4) (<X,Z><Y,W> - <X,W><Y,Z>
                            + <JX,Z><JY,W> - <JX,W><JY,Z> + 2<JX,Y><JZ,W>)

    with J the standard complex structure J e_{2k} = e_{2k+1}.  For m = 1
    the J-terms collapse and the result has constant curvature c.
    """
    if m < 1:
        raise ValueError("complex dimension must be >= 1")
    n = 2 * m
    cq = field.coerce(c)
    quarter = cq / 4
    # J as an index map with sign: J e_t = js[t] * e_{jm[t]}
    jm = [t + 1 if t % 2 == 0 else t - 1 for t in range(n)]
    js = [1 if t % 2 == 0 else -1 for t in range(n)]

    ent = field.empty_array((n,) * 4)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        v = _kd(i, k) * _kd(j, l) - _kd(i, l) * _kd(j, k)
        v += js[i] * js[j] * (_kd(jm[i], k) * _kd(jm[j], l) - _kd(jm[i], l) * _kd(jm[j], k))
        v += 2 * js[i] * js[k] * _kd(jm[i], j) * _kd(jm[k], l)
        if v:
            ent[i, j, k, l] = quarter * v
    return CurvatureTensor(n, field, ent)


def quaternionic_space_form(q: int, c, field: Field = RATIONAL) -> CurvatureTensor:
    """Quaternionic space form of quaternionic dimension q (n = 4q), built
    from the three anticommuting structures given by left multiplication by
    i, j, k on H^q."""
    if q < 1:
        raise ValueError("quaternionic dimension must be >= 1")
    n = 4 * q
    cq = field.coerce(c)
    quarter = cq / 4

    # index maps and signs for the three structures on each quaternionic block
    # basis order per block: 1, i, j, k
    perms = {
        "i": ([1, 0, 3, 2], [1, -1, 1, -1]),
        "j": ([2, 3, 0, 1], [1, -1, -1, 1]),
        "k": ([3, 2, 1, 0], [1, 1, -1, -1]),
    }
    structures = []
    for key in ("i", "j", "k"):
        pm, sg = perms[key]
        jm = [4 * (t // 4) + pm[t % 4] for t in range(n)]
        js = [sg[t % 4] for t in range(n)]
        structures.append((jm, js))

    ent = field.empty_array((n,) * 4)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        v = _kd(i, k) * _kd(j, l) - _kd(i, l) * _kd(j, k)
        for jm, js in structures:
            v += js[i] * js[j] * (_kd(jm[i], k) * _kd(jm[j], l) - _kd(jm[i], l) * _kd(jm[j], k))
            v += 2 * js[i] * js[k] * _kd(jm[i], j) * _kd(jm[k], l)
        if v:
            ent[i, j, k, l] = quarter * v
    return CurvatureTensor(n, field, ent)


# The tangent model for the rank-two symmetric space on traceless symmetric
# 3x3 matrices, inner product <X,Y> = 6 tr(XY). The five matrices below are
# an exactly orthonormal *rational* basis for that inner product (a plain
# normalization of the diagonal/off-diagonal units would need sqrt(2) and
# sqrt(6) factors and would make curvature components irrational):
#
#   u1 = (S12 + S13 + S23) / 6
#   u2 = diag(1, 1, -2) / 6
#   u3 = (H1 + S12 - S13) / 6          H1 = diag(1, -1, 0)
#   u4 = (-H1 + S12 - S23) / 6         Sab = E_ab + E_ba
#   u5 = (H1 + S13 - S23) / 6
_SU3_RAW = {
    "H1": ((1, 0, 0), (0, -1, 0), (0, 0, 0)),
    "H2": ((1, 0, 0), (0, 1, 0), (0, 0, -2)),
    "S12": ((0, 1, 0), (1, 0, 0), (0, 0, 0)),
    "S13": ((0, 0, 1), (0, 0, 0), (1, 0, 0)),
    "S23": ((0, 0, 0), (0, 0, 1), (0, 1, 0)),
}
_SU3_BASIS_COEFFS = (
    {"S12": (1, 6), "S13": (1, 6), "S23": (1, 6)},
    {"H2": (1, 6)},
    {"H1": (1, 6), "S12": (1, 6), "S13": (-1, 6)},
    {"H1": (-1, 6), "S12": (1, 6), "S23": (-1, 6)},
    {"H1": (1, 6), "S13": (1, 6), "S23": (-1, 6)},
)


def _su3_basis():
    basis = []
    for coeffs in _SU3_BASIS_COEFFS:
        M = [[mpq(0)] * 3 for _ in range(3)]
        for name, (num, den) in coeffs.items():
            c = mpq(num, den)
            raw = _SU3_RAW[name]
            for r in range(3):
                for s in range(3):
                    M[r][s] += c * raw[r][s]
        basis.append(M)
    return basis


def _mat_mul(A, B):
    return [[sum(A[r][t] * B[t][s] for t in range(3)) for s in range(3)] for r in range(3)]


def _mat_bracket(A, B):
    AB = _mat_mul(A, B)
    BA = _mat_mul(B, A)
    return [[AB[r][s] - BA[r][s] for s in range(3)] for r in range(3)]


def _mat_trace_prod(A, B):
    return sum(A[r][s] * B[s][r] for r in range(3) for s in range(3))


def su3_so3_tensor(scale=1, field: Field = RATIONAL) -> CurvatureTensor:
    """Curvature tensor of the five-dimensional rank-two symmetric space
    modeled on traceless symmetric 3x3 matrices.

    The metric is <X,Y> = scale * tr(XY) and the curvature operator is
    T(X,Y)Z = -[[X,Y],Z] (matrix commutators), paired as
    T(X,Y,Z,W) = <T(X,Y)Z, W>.  Components are computed in the rational
    orthonormal basis documented above (exact for scale = 6) and rescaled
    by 6/scale, the exact scaling law of the components under a change of
    metric scale.  The result is Einstein with positive Einstein constant
    and is not of constant curvature.
    """
    if field.is_complex:
        raise ValueError("su3_so3_tensor is defined over real fields")
    sc = field.coerce(scale)
    if not sc > 0:
        raise ValueError("scale must be positive")
    basis = _su3_basis()
    n = 5
    ent = field.empty_array((n,) * 4)
    base_factor = mpq(-6)  # <., .> = 6 tr at the reference scale
    for p, q, r, s in itertools.product(range(n), repeat=4):
        val = base_factor * _mat_trace_prod(
            _mat_bracket(_mat_bracket(basis[p], basis[q]), basis[r]), basis[s])
        if val != 0:
            ent[p, q, r, s] = field.coerce(6 * val) / sc
    return CurvatureTensor(n, field, ent)


def product_sphere_tensor(p: int, q: int, kappa1, kappa2,
                          field: Field = RATIONAL) -> CurvatureTensor:
    """Block-diagonal tensor: constant curvature kappa1 on the first p
    coordinates, kappa2 on the remaining q; all mixed components vanish.
    Einstein iff kappa1*(p-1) == kappa2*(q-1)."""
    if p < 2 or q < 2:
        raise ValueError("both factors must have dimension >= 2")
    n = p + q
    k1 = field.coerce(kappa1)
    k2 = field.coerce(kappa2)
    ent = field.empty_array((n,) * 4)
    for block, kk in ((range(p), k1), (range(p, n), k2)):
        for i, j in itertools.product(block, repeat=2):
            if i == j:
                continue
            ent[i, j, i, j] = kk
            ent[i, j, j, i] = -kk
    return CurvatureTensor(n, field, ent)


def _random_raw(n: int, seed: int, field: Field) -> np.ndarray:
    rng = random.Random(seed)
    ent = field.empty_array((n,) * 4)
    for idx in itertools.product(range(n), repeat=4):
        ent[idx] = field.coerce(rng.randrange(-9, 10))
    return ent


def random_tensor(n: int, seed: int, field: Field = RATIONAL) -> CurvatureTensor:
    """Seeded random curvature tensor: a raw integer 4-array projected onto
    the pair symmetries and then onto the Bianchi-closed subspace. The
    same seed always gives the same tensor."""
    if n < 2:
        raise ValueError("dimension must be >= 2")
    ent = bianchi_project(pair_symmetrize(_random_raw(n, seed, field)))
    return CurvatureTensor(n, field, ent)


def random_block_tensor(d1: int, d2: int, seed: int,
                        field: Field = RATIONAL) -> CurvatureTensor:
    """Seeded random curvature tensor satisfying the block-compatibility
    conditions of the split (d1, d2).

    The forbidden component classes are zeroed and the surviving mixed
    class is symmetrized in its two W2 slots; together those keep the
    first Bianchi identity intact, which the generator re-verifies.
    """
    split = BlockSplit(d1, d2)
    n = split.n
    base = random_tensor(n, seed, field)
    T = base.entries

    m = {}
    for i in split.w1:
        for j in split.w1:
            for a in split.w2:
                for b in split.w2:
                    m[i, j, a, b] = (T[i, a, j, b] + T[i, b, j, a]) / 2

    ent = field.empty_array((n,) * 4)
    for idx in itertools.product(range(n), repeat=4):
        if is_forbidden_pattern(idx, split):
            continue
        blocks = tuple(split.block_of(t) for t in idx)
        c1 = blocks.count(0)
        if c1 in (0, 4):
            ent[idx] = T[idx]
            continue
        w1_slots = tuple(t for t in range(4) if blocks[t] == 0)
        p, q, r, s = idx
        if w1_slots == (0, 2):
            ent[idx] = m[p, r, q, s]
        elif w1_slots == (0, 3):
            ent[idx] = -m[p, s, q, r]
        elif w1_slots == (1, 2):
            ent[idx] = -m[q, r, p, s]
        else:  # (1, 3)
            ent[idx] = m[q, s, p, r]
    out = CurvatureTensor(n, field, ent)

    from .core import validate_symmetries
    report = validate_symmetries(out)
    if not report.ok:
        raise AssertionError(f"block generator produced an invalid tensor: {report.violations[:3]}")
    return out


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZooSpec:
    """Serializable description of a zoo tensor."""

    kind: str
    params: dict = _dcfield(default_factory=dict)
    seed: int = 0

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "params": self.params,
                           "seed": self.seed, "rng": RNG_NAME},
                          sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ZooSpec":
        doc = json.loads(text)
        return cls(kind=doc["kind"], params=doc.get("params", {}),
                   seed=doc.get("seed", 0))


_GENERATORS = {
    "constant": lambda p, seed, f: make_constant_curvature(int(p["dim"]), p.get("kappa", 1), f),
    "complex_space_form": lambda p, seed, f: complex_space_form(int(p["m"]), p.get("c", 4), f),
    "quaternionic_space_form": lambda p, seed, f: quaternionic_space_form(int(p["q"]), p.get("c", 4), f),
    "su3_so3": lambda p, seed, f: su3_so3_tensor(p.get("scale", 1), f),
    "product_spheres": lambda p, seed, f: product_sphere_tensor(
        int(p["p"]), int(p["q"]), p.get("kappa1", 1), p.get("kappa2", 1), f),
    "random": lambda p, seed, f: random_tensor(int(p["dim"]), seed, f),
    "random_block": lambda p, seed, f: random_block_tensor(
        int(p["d1"]), int(p["d2"]), seed, f),
}


def generate(spec: ZooSpec, field: Field | str = RATIONAL) -> CurvatureTensor:
    """Build the tensor described by a :class:`ZooSpec`."""
    if isinstance(field, str):
        field = field_by_name(field)
    try:
        gen = _GENERATORS[spec.kind]
    except KeyError:
        raise ValueError(f"unknown zoo kind {spec.kind!r}; expected one of {sorted(_GENERATORS)}")
    return gen(spec.params, spec.seed, field)
