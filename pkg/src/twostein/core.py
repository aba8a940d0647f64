"""Algebraic curvature tensors on an n-dimensional inner product space.

A curvature tensor here is a dense (4,0) array T[i,j,k,l] over one of the
scalar fields, with the usual identities

    T[i,j,k,l] = -T[j,i,k,l] = -T[i,j,l,k] = T[k,l,i,j]
    T[i,j,k,l] + T[j,k,i,l] + T[k,i,j,l] = 0          (first Bianchi)

The constant curvature model fixes all sign conventions:

    T(X,Y,Z,W) = kappa * (<X,Z><Y,W> - <X,W><Y,Z>)

so that the Jacobi operator J_X[u,v] = sum_{p,q} X_p X_q T[p,u,q,v] is
positive semidefinite for kappa > 0 and its trace equals ricci(X,X).
Indices are 0-based. All objects are immutable once constructed.
"""
from __future__ import annotations

import itertools
import json

import numpy as np

from .fields import Field, FieldError, field_by_name, RATIONAL

__all__ = [
    "CurvatureTensor", "SymmetricBilinear", "JacobiOperator",
    "SymmetryViolation", "SymmetryReport", "ParseError", "SymmetryConflictError",
    "make_constant_curvature", "validate_symmetries", "ricci", "jacobi",
    "shift", "unshift", "pair_symmetrize", "bianchi_project",
    "parse_tensor", "emit_tensor", "canonical_entries", "tensor_max_abs",
]

SHIFT_CONSTANT = 2  # curvature shift: cT = T - 2 * constant_curvature(n, 1)


class ParseError(ValueError):
    """Malformed tensor JSON (bad structure, index range, value literal)."""


class SymmetryConflictError(ParseError):
    """Two entries of the same symmetry orbit were given inconsistent values."""


class CurvatureTensor:
    """Dense algebraic curvature tensor. Treat as immutable."""

    __slots__ = ("n", "field", "entries")

    def __init__(self, n: int, field: Field, entries: np.ndarray):
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got {n}")
        if entries.shape != (n,) * 4:
            raise ValueError("entries shape does not match dimension")
        self.n = n
        self.field = field
        self.entries = entries
        try:
            entries.flags.writeable = False
        except ValueError:
            pass

    def __repr__(self):
        return f"CurvatureTensor(n={self.n}, field={self.field.name!r})"

    # -- arithmetic (same field only) --------------------------------------
    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        self._check_compatible(other)
        return CurvatureTensor(self.n, self.field, self.entries + other.entries)

    def __sub__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        self._check_compatible(other)
        return CurvatureTensor(self.n, self.field, self.entries - other.entries)

    def scale(self, c) -> "CurvatureTensor":
        c = self.field.coerce(c)
        return CurvatureTensor(self.n, self.field, self.entries * c)

    def _check_compatible(self, other):
        if self.n != other.n or self.field.name != other.field.name:
            raise ValueError("tensors have mismatched dimension or field")

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        if self.n != other.n or self.field.name != other.field.name:
            return False
        return bool(np.all(self.entries == other.entries))

    __hash__ = None

    def max_abs_difference(self, other: "CurvatureTensor") -> float:
        self._check_compatible(other)
        return tensor_max_abs(self - other)


class SymmetricBilinear:
    """Symmetric bilinear form as an n x n matrix (houses the Ricci tensor)."""

    __slots__ = ("n", "field", "matrix")

    def __init__(self, n: int, field: Field, matrix: np.ndarray):
        self.n = n
        self.field = field
        self.matrix = matrix
        try:
            matrix.flags.writeable = False
        except ValueError:
            pass

    def __call__(self, X, Y):
        X = [self.field.coerce(v) for v in X]
        Y = [self.field.coerce(v) for v in Y]
        acc = self.field.zero()
        for u in range(self.n):
            if not self.field.magnitude_nonzero(X[u]):
                continue
            for v in range(self.n):
                acc = acc + X[u] * self.matrix[u, v] * Y[v]
        return acc

    def trace(self):
        acc = self.field.zero()
        for u in range(self.n):
            acc = acc + self.matrix[u, u]
        return acc


class JacobiOperator:
    """Symmetric operator with matrix M[u,v] = sum_{p,q} X_p X_q T[p,u,q,v]."""

    __slots__ = ("base", "field", "matrix")

    def __init__(self, base: tuple, field: Field, matrix: np.ndarray):
        self.base = base
        self.field = field
        self.matrix = matrix
        try:
            matrix.flags.writeable = False
        except ValueError:
            pass

    @property
    def n(self):
        return len(self.base)

    def trace(self):
        acc = self.field.zero()
        for u in range(self.n):
            acc = acc + self.matrix[u, u]
        return acc

    def trace_of_square(self):
        acc = self.field.zero()
        for u in range(self.n):
            for v in range(self.n):
                acc = acc + self.matrix[u, v] * self.matrix[v, u]
        return acc

    def apply(self, Y):
        Y = [self.field.coerce(v) for v in Y]
        out = []
        for u in range(self.n):
            acc = self.field.zero()
            for v in range(self.n):
                acc = acc + self.matrix[u, v] * Y[v]
            out.append(acc)
        return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def make_constant_curvature(n: int, kappa, field: Field = RATIONAL) -> CurvatureTensor:
    """Constant curvature tensor kappa*(<X,Z><Y,W> - <X,W><Y,Z>)."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    k = field.coerce(kappa)
    ent = field.empty_array((n, n, n, n))
    for i, j in itertools.product(range(n), repeat=2):
        if i == j:
            continue
        ent[i, j, i, j] = k
        ent[i, j, j, i] = -k
    return CurvatureTensor(n, field, ent)


def pair_symmetrize(entries: np.ndarray) -> np.ndarray:
    """Project a raw 4-array onto the pair-symmetry type of curvature tensors.

    Entries must support exact division by 8 (mpq or float, not bare int).
    """
    A = entries
    out = (A - A.transpose(1, 0, 2, 3) - A.transpose(0, 1, 3, 2) + A.transpose(1, 0, 3, 2)
           + A.transpose(2, 3, 0, 1) - A.transpose(3, 2, 0, 1) - A.transpose(2, 3, 1, 0)
           + A.transpose(3, 2, 1, 0))
    return out / 8


def bianchi_project(entries: np.ndarray) -> np.ndarray:
    """Remove the totally antisymmetric part: idempotent projection onto
    tensors satisfying the first Bianchi identity (input must already have
    the pair symmetries)."""
    A = entries
    cyc = A + A.transpose(1, 2, 0, 3) + A.transpose(2, 0, 1, 3)
    return A - cyc / 3


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

class SymmetryViolation:
    __slots__ = ("identity", "indices", "residual")

    def __init__(self, identity, indices, residual):
        self.identity = identity
        self.indices = indices
        self.residual = residual

    def __repr__(self):
        return f"SymmetryViolation({self.identity}, {self.indices}, {self.residual:.3g})"


class SymmetryReport:
    __slots__ = ("violations",)

    def __init__(self, violations):
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def __repr__(self):
        return f"SymmetryReport(ok={self.ok}, violations={len(self.violations)})"


def validate_symmetries(T: CurvatureTensor, tolerance: float | None = None) -> SymmetryReport:
    """Exhaustive scan of the antisymmetries, pair symmetry and first Bianchi
    identity. Empty report iff all hold (exactly, or within tolerance for
    float fields)."""
    f = T.field
    tol = f.default_tolerance if tolerance is None else tolerance
    A = T.entries
    bad = []

    def check(name, idx, value):
        m = f.magnitude(value)
        if (f.is_exact and f.magnitude_nonzero(value)) or (not f.is_exact and m > tol):
            bad.append(SymmetryViolation(name, idx, m))

    for idx in itertools.product(range(T.n), repeat=4):
        i, j, k, l = idx
        check("antisymmetry_first_pair", idx, A[i, j, k, l] + A[j, i, k, l])
        check("antisymmetry_second_pair", idx, A[i, j, k, l] + A[i, j, l, k])
        check("pair_exchange", idx, A[i, j, k, l] - A[k, l, i, j])
        check("first_bianchi", idx, A[i, j, k, l] + A[j, k, i, l] + A[k, i, j, l])
    return SymmetryReport(bad)


# ---------------------------------------------------------------------------
# contractions
# ---------------------------------------------------------------------------

def ricci(T: CurvatureTensor) -> SymmetricBilinear:
    """Ricci tensor rho(u,v) = sum_m T[u,m,v,m]."""
    f = T.field
    mat = f.empty_array((T.n, T.n))
    A = T.entries
    for u in range(T.n):
        for v in range(u, T.n):
            acc = f.zero()
            for m in range(T.n):
                acc = acc + A[u, m, v, m]
            mat[u, v] = acc
            mat[v, u] = acc
    return SymmetricBilinear(T.n, f, mat)


def jacobi(T: CurvatureTensor, X) -> JacobiOperator:
    """Jacobi operator of X.

    The matrix is symmetric, annihilates X, scales quadratically in X, and
    satisfies Tr M = ricci(X, X).
    """
    f = T.field
    Xc = tuple(f.coerce(v) for v in X)
    if len(Xc) != T.n:
        raise ValueError("vector length does not match tensor dimension")
    support = [p for p in range(T.n) if f.magnitude_nonzero(Xc[p])]
    mat = f.empty_array((T.n, T.n))
    A = T.entries
    for u in range(T.n):
        for v in range(u, T.n):
            acc = f.zero()
            for p in support:
                for q in support:
                    acc = acc + Xc[p] * Xc[q] * A[p, u, q, v]
            mat[u, v] = acc
            mat[v, u] = acc
    return JacobiOperator(Xc, f, mat)


def shift(R: CurvatureTensor) -> CurvatureTensor:
    """Subtract twice the unit constant curvature tensor."""
    return R - make_constant_curvature(R.n, SHIFT_CONSTANT, R.field)


def unshift(cR: CurvatureTensor) -> CurvatureTensor:
    """Inverse of :func:`shift`."""
    return cR + make_constant_curvature(cR.n, SHIFT_CONSTANT, cR.field)


def tensor_max_abs(T: CurvatureTensor) -> float:
    f = T.field
    if f.is_exact:
        return max((f.magnitude(v) for v in T.entries.flat), default=0.0)
    return float(np.max(np.abs(T.entries))) if T.entries.size else 0.0


# ---------------------------------------------------------------------------
# orbit-canonical serialization
# ---------------------------------------------------------------------------

def _orbit(idx):
    """All 8 signed images of an index 4-tuple under the pair symmetries."""
    i, j, k, l = idx
    base = [((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1), ((j, i, l, k), 1)]
    out = []
    for (a, b, c, d), s in base:
        out.append(((a, b, c, d), s))
        out.append(((c, d, a, b), s))
    return out


def canonical_index(idx):
    """Canonical representative of the symmetry orbit of ``idx``.

    Returns (rep, sign, forced_zero): rep is the lexicographically smallest
    tuple in the orbit, sign relates T[idx] = sign * T[rep], and forced_zero
    flags orbits the antisymmetries force to vanish (repeated pair slots).
    """
    images = _orbit(idx)
    signs = {}
    for tup, s in images:
        if tup in signs and signs[tup] != s:
            return min(t for t, _ in images), 1, True
        signs[tup] = s
    rep = min(signs)
    return rep, signs[rep], False


def canonical_entries(T: CurvatureTensor):
    """Sorted list of [i,j,k,l,value] over nonzero canonical representatives."""
    f = T.field
    out = []
    seen = set()
    for idx in itertools.product(range(T.n), repeat=4):
        rep, _, forced = canonical_index(idx)
        if rep != idx or forced or rep in seen:
            continue
        seen.add(rep)
        v = T.entries[rep]
        if f.magnitude_nonzero(v):
            out.append([*rep, f.emit_value(v)])
    out.sort(key=lambda e: e[:4])
    return out


def emit_tensor(T: CurvatureTensor) -> str:
    """Serialize to the canonical JSON format (deterministic bytes)."""
    doc = {"dim": T.n, "field": T.field.name, "entries": canonical_entries(T)}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_tensor(text: str) -> CurvatureTensor:
    """Parse tensor JSON, completing a generating set of entries by symmetry.

    The loader rejects malformed documents, out-of-range indices, and
    generating sets that assign inconsistent values to one symmetry orbit
    (antisymmetric partners listed with the wrong sign, for instance).
    The first Bianchi identity is *not* enforced here; run
    :func:`validate_symmetries` to check it.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("tensor JSON must be an object")
    try:
        n = doc["dim"]
        fname = doc["field"]
        raw_entries = doc["entries"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ParseError(f"bad dimension {n!r}")
    try:
        f = field_by_name(fname)
    except FieldError as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(raw_entries, list):
        raise ParseError("entries must be a list")

    assigned = {}
    for entry in raw_entries:
        if not isinstance(entry, list) or len(entry) != 5:
            raise ParseError(f"bad entry {entry!r}; expected [i,j,k,l,value]")
        i, j, k, l, raw_v = entry
        for t in (i, j, k, l):
            if not isinstance(t, int) or isinstance(t, bool) or not (0 <= t < n):
                raise ParseError(f"index out of range in entry {entry!r}")
        try:
            v = f.parse_value(raw_v)
        except FieldError as exc:
            raise ParseError(str(exc)) from exc
        rep, sign, forced = canonical_index((i, j, k, l))
        if forced:
            if not f.is_zero(v):
                raise SymmetryConflictError(
                    f"entry {entry!r} lies in an orbit forced to zero by antisymmetry")
            continue
        canon_v = v if sign == 1 else -v
        if rep in assigned:
            prev = assigned[rep]
            if not f.is_zero(prev - canon_v):
                raise SymmetryConflictError(
                    f"conflicting values for symmetry orbit of {rep}: "
                    f"{f.emit_value(prev)} vs {f.emit_value(canon_v)}")
        else:
            assigned[rep] = canon_v

    ent = f.empty_array((n, n, n, n))
    for idx in itertools.product(range(n), repeat=4):
        rep, sign, forced = canonical_index(idx)
        if forced or rep not in assigned:
            continue
        v = assigned[idx] if idx == rep else assigned[rep]
        ent[idx] = v if sign == 1 else -v
    return CurvatureTensor(n, f, ent)
