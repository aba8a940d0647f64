"""Exact solver: realize any aggregate coefficient target by a finite
multiset of restricted vectors.

The ten coefficients of a single restricted vector span, as the vector
varies, a full-rank set; summing over a multiset makes every target
reachable.  Over the gaussian rationals, weights are found by solving a
linear system with *rational* unknowns (each complex coordinate split into
real and imaginary parts, 20 real dimensions for d1 >= 2), because a
rational weight t admits an exact realization by repetition and scaling:

    t = p/q  > 0  ->  p*q^3 copies of the vector scaled by 1/q
    t = -p/q < 0  ->  4*p*q^3 copies of the vector scaled by (1+i)/(2q)

(scaling a vector by s multiplies all ten coefficients by s^4, and
((1+i)/(2q))^4 = -1/(4 q^4)).  Weights with irrational fourth roots never
arise.  For d1 = 1 the coordinates A2, A3, C3, C4 vanish identically and
targets outside that subspace are rejected.
"""
from __future__ import annotations

from gmpy2 import mpq

from ..conditions import BlockSplit
from ..fields import GaussianRational
from .symfuncs import CoefficientVector10, ZVector, abc_coefficients

__all__ = ["VectorSet", "solve_vector_set", "UnreachableTargetError",
           "SolverError"]


class SolverError(RuntimeError):
    """The probe pool failed to reach full rank (internal error)."""


class UnreachableTargetError(ValueError):
    """Target lies outside the reachable coefficient subspace (d1 = 1)."""


class VectorSet:
    """Multiset of restricted vectors with its aggregate coefficients.

    ``entries`` is a list of (ZVector, multiplicity) pairs; the aggregate is
    the multiplicity-weighted sum of the per-vector coefficient vectors.
    Multiplicities may be large integers; they are never enumerated.
    """

    __slots__ = ("split", "entries", "aggregate")

    def __init__(self, split: BlockSplit, entries):
        self.split = split
        self.entries = list(entries)
        agg = CoefficientVector10.zero()
        for vec, mult in self.entries:
            if not (isinstance(mult, int) and mult > 0):
                raise ValueError("multiplicities must be positive integers")
            agg = agg + abc_coefficients(vec).scaled(mult)
        self.aggregate = agg

    @property
    def distinct_count(self) -> int:
        return len(self.entries)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def __repr__(self):
        return (f"VectorSet(d1={self.split.d1}, d2={self.split.d2}, "
                f"distinct={self.distinct_count})")


# probe coordinate pairs; complex entries are needed to span the imaginary
# directions of the coefficient space
_PROBE_PAIRS = (
    (1, 0), (1, 1), (1, -1), (2, 1), (1, 2), (3, 1), (1, 3), (2, -1),
    ((0, 1), 0), (1, (0, 1)), ((1, 1), 0), ((1, 1), 1), (2, (0, 1)),
    ((0, 1), 1), ((1, 2), 0), ((2, 1), (0, 1)), (1, (1, 1)), (3, (0, 2)),
    ((1, -1), 1), ((0, 3), 1), ((2, -1), (0, 1)), (1, (2, 1)),
)


def _as_gq(v):
    if isinstance(v, tuple):
        return GaussianRational(v[0], v[1])
    return GaussianRational(v)


def _probe_vectors(split: BlockSplit):
    d1, d2 = split.d1, split.d2
    zeros_x = [GaussianRational(0)] * d1
    zeros_y = [GaussianRational(0)] * d2

    def make(xpair, ypair):
        x = list(zeros_x)
        y = list(zeros_y)
        if xpair is not None:
            x[0] = _as_gq(xpair[0])
            if d1 > 1:
                x[1] = _as_gq(xpair[1])
            elif _as_gq(xpair[1]):
                return None
        if ypair is not None:
            y[0] = _as_gq(ypair[0])
            if d2 > 1:
                y[1] = _as_gq(ypair[1])
            elif _as_gq(ypair[1]):
                return None
        return ZVector(split, x, y)

    for xp in _PROBE_PAIRS:
        v = make(xp, None)
        if v is not None:
            yield v
    for yp in _PROBE_PAIRS:
        v = make(None, yp)
        if v is not None:
            yield v
    for xp in _PROBE_PAIRS:
        for yp in _PROBE_PAIRS:
            v = make(xp, yp)
            if v is not None:
                yield v


def _real_coords(cv: CoefficientVector10):
    out = []
    for v in cv.as_tuple():
        out.append(v.re)
        out.append(v.im)
    return out


def _solve_rational(columns, target):
    """Solve sum_j t_j * columns[j] = target over the rationals.

    Gaussian elimination on the 20 x (k+1) augmented system; returns the
    weight list or None when the target is outside the column span.
    """
    rows = len(target)
    k = len(columns)
    M = [[columns[j][r] for j in range(k)] + [target[r]] for r in range(rows)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, rows) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        pv = M[row][col]
        M[row] = [x / pv for x in M[row]]
        for r in range(rows):
            if r != row and M[r][col] != 0:
                fac = M[r][col]
                M[r] = [a - fac * b for a, b in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == rows:
            break
    for r in range(row, rows):
        if M[r][k] != 0:
            return None
    t = [mpq(0)] * k
    for r, col in enumerate(pivots):
        t[col] = M[r][k]
    return t


def _realize_weight(vec: ZVector, t: mpq):
    """Split weight t into (scaled vector, integer multiplicity) pairs."""
    if t == 0:
        return []
    p = int(abs(t.numerator))
    q = int(t.denominator)
    if t > 0:
        return [(vec.scaled(mpq(1, q)), p * q ** 3)]
    scale = GaussianRational(mpq(1, 2 * q), mpq(1, 2 * q))  # (1+i)/(2q)
    return [(vec.scaled(scale), 4 * p * q ** 3)]


def solve_vector_set(target: CoefficientVector10, split: BlockSplit) -> VectorSet:
    """Construct a vector multiset whose aggregate equals ``target`` exactly.

    Raises UnreachableTargetError when d1 = 1 and the target has a nonzero
    component in a coordinate that vanishes identically there.
    """
    if split.d1 == 1:
        for name in ("a2", "a3", "c3", "c4"):
            if getattr(target, name):
                raise UnreachableTargetError(
                    f"coordinate {name} is identically zero when d1 = 1")

    target_coords = _real_coords(target)

    pool = []
    for vec in _probe_vectors(split):
        pool.append((vec, _real_coords(abc_coefficients(vec))))
        if len(pool) >= 150:
            break

    columns = [col for _, col in pool]
    weights = _solve_rational(columns, target_coords)
    if weights is None:
        raise UnreachableTargetError("target outside the reachable subspace")

    entries = []
    for (vec, _), t in zip(pool, weights):
        entries.extend(_realize_weight(vec, mpq(t)))
    out = VectorSet(split, entries)
    if out.aggregate.as_tuple() != target.as_tuple():
        raise SolverError("aggregate does not reproduce the target (internal bug)")
    return out
