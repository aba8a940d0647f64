"""Pointwise condition checkers: Einstein, two-stein, the harmonic trace
condition for unit orthogonal pairs, block-compatibility of an orthogonal
splitting, and the equivalence between the trace condition for T and the
quartic trace proportionality for the shifted tensor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from gmpy2 import mpq

from .core import (CurvatureTensor, jacobi, make_constant_curvature, ricci,
                   shift, tensor_max_abs)
from .fields import Field
from .polarization import quartic_coefficients
from .sampling import RNG_NAME, derived_seed, orthonormal_pair

__all__ = [
    "BlockSplit", "SteinCertificate", "PreconditionError",
    "einstein_deficit", "two_stein_certificate", "hc2_residual",
    "shift_equivalence_check", "trace_derivative_identity",
    "block_condition_residual", "block_condition_report",
]


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


@dataclass(frozen=True)
class BlockSplit:
    """Orthogonal splitting of coordinates: W1 = {0..d1-1}, W2 = {d1..n-1}."""

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("both blocks must be nonempty")

    @property
    def n(self) -> int:
        return self.d1 + self.d2

    @property
    def w1(self) -> range:
        return range(self.d1)

    @property
    def w2(self) -> range:
        return range(self.d1, self.n)

    def is_normalized(self) -> bool:
        return self.d1 <= self.d2

    def block_of(self, index: int) -> int:
        return 0 if index < self.d1 else 1


@dataclass(frozen=True)
class SteinCertificate:
    """Verdict of the Einstein / two-stein polarization check.

    f1, f2 are the diagonal-average proportionality constants for Tr J_X
    and Tr(J_X^2); the residuals are the maximum polarization defects over
    all index tuples (exactly zero iff proportionality holds for every X).
    When a residual is nonzero the certificate is non-certifying and carries
    a least-squares fit as a diagnostic.
    """

    f1: object
    f2: object
    residual1: float
    residual2: float
    verdict: str              # "two_stein" | "einstein" | "neither"
    certified: bool
    f1_fit: object = None
    f2_fit: object = None

    def to_report(self, tolerance):
        return {
            "check": "two_stein",
            "verdict": self.verdict,
            "residuals": {"residual1": self.residual1, "residual2": self.residual2},
            "f1": str(self.f1),
            "f2": str(self.f2),
            "tolerance": tolerance,
        }


def einstein_deficit(T: CurvatureTensor):
    """(lambda, deficit): lambda = tr(ricci)/n, deficit = max |ricci - lambda*I|."""
    f = T.field
    rho = ricci(T)
    lam = rho.trace() / T.n
    deficit = 0.0
    for u in range(T.n):
        for v in range(T.n):
            d = rho.matrix[u, v] - (lam if u == v else f.zero())
            m = f.magnitude(d)
            if m > deficit:
                deficit = m
    return lam, deficit


def _kron3(a, b, c, d):
    return ((1 if a == b else 0) * (1 if c == d else 0)
            + (1 if a == c else 0) * (1 if b == d else 0)
            + (1 if a == d else 0) * (1 if b == c else 0))


def two_stein_certificate(T: CurvatureTensor, tolerance: float | None = None) -> SteinCertificate:
    """Full polarization check of the two trace proportionalities.

    Degree 2: ricci = f1 * identity (Einstein).  Degree 4: the symmetric
    coefficient tensor of Tr(J_X^2) equals f2 times the polarization of
    |X|^4.  Residuals are maximum component defects, so they vanish iff the
    conditions hold for every X.
    """
    f = T.field
    if f.is_complex:
        raise PreconditionError("two_stein_certificate requires a real field")
    tol = f.default_tolerance if tolerance is None else tolerance

    rho = ricci(T)
    f1 = rho.trace() / T.n
    residual1 = 0.0
    exact1_ok = True
    for u in range(T.n):
        for v in range(T.n):
            d = rho.matrix[u, v] - (f1 if u == v else f.zero())
            residual1 = max(residual1, f.magnitude(d))
            if f.is_exact and f.magnitude_nonzero(d):
                exact1_ok = False

    F = quartic_coefficients(T)
    n = T.n
    diag = [F[a, a, a, a] for a in range(n)]
    f2 = sum(diag[1:], diag[0]) / n
    residual2 = 0.0
    exact2_ok = True
    for idx in itertools.product(range(n), repeat=4):
        g3 = _kron3(*idx)
        defect = 3 * F[idx] - f2 * g3
        m = f.magnitude(defect)
        if m > residual2:
            residual2 = m
        if f.is_exact and f.magnitude_nonzero(defect):
            exact2_ok = False

    if f.is_exact:
        ok1 = exact1_ok
        ok2 = exact2_ok
    else:
        ok1 = residual1 <= tol
        ok2 = residual2 <= tol

    if ok1 and ok2:
        verdict = "two_stein"
    elif ok1:
        verdict = "einstein"
    else:
        verdict = "neither"

    f1_fit = f2_fit = None
    if not (ok1 and ok2):
        # least-squares fits over the polarization bases, diagnostic only
        num = f.zero()
        den = 0
        for idx in itertools.product(range(n), repeat=4):
            g3 = _kron3(*idx)
            if g3:
                num = num + 3 * F[idx] * g3
                den += g3 * g3
        f2_fit = num / den
        f1_fit = f1  # tr/n is already the least-squares diagonal fit
    return SteinCertificate(f1, f2, residual1, residual2, verdict,
                            certified=(ok1 and ok2), f1_fit=f1_fit, f2_fit=f2_fit)


def _mixed_jacobi_rows(T, X, Y):
    """For each m: vectors V_m[w] = sum X_p X_q T[p,m,q,w] and
    W_m[w] = sum X_p Y_q T[p,m,q,w]."""
    f = T.field
    n = T.n
    A = T.entries
    supX = [p for p in range(n) if f.magnitude_nonzero(X[p])]
    supY = [p for p in range(n) if f.magnitude_nonzero(Y[p])]
    for m in range(n):
        V = []
        W = []
        for w in range(n):
            av = f.zero()
            aw = f.zero()
            for p in supX:
                row = A[p, m]
                for q in supX:
                    av = av + X[p] * X[q] * row[q, w]
                for q in supY:
                    aw = aw + X[p] * Y[q] * row[q, w]
            V.append(av)
            W.append(aw)
        yield V, W


def hc2_residual(R: CurvatureTensor, X, Y, tolerance: float | None = None):
    """Residual of the trace condition for unit orthogonal fields:

        sum_m <R(X, e_m)X, R(X, e_m)Y>  -  2 * ricci(X, Y).

    Inputs must satisfy |X| = 1 and <X, Y> = 0 (exactly for exact fields,
    within tolerance otherwise); the preconditions are enforced, not fixed
    by normalization.
    """
    f = R.field
    tol = f.default_tolerance if tolerance is None else tolerance
    Xc = [f.coerce(v) for v in X]
    Yc = [f.coerce(v) for v in Y]
    if len(Xc) != R.n or len(Yc) != R.n:
        raise PreconditionError("vector length mismatch")
    nrm = sum((x * x for x in Xc), f.zero())
    ip = sum((x * y for x, y in zip(Xc, Yc)), f.zero())
    if not f.is_zero(nrm - f.one(), tol):
        raise PreconditionError(f"X must be a unit vector, |X|^2 = {nrm}")
    if not f.is_zero(ip, tol):
        raise PreconditionError(f"X and Y must be orthogonal, <X,Y> = {ip}")

    total = f.zero()
    for V, W in _mixed_jacobi_rows(R, Xc, Yc):
        for w in range(R.n):
            total = total + V[w] * W[w]
    rho = ricci(R)
    return total - 2 * rho(Xc, Yc)


def shift_equivalence_check(R: CurvatureTensor, samples: int = 50,
                            seed: int = 0, tolerance: float | None = None) -> dict:
    """Check, on seeded unit orthogonal pairs, the pointwise identity

        sum_m <cT(X,e_m)X, cT(X,e_m)Y> =
        sum_m <T(X,e_m)X, T(X,e_m)Y> - 2*ricci(X,Y),

    where cT is the shifted tensor, and report whether the trace-condition
    residuals of T and the quartic proportionality residual of cT vanish
    together. The identity itself holds for every curvature tensor; it is
    asserted exactly on exact fields.
    """
    f = R.field
    if f.is_complex:
        raise PreconditionError("shift_equivalence_check requires a real field")
    tol = f.default_tolerance if tolerance is None else tolerance
    cR = shift(R)
    rho = ricci(R)

    identity_max = 0.0
    hc2_max = 0.0
    for s in range(samples):
        X, Y = orthonormal_pair(R.n, derived_seed(seed, s), f)
        lhs = f.zero()
        rhs = f.zero()
        for V, W in _mixed_jacobi_rows(cR, X, Y):
            for w in range(R.n):
                lhs = lhs + V[w] * W[w]
        for V, W in _mixed_jacobi_rows(R, X, Y):
            for w in range(R.n):
                rhs = rhs + V[w] * W[w]
        two_rho = 2 * rho(X, Y)
        identity_max = max(identity_max, f.magnitude(lhs - (rhs - two_rho)))
        hc2_max = max(hc2_max, f.magnitude(rhs - two_rho))

    cert = two_stein_certificate(cR, tolerance=tol)
    hc2_vanishes = hc2_max == 0.0 if f.is_exact else hc2_max <= tol
    quartic_vanishes = cert.residual2 == 0.0 if f.is_exact else cert.residual2 <= tol
    return {
        "check": "shift_equiv",
        "verdict": "equivalent" if hc2_vanishes == quartic_vanishes else "inconsistent",
        "residuals": {
            "identity_max": identity_max,
            "hc2_max": hc2_max,
            "shifted_residual2": cert.residual2,
        },
        "H": str(cert.f2),
        "hc2_vanishes": hc2_vanishes,
        "shifted_trace_proportional": quartic_vanishes,
        "samples": samples,
        "seed": seed,
        "rng": RNG_NAME,
        "tolerance": tol,
    }


def trace_derivative_identity(cR: CurvatureTensor, X, Y, h: float = 1e-4):
    """Directional derivative of X -> Tr(cT_X^2) in direction Y, two ways.

    Returns (symbolic, finite_difference): the symbolic value is
    4 * sum_m <cT(X,e_m)X, cT(X,e_m)Y> in the tensor's own field; the
    second entry is a float central difference with step h.  For Y = X the
    symbolic value reduces to 4*Tr(cT_X^2) (Euler's identity for a
    degree-4 homogeneous polynomial).
    """
    f = cR.field
    Xc = [f.coerce(v) for v in X]
    Yc = [f.coerce(v) for v in Y]
    if all(not f.magnitude_nonzero(v) for v in Xc):
        raise PreconditionError("X must be nonzero")
    sym = f.zero()
    for V, W in _mixed_jacobi_rows(cR, Xc, Yc):
        for w in range(cR.n):
            sym = sym + V[w] * W[w]
    sym = 4 * sym

    Xf = _to_floats(f, Xc)
    Yf = _to_floats(f, Yc)
    Tf = _float_entries(cR)

    def q(vec):
        return _float_trace_jacobi_sq(Tf, vec)

    plus = q([x + h * y for x, y in zip(Xf, Yf)])
    minus = q([x - h * y for x, y in zip(Xf, Yf)])
    fd = (plus - minus) / (2 * h)
    return sym, fd


def _to_floats(field: Field, vec):
    out = []
    for v in vec:
        if hasattr(v, "re"):
            out.append(float(v.re))
        else:
            out.append(float(v))
    return out


def _float_entries(T: CurvatureTensor):
    import numpy as np

    if T.field.is_exact:
        n = T.n
        out = np.zeros((n,) * 4)
        for idx in itertools.product(range(n), repeat=4):
            out[idx] = float(T.entries[idx])
        return out
    return np.asarray(T.entries, dtype=float)


def _float_trace_jacobi_sq(A, X):
    import numpy as np

    Xv = np.asarray(X, dtype=float)
    M = np.einsum("p,q,puqv->uv", Xv, Xv, A)
    return float(np.sum(M * M.T))


# ---------------------------------------------------------------------------
# block-compatibility conditions
# ---------------------------------------------------------------------------

def is_forbidden_pattern(idx, split: BlockSplit) -> bool:
    """Component classes annihilated by T(W1,W1)W2 = T(W2,W2)W1 = 0:
    an odd number of W1 indices, or both indices of an antisymmetric pair
    in the same block while the other pair sits in the other block."""
    b = tuple(split.block_of(t) for t in idx)
    c = b.count(0)
    if c in (1, 3):
        return True
    return c == 2 and b[0] == b[1]


def block_condition_residual(T: CurvatureTensor, split: BlockSplit,
                             tolerance: float | None = None) -> float:
    """Max |T| over the forbidden component classes of the split; zero iff
    the splitting is block-compatible."""
    if split.n != T.n:
        raise PreconditionError("split does not match tensor dimension")
    f = T.field
    worst = 0.0
    for idx in itertools.product(range(T.n), repeat=4):
        if is_forbidden_pattern(idx, split):
            worst = max(worst, f.magnitude(T.entries[idx]))
    return worst


def block_condition_report(T: CurvatureTensor, split: BlockSplit,
                           tolerance: float | None = None) -> dict:
    """Residual plus the induced mixed-pair symmetry T[i,a,j,b] == T[i,b,j,a]
    (a consequence of the first Bianchi identity once the residual vanishes)."""
    f = T.field
    tol = f.default_tolerance if tolerance is None else tolerance
    residual = block_condition_residual(T, split, tolerance)
    mixed_sym = 0.0
    for i in split.w1:
        for j in split.w1:
            for a in split.w2:
                for b in split.w2:
                    d = T.entries[i, a, j, b] - T.entries[i, b, j, a]
                    mixed_sym = max(mixed_sym, f.magnitude(d))
    ok = residual == 0.0 if f.is_exact else residual <= tol
    sym_ok = mixed_sym == 0.0 if f.is_exact else mixed_sym <= tol
    return {
        "check": "block",
        "verdict": "compatible" if ok else "incompatible",
        "residuals": {"block": residual, "mixed_pair_symmetry": mixed_sym},
        "split": [split.d1, split.d2],
        "mixed_pair_symmetric": sym_ok,
        "tolerance": tol,
    }
