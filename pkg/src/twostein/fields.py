"""Scalar backends for tensor components.

Four fields are supported:

* ``rational``          -- exact rationals (gmpy2.mpq)
* ``gaussian_rational`` -- exact a + b*i with rational a, b
* ``f64``               -- double precision reals
* ``c64``               -- double precision complex

Exact fields compare by equality; float fields carry a default absolute
tolerance used by every residual check. Values serialize to JSON as
decimal strings ("3/2", "1/2+1/3i") for exact fields and as numbers
(or "a+bi" strings for c64) otherwise.
"""
from __future__ import annotations

import math
import re as _re
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

DEFAULT_TOLERANCE = 1e-10


class FieldError(ValueError):
    """Raised for malformed scalar literals or field mismatches."""


class GaussianRational:
    """Exact complex number a + b*i with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            assert im == 0
            self.re, self.im = re.re, re.im
            return
        self.re = mpq(re)
        self.im = mpq(im)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure -------------------------------------------------------
    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        other = _as_gq(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gaussian(self.re, self.im)


def _as_gq(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)) or type(v).__name__ == "mpq":
        return GaussianRational(v)
    return NotImplemented


GQ_I = GaussianRational(0, 1)


def format_gaussian(re, im) -> str:
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}i"
    if re == 0:
        return imag
    sign = "+" if not imag.startswith("-") else ""
    return f"{re}{sign}{imag}"


_IMAG_SPLIT = _re.compile(r"^(?P<real>[^i]*?)(?P<imag>[+-]?[^+-]*?)i$")


def parse_rational(text) -> mpq:
    """Parse "3/2", "-7", "0.25" (exact decimal) or an int into mpq."""
    if isinstance(text, bool):
        raise FieldError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return mpq(text)
    if type(text).__name__ == "mpq":
        return mpq(text)
    if isinstance(text, Fraction):
        return mpq(text.numerator, text.denominator)
    if not isinstance(text, str):
        raise FieldError(f"not a rational literal: {text!r}")
    s = text.strip()
    if s.startswith("+"):
        s = s[1:]
    try:
        if "." in s:
            f = Fraction(s)
            return mpq(f.numerator, f.denominator)
        return mpq(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldError(f"bad rational literal {text!r}") from exc


def parse_gaussian(text) -> GaussianRational:
    """Parse "1/2+1/3i", "-i", "2i", "3" (and ints) into a GaussianRational."""
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, (int, Fraction)) or type(text).__name__ == "mpq":
        return GaussianRational(parse_rational(text))
    if not isinstance(text, str):
        raise FieldError(f"not a gaussian rational literal: {text!r}")
    s = text.strip().replace(" ", "")
    if not s:
        raise FieldError("empty scalar literal")
    if "i" not in s:
        return GaussianRational(parse_rational(s))
    m = _IMAG_SPLIT.match(s)
    if not m:
        raise FieldError(f"bad gaussian rational literal {text!r}")
    real_tok = m.group("real")
    imag_tok = m.group("imag")
    if real_tok in ("+", "-"):
        # e.g. "-1/2i" split as real="-", imag="1/2": fold back
        imag_tok = real_tok + imag_tok
        real_tok = ""
    re_part = parse_rational(real_tok) if real_tok else mpq(0)
    if imag_tok in ("", "+"):
        im_part = mpq(1)
    elif imag_tok == "-":
        im_part = mpq(-1)
    else:
        im_part = parse_rational(imag_tok)
    return GaussianRational(re_part, im_part)


def _parse_complex_float(text) -> complex:
    if isinstance(text, complex):
        return text
    if isinstance(text, (int, float)):
        return complex(text)
    if not isinstance(text, str):
        raise FieldError(f"not a complex literal: {text!r}")
    s = text.strip().replace(" ", "")
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise FieldError(f"bad complex literal {text!r}") from exc


class Field:
    """One scalar backend: name, exactness, dtype and (de)serialization."""

    def __init__(self, name, is_exact, is_complex, dtype):
        self.name = name
        self.is_exact = is_exact
        self.is_complex = is_complex
        self.dtype = dtype
        self.default_tolerance = 0.0 if is_exact else DEFAULT_TOLERANCE

    def __repr__(self):
        return f"Field({self.name!r})"

    # -- scalars ----------------------------------------------------------
    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, v):
        if self.name == "rational":
            if isinstance(v, float):
                raise FieldError("float value in exact rational field")
            if isinstance(v, GaussianRational):
                if v.im != 0:
                    raise FieldError("complex value in rational field")
                return v.re
            return parse_rational(v)
        if self.name == "gaussian_rational":
            if isinstance(v, (float, complex)):
                raise FieldError("float value in exact gaussian field")
            return parse_gaussian(v)
        if self.name == "f64":
            if isinstance(v, complex):
                if v.imag != 0:
                    raise FieldError("complex value in real f64 field")
                return float(v.real)
            if isinstance(v, GaussianRational):
                if v.im != 0:
                    raise FieldError("complex value in real f64 field")
                return float(v.re)
            if isinstance(v, str):
                return float(parse_rational(v))
            return float(v)
        # c64
        if isinstance(v, GaussianRational):
            return complex(v)
        if isinstance(v, str):
            return _parse_complex_float(v)
        return complex(v)

    def parse_value(self, v):
        """Parse a JSON entry value (string or number) into a scalar."""
        if self.is_exact and isinstance(v, float):
            raise FieldError(
                f"field {self.name!r} requires exact string values, got {v!r}")
        return self.coerce(v)

    def emit_value(self, v):
        """Serialize a scalar to its JSON representation."""
        if self.name == "rational":
            return str(v)
        if self.name == "gaussian_rational":
            return str(v)
        if self.name == "f64":
            return float(v)
        c = complex(v)
        if c.imag == 0:
            return c.real
        return f"{c.real!r}+{c.imag!r}i" if c.imag >= 0 else f"{c.real!r}{c.imag!r}i"

    # -- predicates and magnitudes ----------------------------------------
    def is_zero(self, v, tolerance=None):
        if self.is_exact:
            return not self.magnitude_nonzero(v)
        tol = self.default_tolerance if tolerance is None else tolerance
        return self.magnitude(v) <= tol

    def magnitude_nonzero(self, v):
        if isinstance(v, GaussianRational):
            return bool(v)
        return v != 0

    def magnitude(self, v) -> float:
        """|v| as a float, for reports."""
        if isinstance(v, GaussianRational):
            return abs(v)
        if isinstance(v, complex):
            return abs(v)
        return abs(float(v))

    def conjugate(self, v):
        if isinstance(v, GaussianRational):
            return v.conjugate()
        if isinstance(v, complex):
            return v.conjugate()
        return v

    def empty_array(self, shape):
        if self.is_exact:
            arr = np.empty(shape, dtype=object)
            arr[...] = self.zero()
            return arr
        return np.zeros(shape, dtype=self.dtype)


RATIONAL = Field("rational", True, False, object)
GAUSSIAN_RATIONAL = Field("gaussian_rational", True, True, object)
F64 = Field("f64", False, False, np.float64)
C64 = Field("c64", False, True, np.complex128)

FIELDS = {f.name: f for f in (RATIONAL, GAUSSIAN_RATIONAL, F64, C64)}


def field_by_name(name: str) -> Field:
    try:
        return FIELDS[name]
    except KeyError:
        raise FieldError(f"unknown field {name!r}; expected one of {sorted(FIELDS)}")
