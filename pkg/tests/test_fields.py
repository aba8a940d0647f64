import pytest
from gmpy2 import mpq

from twostein.fields import (C64, F64, FieldError, GAUSSIAN_RATIONAL,
                             GaussianRational, RATIONAL, field_by_name,
                             parse_gaussian, parse_rational)


def test_parse_rational():
    assert parse_rational("3/2") == mpq(3, 2)
    assert parse_rational("-7") == mpq(-7)
    assert parse_rational("0.25") == mpq(1, 4)
    assert parse_rational(5) == mpq(5)
    with pytest.raises(FieldError):
        parse_rational("abc")
    with pytest.raises(FieldError):
        parse_rational(1.5)


@pytest.mark.parametrize("text,re_,im_", [
    ("1/2+1/3i", mpq(1, 2), mpq(1, 3)),
    ("-i", 0, -1),
    ("i", 0, 1),
    ("2i", 0, 2),
    ("3", 3, 0),
    ("1-i", 1, -1),
    ("-2/3i", 0, mpq(-2, 3)),
    ("-1/2+i", mpq(-1, 2), 1),
])
def test_parse_gaussian(text, re_, im_):
    v = parse_gaussian(text)
    assert v == GaussianRational(re_, im_)


def test_gaussian_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert (GaussianRational(1, 1) ** 4) == GaussianRational(-4)
    a = GaussianRational(mpq(1, 2), mpq(1, 3))
    b = GaussianRational(2, -1)
    assert (a + b) - b == a
    assert a * b / b == a
    assert a.conjugate().conjugate() == a
    assert mpq(2, 3) * a == a * mpq(2, 3)
    assert 1 + i == GaussianRational(1, 1)


def test_gaussian_str_roundtrip():
    vals = [GaussianRational(0), GaussianRational(3), GaussianRational(0, 1),
            GaussianRational(0, -1), GaussianRational(mpq(1, 2), mpq(-1, 3)),
            GaussianRational(-2, 5)]
    for v in vals:
        assert parse_gaussian(str(v)) == v


def test_field_coercion_rules():
    assert RATIONAL.coerce("5/4") == mpq(5, 4)
    with pytest.raises(FieldError):
        RATIONAL.coerce(0.5)
    with pytest.raises(FieldError):
        RATIONAL.coerce(GaussianRational(0, 1))
    assert GAUSSIAN_RATIONAL.coerce("1+i") == GaussianRational(1, 1)
    assert F64.coerce("3/2") == 1.5
    assert C64.coerce("1.5+0.25i") == 1.5 + 0.25j
    assert field_by_name("rational") is RATIONAL
    with pytest.raises(FieldError):
        field_by_name("float32")


def test_exact_json_rejects_float_values():
    with pytest.raises(FieldError):
        RATIONAL.parse_value(0.1)
    assert RATIONAL.parse_value(3) == mpq(3)


def test_magnitudes():
    assert RATIONAL.magnitude(mpq(-3, 2)) == 1.5
    assert GAUSSIAN_RATIONAL.magnitude(GaussianRational(3, 4)) == 5.0
    assert RATIONAL.is_zero(mpq(0))
    assert not RATIONAL.is_zero(mpq(1, 10 ** 6))
    assert F64.is_zero(1e-12)
    assert not F64.is_zero(1e-6)
