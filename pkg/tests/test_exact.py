from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sierpinski.exact import (
    SQRT3_OVER_6,
    QSqrt3,
    format_rational,
    parse_number,
    parse_rational,
    rational_sqrt,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=64)


def test_format_parse_roundtrip():
    assert format_rational(Fraction(3, 8)) == "3/2^3"
    assert format_rational(Fraction(0)) == "0/2^0"
    assert format_rational(Fraction(1, 3)) == "1/3"
    for q in (Fraction(-5, 16), Fraction(7, 5), Fraction(0), Fraction(9)):
        assert parse_rational(format_rational(q)) == q


def test_parse_number_tokens():
    assert parse_number("sqrt3/6") == SQRT3_OVER_6
    assert parse_number("2*sqrt3/3") == QSqrt3(0, Fraction(2, 3))
    assert parse_number("0.20") == Fraction(1, 5)
    assert parse_number("1/32") == Fraction(1, 32)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 64)) == Fraction(3, 8)
    assert rational_sqrt(Fraction(3)) is None
    assert rational_sqrt(Fraction(-1)) is None


@given(fractions, fractions, fractions, fractions)
def test_qsqrt3_field_ops_match_floats(a, b, c, d):
    x, y = QSqrt3(a, b), QSqrt3(c, d)
    assert float(x + y) == pytest.approx(float(x) + float(y), abs=1e-9)
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)
    if y != 0:
        assert (x / y) * y == x


@given(fractions, fractions)
def test_qsqrt3_sign_is_exact(a, b):
    x = QSqrt3(a, b)
    f = float(a) + float(b) * 3 ** 0.5
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert (x - x).sign() == 0


def test_json_triple():
    obj = SQRT3_OVER_6.to_json()
    assert obj == {"rational": "0/1", "sqrt3_coeff": "1/6", "float": float(SQRT3_OVER_6)}
    assert QSqrt3.from_json(obj) == SQRT3_OVER_6
