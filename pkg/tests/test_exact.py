from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plausible.errors import InputError
from plausible.exact import (
    INF,
    NEG_INF,
    UNDEFINED,
    ext_add,
    ext_div,
    ext_mul,
    ext_neg,
    format_ext,
    format_rational,
    parse_ext,
    parse_rational,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
ext = st.one_of(rationals, st.just(INF), st.just(NEG_INF))


def test_worked_products_and_quotients():
    assert ext_mul(-2, INF) is NEG_INF
    assert ext_mul(0, INF) is UNDEFINED
    for x in (NEG_INF, Fraction(7, 3), INF):
        assert ext_mul(1, x) == x
    assert ext_div(3, INF) == 0
    assert ext_div(INF, -2) is NEG_INF
    assert ext_div(INF, INF) is UNDEFINED


def test_parse_and_format_round_trip():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("0.25") == Fraction(1, 4)
    assert parse_rational(7) == 7
    assert parse_ext("inf") is INF and parse_ext("-inf") is NEG_INF
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_ext(NEG_INF) == "-inf" and format_ext(UNDEFINED) == "undefined"


@pytest.mark.parametrize("bad", ["1/0", "abc", "", "1/2/3", True, 1.5])
def test_malformed_rationals_rejected(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_infinities_order_against_rationals():
    assert NEG_INF < Fraction(-10**9) < INF
    assert not INF < INF and INF <= INF
    assert -INF is NEG_INF and ext_neg(NEG_INF) is INF


@given(rationals, rationals)
def test_finite_arithmetic_matches_fractions(a, b):
    assert ext_add(a, b) == a + b
    assert ext_mul(a, b) == a * b
    assert ext_div(a, b) == (a / b if b else UNDEFINED)


@given(ext, ext)
def test_commutativity_where_defined(a, b):
    assert ext_add(a, b) == ext_add(b, a) or ext_add(a, b) is ext_add(b, a)
    assert ext_mul(a, b) == ext_mul(b, a) or ext_mul(a, b) is ext_mul(b, a)


@given(ext)
def test_undefined_absorbs(a):
    assert ext_add(a, UNDEFINED) is UNDEFINED
    assert ext_mul(UNDEFINED, a) is UNDEFINED
