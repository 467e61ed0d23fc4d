from __future__ import annotations

from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from eudes.scalar import (Approx, InexactError, Quad, ScalarParseError, exact_only, format_scalar,
                          parse_scalar, rational_sqrt, scalar_cmp, sign, sqrt_exact, sqrt_scalar)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 15])


@st.composite
def quads(draw, d=None):
    dd = draw(radicands) if d is None else d
    return Quad(draw(rats), draw(rats), dd)


def test_products_and_roots():
    r5 = Quad(0, 1, 5)
    assert Quad(1, 0, 5) * r5 == r5
    assert r5 * r5 == 5
    assert sqrt_exact(F(1, 5)) * -sqrt_exact(F(1, 5)) == F(-1, 5)


def test_sqrt_exact_examples():
    assert sqrt_exact(F(9, 4)) == F(3, 2)
    assert sqrt_exact(F(1, 15)) == Quad(0, F(1, 15), 15)
    assert sqrt_exact(0) == 0
    with pytest.raises(ValueError):
        sqrt_exact(-1)


def test_cmp_examples():
    assert scalar_cmp(F(1, 5), F(-3, 5)) == 1
    assert scalar_cmp(sqrt_exact(F(1, 5)), -sqrt_exact(F(1, 5))) == 1
    assert scalar_cmp(sqrt_exact(F(1, 15)), F(1, 4)) == 1


def test_parse_examples():
    assert parse_scalar("3/10") == F(3, 10)
    x = parse_scalar("-1/6+0*rt(1)")
    assert x == F(-1, 6) and x.is_rational
    assert parse_scalar("1/15*rt(15)") == sqrt_exact(F(1, 15))
    assert parse_scalar("2-3/4*rt(8)") == Quad(2, F(-3, 2), 2)
    assert isinstance(parse_scalar("0.25"), Approx)
    for bad in ("", "1/0", "rt(5)", "1*rt(-3)", "abc", "1+2"):
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)


def test_decimal_rejected_in_exact_block():
    with exact_only(), pytest.raises(InexactError):
        parse_scalar("0.5")


def test_mixed_radicands_degrade():
    x = Quad(0, 1, 2) + Quad(0, 1, 3)
    assert isinstance(x, Approx)
    with mpmath.workdps(80):
        assert abs(x.to_mpf() - (mpmath.sqrt(2) + mpmath.sqrt(3))) < mpmath.mpf(10) ** -60
    with exact_only(), pytest.raises(InexactError):
        Quad(0, 1, 2) + Quad(0, 1, 3)
    # pure times pure stays exact
    assert Quad(0, 1, 2) * Quad(0, 1, 3) == Quad(0, 1, 6)
    assert Quad(0, 1, 6) / Quad(0, 1, 2) == Quad(0, 1, 3)


def test_sqrt_scalar_irrational_is_approx():
    assert sqrt_scalar(F(4, 9)) == F(2, 3)
    assert isinstance(sqrt_scalar(Quad(1, 1, 2)), Approx)


def test_rational_sqrt():
    assert rational_sqrt(F(49, 16)) == F(7, 4)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(-4) is None


def test_canonical_radicand():
    assert Quad(0, 1, 12) == Quad(0, 2, 3)
    assert Quad(1, 1, 4) == 3


@given(st.integers(2, 15).flatmap(lambda d: st.tuples(quads(d), quads(d), quads(d))))
def test_field_axioms_same_radicand(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a:
        assert a * (Quad(1) / a) == 1


@given(st.fractions(min_value=0, max_value=1000, max_denominator=500))
def test_sqrt_exact_squares_back(x):
    assert sqrt_exact(x) ** 2 == x


@given(quads(), quads())
def test_cmp_matches_real_embedding(a, b):
    va, vb = a.to_mpf(), b.to_mpf()
    want = (va > vb) - (va < vb)
    assert scalar_cmp(a, b) == want
    assert sign(a) == (va > 0) - (va < 0)


@given(quads())
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a
    assert format_scalar(parse_scalar(format_scalar(a))) == format_scalar(a)
