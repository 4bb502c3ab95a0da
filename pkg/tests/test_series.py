"""gps-core: spec examples and algebraic properties of truncated series."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropfiber import EXACT, QQ, Series, ZeroSeriesError

from .conftest import FIELDS, series


def S(*terms, prec=EXACT, field=QQ):
    return Series(field, terms, prec)


# ---- valuation / residue --------------------------------------------------


def test_valuation_examples():
    assert S((0, 3), (1, 1)).valuation() == 0
    assert S((F(-1, 2), 1), (2, 5)).valuation() == F(-1, 2)
    assert Series.zero(QQ, 4).valuation() is None


def test_residue_examples():
    assert S((0, 3), (1, 1)).residue() == 3
    assert S((F(1, 3), 7), (1, -1)).residue() == 7
    with pytest.raises(ZeroSeriesError):
        Series.zero(QQ).residue()


def test_exponents_have_no_overflow():
    e = F(-1, 5**40)
    s = S((e, 1)) * S((e, 1))
    assert s.valuation() == 2 * e


# ---- arithmetic -----------------------------------------------------------


def test_add_cancellation():
    assert S((0, 1), (1, 1)) + S((0, -1), (1, 1)) == S((1, 2))


def test_mul_examples():
    assert S((0, 1), (1, 1)) * S((0, 1), (1, -1)) == S((0, 1), (2, -1))


def test_mul_precision_rule():
    a = S((0, 1), prec=3)
    b = S((2, 1))
    prod = a * b
    assert prod.terms == ((F(2), F(1)),)
    assert prod.precision == 5


def test_add_precision_rule():
    assert (S((0, 1), prec=3) + S((1, 1), prec=2)).precision == 2


def test_invert_examples():
    assert S((2, 1)).invert() == S((-2, 1))
    one_plus_t = S((0, 1), (1, 1), prec=4)
    inv = one_plus_t.invert()
    assert inv == S((0, 1), (1, -1), (2, 1), (3, -1), prec=4)
    assert (inv * one_plus_t).agrees_with(Series.one(QQ), 4)
    assert S((0, 2)).invert() == S((0, F(1, 2)))
    with pytest.raises(ZeroSeriesError):
        Series.zero(QQ, 3).invert()


def test_invert_precision_of_non_unit():
    # a = t (1 + t) + O(t^5): relative precision 4, inverse known to O(t^3)
    a = S((1, 1), (2, 1), prec=5)
    inv = a.invert()
    assert inv.precision == 3
    assert (a * inv).agrees_with(Series.one(QQ), 4)


def test_scale_t_examples():
    assert S((0, 1), (1, 1)).scale_t(F(1, 2)) == S((F(1, 2), 1), (F(3, 2), 1))
    assert S((-1, 1)).scale_t(1) == S((0, 1))
    a = S((0, 1), (F(2, 3), 4), prec=5)
    assert a.scale_t(F(7, 3)).scale_t(F(-7, 3)) == a


def test_truncate_examples():
    assert S((0, 1), (1, 1), (2, 1)).truncate(2) == S((0, 1), (1, 1), prec=2)
    t3 = S((3, 1)).truncate(1)
    assert t3.is_zero() and t3.precision == 1
    a = S((0, 1), (1, 1), (2, 1))
    assert a.truncate(2).truncate(2) == a.truncate(2)


def test_to_text():
    assert S((0, 1), (1, -1), (2, 1), (3, -1), prec=4).to_text() == "1 - t + t^2 - t^3 + O(t^4)"
    assert S((F(-1, 2), 1), (2, F(5, 3))).to_text() == "t^(-1/2) + 5/3*t^2"
    assert Series.zero(QQ, 0).to_text() == "O(1)"


# ---- properties -----------------------------------------------------------

field_st = st.sampled_from(FIELDS)


@given(st.data())
def test_valuation_is_multiplicative(data):
    K = data.draw(field_st)
    a = data.draw(series(K, nonzero=True, exact=True))
    b = data.draw(series(K, nonzero=True, exact=True))
    ab = a * b
    assert ab.valuation() == a.valuation() + b.valuation()
    assert ab.residue() == a.residue() * b.residue()


@given(st.data())
def test_ultrametric(data):
    K = data.draw(field_st)
    a = data.draw(series(K, nonzero=True))
    b = data.draw(series(K, nonzero=True))
    s = a + b
    va, vb = a.valuation(), b.valuation()
    if s.terms:
        assert s.valuation() >= min(va, vb)
    if va != vb and min(va, vb) < s.precision:
        assert s.valuation() == min(va, vb)
    if va == vb and a.residue() + b.residue():
        assert s.residue() == a.residue() + b.residue()


@pytest.mark.parametrize("K", FIELDS, ids=lambda f: f.name)
@settings(max_examples=200)
@given(data=st.data())
def test_ring_axioms(K, data):
    a, b, c = (data.draw(series(K)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    lhs, rhs = a * (b + c), a * b + a * c
    # both sides are term-exact below the smaller propagated precision
    assert lhs.agrees_with(rhs, min(lhs.precision, rhs.precision))


@pytest.mark.parametrize("K", FIELDS, ids=lambda f: f.name)
@settings(max_examples=100)
@given(data=st.data())
def test_invert_round_trip(K, data):
    a = data.draw(series(K, nonzero=True))
    prod = a * a.invert()
    assert prod.precision > 0
    assert prod.agrees_with(Series.one(K))


@given(st.data())
def test_scale_t_involution_and_truncate_idempotent(data):
    K = data.draw(field_st)
    a = data.draw(series(K))
    e = data.draw(st.fractions(-5, 5, max_denominator=6))
    assert a.scale_t(e).scale_t(-e) == a
    rho = data.draw(st.fractions(-5, 5, max_denominator=6))
    assert a.truncate(rho).truncate(rho) == a.truncate(rho)
