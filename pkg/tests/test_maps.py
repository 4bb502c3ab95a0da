"""maps: tropicalization of torus points and functoriality."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropfiber import (
    QQ,
    MonomialMap,
    PrecisionError,
    Series,
    TorusPoint,
    apply_map,
    check_exploded_functoriality,
    check_functoriality,
    exploded_point,
    parse_series,
    trop_point,
)
from tropfiber.maps import random_map, random_torus_point

from .conftest import F4, F5, series


def P(*texts, field=QQ):
    return TorusPoint(parse_series(t, field) for t in texts)


def test_trop_point_examples():
    assert trop_point(P("1 + t", "t^-2")) == (0, -2)
    assert trop_point(P("t^(1/2)", "3")) == (F(1, 2), 0)
    assert trop_point(P("1", "1", "1")) == (0, 0, 0)


def test_torus_point_rejects_zero():
    with pytest.raises(PrecisionError):
        TorusPoint([Series.zero(QQ, 3)])


def test_exploded_point_examples():
    assert exploded_point(P("3 + t", "t^-2*(5 + t)")) == ((0, -2), (3, 5))
    assert exploded_point(P("1", "1")) == ((0, 0), (1, 1))
    assert exploded_point(P("2*t", "2*t")) == ((1, 1), (2, 2))


def test_apply_map_examples():
    x = P("t", "1 + t")
    assert apply_map([[1, 0], [0, 1]], x) == x
    assert apply_map([[1, 1]], x) == P("t + t^2")
    assert apply_map([[2, -1]], P("t", "t^3")) == P("t^-1")


def test_check_functoriality_examples():
    x = P("2*t", "3*t")
    assert check_functoriality([[1, 1]], x)
    assert check_exploded_functoriality([[1, 1]], x)
    assert exploded_point(apply_map([[1, 1]], x)) == ((2,), (6,))
    zero = MonomialMap([[0, 0], [0, 0]])
    assert trop_point(apply_map(zero, x)) == (0, 0)
    assert check_functoriality(zero, x)
    # all valuations 0: residue functoriality is functoriality over k
    y = P("2 + t", "-1 + t^3")
    assert exploded_point(apply_map([[3, -2]], y))[1] == (F(8),)


@pytest.mark.parametrize("field", [QQ, F5, F4], ids=lambda f: f.name)
def test_functoriality_randomized(field):
    rng = random.Random(2024)
    for _ in range(200):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        A = random_map(rng, m, n)
        x = random_torus_point(rng, field, n)
        assert check_functoriality(A, x)
        assert check_exploded_functoriality(A, x)


@pytest.mark.parametrize("field", [QQ, F5], ids=lambda f: f.name)
def test_functoriality_composes(field):
    rng = random.Random(7)
    for _ in range(50):
        A, B = random_map(rng, 2, 3), random_map(rng, 3, 2)
        x = random_torus_point(rng, field, 2)
        lhs = trop_point(apply_map(A, apply_map(B, x, 3), 3))
        assert lhs == trop_point(apply_map(A.compose(B), x, 3))
        assert lhs == A.act(B.act(trop_point(x)))


@given(st.data())
def test_trop_is_homomorphism(data):
    K = data.draw(st.sampled_from([QQ, F5, F4]))
    xs = TorusPoint([data.draw(series(K, nonzero=True, exact=True)) for _ in range(2)])
    ys = TorusPoint([data.draw(series(K, nonzero=True, exact=True)) for _ in range(2)])
    v, r = exploded_point(xs * ys)
    vx, rx = exploded_point(xs)
    vy, ry = exploded_point(ys)
    assert v == tuple(a + b for a, b in zip(vx, vy))
    assert r == tuple(a * b for a, b in zip(rx, ry))


def test_relative_precision_agrees_with_full():
    rng = random.Random(3)
    for _ in range(60):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        A = random_map(rng, m, n)
        x = random_torus_point(rng, QQ, n)
        for short, full in zip(apply_map(A, x, 4), apply_map(A, x)):
            assert short.precision == short.valuation() + 4
            assert short.agrees_with(full, short.precision)
