from fractions import Fraction
from itertools import product

import pytest

from tropfiber import QQ, FiniteField, make_field
from tropfiber.fields import poly_eval


def test_rational_roots_with_multiplicity():
    # (x - 1)^2 (x + 1/2) = x^3 - 3/2 x^2 + 1/2
    coeffs = [Fraction(1, 2), Fraction(0), Fraction(-3, 2), Fraction(1)]
    assert QQ.roots(coeffs) == [(Fraction(-1, 2), 1), (Fraction(1), 2)]


def test_rational_roots_none_for_irreducible():
    assert QQ.roots([Fraction(-2), 0, 1]) == []


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_axioms(p):
    K = FiniteField(p)
    els = K.elements()
    assert len(els) == p
    for a in els[1:]:
        assert a * a.inverse() == K.one
    for a, b in product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_extension_field_axioms(p, k):
    K = FiniteField(p, k)
    els = K.elements()
    assert len(els) == p**k
    assert len(set(els)) == p**k
    for a in els[1:]:
        assert a * a.inverse() == K.one
        assert a ** (K.q - 1) == K.one
    for a, b, c in product(els[:6], repeat=3):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_f4_generator():
    K = FiniteField(2, 2)
    assert [K.render(a) for a in K.elements()] == ["0", "1", "g", "g + 1"]
    g = K.generator()
    assert g * g == g + 1


def test_finite_field_roots_exhaustive():
    K = FiniteField(5)
    # x^5 - 1 = (x - 1)^5 over F_5
    coeffs = [K(-1), 0, 0, 0, 0, K(1)]
    assert K.roots(coeffs) == [(K(1), 5)]
    # every root found really is a root, multiplicities add up for split polys
    coeffs = [K(c) for c in (4, 0, 1)]  # x^2 - 1
    roots = K.roots(coeffs)
    assert sorted(int(r.n) for r, _ in roots) == [1, 4]
    for r, _ in roots:
        assert not poly_eval(coeffs, r, K.zero)


def test_artin_schreier_residual_has_no_root():
    K = FiniteField(3)
    # a^3 - a - 1 has no root in F_3
    assert K.roots([K(-1), K(-1), 0, K(1)]) == []


def test_make_field():
    assert make_field("Q") is QQ
    assert make_field("Fp", 7).q == 7
    assert make_field("Fp", 2, 3).q == 8
    with pytest.raises(ValueError):
        make_field("Fp")
    with pytest.raises(ValueError):
        FiniteField(4)
