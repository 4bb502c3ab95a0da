"""Truncated generalized power series with rational exponents.

A :class:`Series` is a finite sum of terms ``c * t**e`` (``e`` a Fraction,
``c`` a nonzero element of the coefficient field) plus a precision bound: the
value is only known modulo ``t**precision``.  ``precision`` is either a
Fraction or :data:`EXACT` (``math.inf``), meaning the finite sum is the whole
story.  Values are immutable.

Precision bookkeeping is the usual big-O arithmetic:

* ``a + b`` is known to ``min(prec a, prec b)``;
* ``a * b`` is known to ``min(prec a + val b, prec b + val a)``, where the
  valuation of a series with no terms is taken to be its precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ZeroSeriesError
from .fields import QQ, FFElement

__all__ = ["EXACT", "Series", "DEFAULT_RELATIVE_PRECISION", "as_exp", "exp_text"]

EXACT = math.inf

#: Relative precision used when inverting an exact series with infinitely many
#: inverse terms and no explicit target.
DEFAULT_RELATIVE_PRECISION = Fraction(20)


def as_exp(value):
    """Coerce ints, strings and Fractions to an exponent; ``inf`` passes through."""
    if value == EXACT:
        return EXACT
    return Fraction(value)


def exp_text(e):
    """Machine-readable exponent text: always ``num/den``, or ``exact``."""
    if e == EXACT:
        return "exact"
    e = Fraction(e)
    return f"{e.numerator}/{e.denominator}"


class Series:
    __slots__ = ("field", "terms", "precision")

    def __init__(self, field=QQ, terms=(), precision=EXACT):
        precision = as_exp(precision)
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            e = Fraction(e)
            if e >= precision:
                continue
            c = field(c)
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        self.field = field
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self.precision = precision

    @classmethod
    def _raw(cls, field, terms, precision):
        # trusted constructor: terms already sorted, nonzero, below precision
        obj = object.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj.precision = precision
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, field=QQ, precision=EXACT):
        return cls._raw(field, (), as_exp(precision))

    @classmethod
    def one(cls, field=QQ):
        return cls._raw(field, ((Fraction(0), field.one),), EXACT)

    @classmethod
    def constant(cls, value, field=QQ, precision=EXACT):
        return cls(field, [(0, value)], precision)

    @classmethod
    def monomial(cls, coeff, exponent, field=QQ, precision=EXACT):
        return cls(field, [(exponent, coeff)], precision)

    def _coerce(self, other):
        if isinstance(other, Series):
            if other.field != self.field:
                raise TypeError(f"series over {self.field.name} and {other.field.name}")
            return other
        if isinstance(other, (int, Fraction, FFElement)):
            return Series(self.field, [(0, other)])
        return NotImplemented

    # basic queries ----------------------------------------------------------
    def valuation(self):
        """Least exponent with a nonzero coefficient, or None for a zero series."""
        return self.terms[0][0] if self.terms else None

    def residue(self):
        """Coefficient of the least exponent (the leading coefficient)."""
        if not self.terms:
            raise ZeroSeriesError("residue of a series with no terms")
        return self.terms[0][1]

    def leading_term(self):
        if not self.terms:
            raise ZeroSeriesError("leading term of a series with no terms")
        return self.terms[0]

    def is_zero(self):
        """True when no term survives, i.e. zero up to the precision."""
        return not self.terms

    def is_exact(self):
        return self.precision == EXACT

    def is_exact_zero(self):
        return not self.terms and self.precision == EXACT

    def is_monomial(self):
        return len(self.terms) == 1

    def order(self):
        """Valuation with the zero-series convention used for precision."""
        return self.terms[0][0] if self.terms else self.precision

    def coefficient(self, e):
        e = Fraction(e)
        for x, c in self.terms:
            if x == e:
                return c
        return self.field.zero

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision, other.precision)
        acc = dict(self.terms)
        for e, c in other.terms:
            if e in acc:
                s = acc[e] + c
                if s:
                    acc[e] = s
                else:
                    del acc[e]
            else:
                acc[e] = c
        terms = tuple(sorted((e, c) for e, c in acc.items() if e < prec))
        return Series._raw(self.field, terms, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.field, tuple((e, -c) for e, c in self.terms), self.precision)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other, cap=EXACT):
        """Product, additionally truncated at ``t**cap``."""
        prec = min(self.precision + other.order(), other.precision + self.order(), cap)
        acc = {}
        b_terms = other.terms
        for e1, c1 in self.terms:
            for e2, c2 in b_terms:
                e = e1 + e2
                if e >= prec:
                    break
                if e in acc:
                    acc[e] = acc[e] + c1 * c2
                else:
                    acc[e] = c1 * c2
        terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        return Series._raw(self.field, terms, prec)

    def scale(self, c):
        """Multiply every coefficient by the field element ``c``."""
        c = self.field(c)
        if not c:
            return Series._raw(self.field, (), self.precision)
        return Series._raw(self.field, tuple((e, x * c) for e, x in self.terms), self.precision)

    def invert(self, precision=None):
        """Multiplicative inverse.

        The leading term ``c t^v`` is factored out and ``1/(1+u)`` is expanded
        as a finite geometric series.  A series known to ``O(t^P)`` yields an
        inverse known to ``O(t^(P - 2v))`` (which is ``O(t^P)`` for unit
        series).  ``precision`` caps the result at ``O(t^precision)``; it is
        needed to invert an exact non-monomial, and otherwise defaults to
        :data:`DEFAULT_RELATIVE_PRECISION` beyond the valuation.
        """
        if not self.terms:
            raise ZeroSeriesError("cannot invert a zero series")
        v, c = self.terms[0]
        cinv = c ** -1 if isinstance(c, FFElement) else 1 / c
        rel = self.precision - v
        if precision is not None:
            rel = min(rel, Fraction(precision) + v)
        if len(self.terms) == 1:
            return Series._raw(self.field, ((-v, cinv),), rel - v if rel != EXACT else EXACT)
        if rel == EXACT:
            rel = DEFAULT_RELATIVE_PRECISION
        if rel <= 0:
            return Series._raw(self.field, (), rel - v)
        # u = a / (c t^v) - 1, all exponents positive
        u = Series._raw(
            self.field,
            tuple((e - v, x * cinv) for e, x in self.terms[1:] if e - v < rel),
            min(rel, self.precision - v),
        )
        neg_u = -u
        acc = Series._raw(self.field, ((Fraction(0), self.field.one),), rel)
        term = acc
        while True:
            term = term.mul(neg_u, rel)
            if not term.terms:
                acc = acc + term
                break
            acc = acc + term
        return acc.scale(cinv).scale_t(-v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def power(self, n, cap=EXACT):
        """Integer power, truncated at ``t**cap``; negative powers go through :meth:`invert`.

        The leading monomial is factored out first, so intermediate
        truncation never loses precision when the valuation is negative.
        """
        if n < 0:
            if not self.terms:
                raise ZeroSeriesError("negative power of a zero series")
            # (1/x)^m is known to O(t^cap) once 1/x is known to O(t^(cap + (m-1) val x))
            need = None if cap == EXACT else cap + (-n - 1) * self.terms[0][0]
            return self.invert(need).power(-n, cap)
        if n == 0:
            return Series._raw(self.field, ((Fraction(0), self.field.one),), EXACT)
        if not self.terms or self.terms[0][0] == 0:
            return self._unit_power(n, cap)
        v = self.terms[0][0]
        shifted = self.scale_t(-v)
        return shifted._unit_power(n, cap - n * v if cap != EXACT else EXACT).scale_t(n * v)

    def _unit_power(self, n, cap):
        result = Series._raw(self.field, ((Fraction(0), self.field.one),), EXACT)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, cap)
            n >>= 1
            if n:
                base = base.mul(base, cap)
        return result

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.power(n)

    def scale_t(self, e):
        """Multiply by ``t**e``: shift every exponent and the precision."""
        e = Fraction(e)
        return Series._raw(
            self.field,
            tuple((x + e, c) for x, c in self.terms),
            self.precision + e if self.precision != EXACT else EXACT,
        )

    def truncate(self, rho):
        """Drop terms at or above ``rho``; precision becomes ``min(prec, rho)``."""
        rho = as_exp(rho)
        prec = min(self.precision, rho)
        return Series._raw(self.field, tuple((e, c) for e, c in self.terms if e < prec), prec)

    def with_precision(self, rho):
        """Alias of :meth:`truncate`, reads better when lowering precision."""
        return self.truncate(rho)

    def exact(self):
        """The same finite sum, declared exact."""
        return Series._raw(self.field, self.terms, EXACT)

    def agrees_with(self, other, rho=EXACT):
        """Term-exact agreement below ``min(rho, both precisions)``."""
        bound = min(as_exp(rho), self.precision, other.precision)
        return self.truncate(bound).terms == other.truncate(bound).terms

    # comparison / display --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Series):
            return (
                self.field == other.field
                and self.terms == other.terms
                and self.precision == other.precision
            )
        if isinstance(other, (int, Fraction, FFElement)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.terms, self.precision))

    def __repr__(self):
        return f"Series({self.to_text()!r}, field={self.field.name})"

    def __str__(self):
        return self.to_text()

    def to_text(self):
        """Human-readable and re-parsable form, e.g. ``1 - 1/2*t^(1/2) + O(t^3)``."""
        pieces = []
        for e, c in self.terms:
            pieces.append(_term_text(self.field, c, _t_power_text(e)))
        if self.precision != EXACT:
            p = self.precision
            pieces.append(("+", "O(1)" if p == 0 else f"O({_t_power_text(p)})"))
        if not pieces:
            return "0"
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _t_power_text(e):
    if e == 0:
        return ""
    if e == 1:
        return "t"
    if e.denominator == 1 and e > 0:
        return f"t^{e.numerator}"
    return f"t^({e})"


def coeff_text(field, c):
    """(sign, magnitude text) for a coefficient; magnitude is parenthesized when compound."""
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else "+"
        return sign, str(abs(c))
    text = field.render(c)
    if " " in text or "*" in text or "^" in text:
        text = f"({text})"
    return "+", text


def _term_text(field, c, mono):
    sign, mag = coeff_text(field, c)
    if not mono:
        return sign, mag
    if mag == "1":
        return sign, mono
    return sign, f"{mag}*{mono}"
