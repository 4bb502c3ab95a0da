"""Sparse Laurent polynomials with series coefficients."""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ
from .series import EXACT, Series

__all__ = ["LaurentPoly", "default_names"]


def default_names(nvars):
    if nvars == 1:
        return ("z",)
    if nvars == 2:
        return ("x", "y")
    if nvars == 3:
        return ("x", "y", "z")
    return tuple(f"x{i + 1}" for i in range(nvars))


class LaurentPoly:
    """A Laurent polynomial ``sum a_u x^u`` over the series field.

    ``terms`` is a tuple of ``(u, a_u)`` pairs sorted by exponent vector, with
    ``u`` a tuple of ints and ``a_u`` a :class:`Series`.  Exactly-zero
    coefficients are dropped; coefficients that are merely zero to some finite
    precision are kept, because they still carry information.
    """

    __slots__ = ("nvars", "field", "terms", "names", "_index")

    def __init__(self, nvars, coeffs=(), field=QQ, names=None):
        if nvars < 1:
            raise ValueError("a Laurent polynomial needs at least one variable")
        acc = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for u, a in items:
            u = tuple(int(x) for x in u)
            if len(u) != nvars:
                raise ValueError(f"exponent {u} does not have {nvars} entries")
            if not isinstance(a, Series):
                a = Series.constant(a, field)
            if a.field != field:
                raise TypeError("coefficient over a different field")
            acc[u] = acc[u] + a if u in acc else a
        self.nvars = nvars
        self.field = field
        self.terms = tuple(sorted((u, a) for u, a in acc.items() if not a.is_exact_zero()))
        self.names = tuple(names) if names else default_names(nvars)
        self._index = None

    @classmethod
    def _raw(cls, nvars, field, terms, names):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.field = field
        obj.terms = terms
        obj.names = names
        obj._index = None
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def constant(cls, value, nvars=1, field=QQ, names=None):
        return cls(nvars, [((0,) * nvars, value)], field, names)

    @classmethod
    def variable(cls, i, nvars, field=QQ, names=None):
        u = [0] * nvars
        u[i] = 1
        return cls(nvars, [(tuple(u), Series.one(field))], field, names)

    @classmethod
    def from_coefficients(cls, coeffs, field=QQ, names=None, start=0):
        """Univariate polynomial from a coefficient list (lowest degree first)."""
        items = []
        for j, c in enumerate(coeffs):
            if not isinstance(c, Series):
                c = Series.constant(c, field)
            items.append(((start + j,), c))
        return cls(1, items, field, names)

    # queries ----------------------------------------------------------------
    def coefficient(self, u):
        if self._index is None:
            self._index = dict(self.terms)
        return self._index.get(tuple(u), Series.zero(self.field))

    def is_zero(self):
        return not self.terms

    def monomials(self):
        return [u for u, _ in self.terms]

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def is_exact(self):
        return all(a.is_exact() for _, a in self.terms)

    def degree_range(self, i=0):
        """(min, max) exponent of variable ``i`` over the support."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        exps = [u[i] for u, _ in self.terms]
        return min(exps), max(exps)

    def coefficient_list(self):
        """For univariate f: ``(ord, [c_ord, ..., c_deg])`` with zero gaps."""
        if self.nvars != 1:
            raise ValueError("coefficient_list needs a univariate polynomial")
        lo, hi = self.degree_range()
        out = [Series.zero(self.field) for _ in range(hi - lo + 1)]
        for (j,), a in self.terms:
            out[j - lo] = a
        return lo, out

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars or other.field != self.field:
                raise TypeError("incompatible Laurent polynomials")
            return other
        if isinstance(other, Series):
            return LaurentPoly(self.nvars, [((0,) * self.nvars, other)], self.field, self.names)
        try:
            return LaurentPoly.constant(self.field(other), self.nvars, self.field, self.names)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.nvars, list(self.terms) + list(other.terms), self.field, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, self.field, tuple((u, -a) for u, a in self.terms), self.names)

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
        acc = {}
        for u, a in self.terms:
            for w, b in other.terms:
                key = tuple(x + y for x, y in zip(u, w))
                prod = a * b
                acc[key] = acc[key] + prod if key in acc else prod
        return LaurentPoly(self.nvars, acc, self.field, self.names)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent polynomial inverses")
            (u, a), = self.terms
            return LaurentPoly(self.nvars, [(tuple(-x for x in u), a.invert())], self.field, self.names) ** (-n)
        result = LaurentPoly.constant(self.field.one, self.nvars, self.field, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, coeff, u):
        """Multiply by ``coeff * x^u`` (``coeff`` a Series)."""
        u = tuple(u)
        return LaurentPoly(
            self.nvars,
            [(tuple(x + y for x, y in zip(w, u)), a * coeff) for w, a in self.terms],
            self.field,
            self.names,
        )

    def scale_variables(self, v):
        """Substitute ``x_i -> t^(v_i) x_i``: each ``a_u`` gains ``t^<u,v>``."""
        v = [Fraction(x) for x in v]
        return LaurentPoly(
            self.nvars,
            [(u, a.scale_t(sum(ui * vi for ui, vi in zip(u, v)))) for u, a in self.terms],
            self.field,
            self.names,
        )

    def truncate_coefficients(self, rho):
        return LaurentPoly(self.nvars, [(u, a.truncate(rho)) for u, a in self.terms], self.field, self.names)

    # evaluation -------------------------------------------------------------
    def _term_value(self, a, factors, cap, cache):
        """``a * prod x_i^e`` truncated at ``t**cap``; ``factors`` is ``[(i, e, x_i)]``.

        Each factor is computed only to the precision it needs given the
        valuations of the others, so negative valuations never eat into the
        requested precision.
        """
        vals = [a.order()] + [e * x.order() for _, e, x in factors]
        total_val = sum(vals)
        acc = a.truncate(cap - (total_val - vals[0])) if cap != EXACT else a
        remaining = total_val - vals[0]
        for (i, e, x), v in zip(factors, vals[1:]):
            need = cap - (total_val - v) if cap != EXACT else EXACT
            key = (i, e, need)
            if key not in cache:
                cache[key] = x.power(e, need)
            remaining -= v
            acc = acc.mul(cache[key], cap - remaining if cap != EXACT else EXACT)
        return acc

    def evaluate(self, point, cap=EXACT):
        """Value at a tuple of series, truncated at ``t**cap``.

        Negative exponents invert the coordinate.  With ``cap`` EXACT an exact
        non-monomial coordinate is inverted to the default relative precision.
        """
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        cache = {}
        total = Series.zero(self.field, cap)
        for u, a in self.terms:
            factors = [(i, e, point[i]) for i, e in enumerate(u) if e]
            total = total + self._term_value(a, factors, cap, cache)
        return total

    def specialize(self, values, cap=EXACT):
        """Fix some variables to series; ``values`` maps index -> Series.

        Returns a polynomial in the remaining variables (in order), with
        coefficients truncated at ``t**cap``.
        """
        keep = [i for i in range(self.nvars) if i not in values]
        if not keep:
            raise ValueError("specialize must leave at least one variable free")
        cache = {}
        acc = {}
        for u, a in self.terms:
            factors = [(i, u[i], s) for i, s in sorted(values.items()) if u[i]]
            c = self._term_value(a, factors, cap, cache)
            key = tuple(u[i] for i in keep)
            acc[key] = acc[key] + c if key in acc else c
        return LaurentPoly(len(keep), acc, self.field, tuple(self.names[i] for i in keep))

    # comparison / display --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r}, field={self.field.name})"

    def __str__(self):
        return self.to_text()

    def monomial_text(self, u):
        parts = []
        for name, e in zip(self.names, u):
            if e == 1:
                parts.append(name)
            elif e > 0:
                parts.append(f"{name}^{e}")
            elif e < 0:
                parts.append(f"{name}^({e})")
        return "*".join(parts)

    def to_text(self):
        if not self.terms:
            return "0"
        pieces = []
        for u, a in sorted(self.terms, key=lambda ua: tuple(-x for x in ua[0])):
            mono = self.monomial_text(u)
            if a.is_exact() and len(a.terms) == 1:
                text = a.to_text()
                sign = "-" if text.startswith("-") else "+"
                body = text.lstrip("-")
                if mono:
                    body = mono if body == "1" else f"{body}*{mono}"
            else:
                sign = "+"
                body = f"({a.to_text()})"
                if mono:
                    body = f"{body}*{mono}"
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out
