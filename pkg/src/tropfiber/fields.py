"""Residue fields: exact rationals and small finite fields F_{p^k}.

A field object knows how to coerce Python numbers into its elements, how to
render and order them, and how to find all of its own roots of a univariate
polynomial.  Elements of Q are plain :class:`fractions.Fraction` values;
elements of F_{p^k} are :class:`FFElement` instances.  Both support the usual
arithmetic operators, so code above this layer never branches on the field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

__all__ = ["RationalField", "FiniteField", "FFElement", "QQ", "make_field", "poly_eval"]


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def poly_eval(coeffs, x, zero):
    """Horner evaluation of ``coeffs`` (lowest degree first) at ``x``."""
    acc = zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divide_linear(coeffs, root):
    """Synthetic division by (X - root); returns (quotient, remainder)."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * root
    return out, acc


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class RationalField:
    """The field Q, with Fraction elements."""

    characteristic = 0
    cardinality = None
    name = "Q"

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_rational(self, q):
        return Fraction(q)

    def contains(self, a):
        return isinstance(a, Fraction)

    def render(self, a):
        return str(a)

    def sort_key(self, a):
        return a

    def small_elements(self):
        """Nonzero elements used for seeded perturbations."""
        return [Fraction(c) for c in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2)]

    def roots(self, coeffs):
        """Rational roots of ``coeffs`` (lowest degree first) with multiplicity.

        Roots are found by factoring over Q (sympy's ground-domain root
        routine, which is the rational root test in practice).  Output is
        sorted by numeric value.
        """
        coeffs = _trim(Fraction(c) for c in coeffs)
        if len(coeffs) <= 1:
            if not coeffs:
                raise ValueError("zero polynomial has every element as a root")
            return []
        from sympy import Poly, QQ as SQQ, Rational, Symbol

        X = Symbol("X")
        sp = Poly([Rational(c.numerator, c.denominator) for c in reversed(coeffs)], X, domain=SQQ)
        found = sp.ground_roots()
        out = [(Fraction(int(r.p), int(r.q)), int(m)) for r, m in found.items()]
        out.sort(key=lambda rm: rm[0])
        return out

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


class FFElement:
    """Element of a finite field, encoded as the integer sum of d_i p^i."""

    __slots__ = ("field", "n")

    def __init__(self, field, n):
        self.field = field
        self.n = n

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElement(self.field, self.field._add(self.n, other.n))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, self.field._neg(self.n))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElement(self.field, self.field._add(self.n, self.field._neg(other.n)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElement(self.field, self.field._mul(self.n, other.n))

    __rmul__ = __mul__

    def inverse(self):
        if self.n == 0:
            raise ZeroDivisionError("inverse of zero in " + self.field.name)
        return FFElement(self.field, self.field._inv(self.n))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if self.n == 0:
            return FFElement(self.field, 1 if e == 0 else 0)
        return FFElement(self.field, self.field._pow(self.n, e))

    def __bool__(self):
        return self.n != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.n == other.n and self.field == other.field
        if isinstance(other, (int, Fraction)):
            try:
                return self.n == self.field(other).n
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.n))

    def __repr__(self):
        return f"FFElement({self.field.name}, {self.field.render(self)})"

    def __str__(self):
        return self.field.render(self)


class FiniteField:
    """The field F_{p^k}.

    For k > 1 the elements are polynomials of degree < k in a generator ``g``
    modulo the lexicographically smallest monic irreducible polynomial of
    degree k over F_p.  Multiplication goes through discrete log tables, so
    keep q = p^k modest (the constructor refuses q > 2**20).
    """

    MAX_ORDER = 1 << 20

    def __init__(self, p, k=1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        q = p**k
        if q > self.MAX_ORDER:
            raise ValueError(f"F_{p}^{k} is too large for table arithmetic")
        self.p = p
        self.k = k
        self.q = q
        self.characteristic = p
        self.cardinality = q
        self.name = f"F_{p}" if k == 1 else f"F_{p}^{k}"
        if k > 1:
            self.modulus = _smallest_irreducible(p, k)
            self._exp, self._log = _log_tables(p, k, self.modulus)
        else:
            self.modulus = None

    # encoded-integer arithmetic -------------------------------------------
    def _digits(self, n):
        out = []
        for _ in range(self.k):
            n, d = divmod(n, self.p)
            out.append(d)
        return out

    def _encode(self, digits):
        n = 0
        for d in reversed(digits):
            n = n * self.p + d
        return n

    def _add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def _neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def _mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _inv(self, a):
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def _pow(self, a, e):
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # public API -------------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, FFElement):
            if value.field != self:
                raise TypeError("element of a different field")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FFElement(self, value % self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            n = value.numerator * pow(value.denominator, -1, self.p) % self.p
            return FFElement(self, n)
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    @property
    def zero(self):
        return FFElement(self, 0)

    @property
    def one(self):
        return FFElement(self, 1)

    def generator(self):
        """The class of X modulo the defining polynomial (``g`` in text form)."""
        if self.k == 1:
            return self.one
        return FFElement(self, self.p)

    def from_rational(self, q):
        return self(Fraction(q))

    def contains(self, a):
        return isinstance(a, FFElement) and a.field == self

    def elements(self):
        return [FFElement(self, n) for n in range(self.q)]

    def render(self, a):
        if self.k == 1:
            return str(a.n)
        digits = self._digits(a.n)
        parts = []
        for i in range(self.k - 1, -1, -1):
            d = digits[i]
            if not d:
                continue
            if i == 0:
                parts.append(str(d))
            else:
                mono = "g" if i == 1 else f"g^{i}"
                parts.append(mono if d == 1 else f"{d}*{mono}")
        return " + ".join(parts) if parts else "0"

    def sort_key(self, a):
        return a.n

    def small_elements(self):
        return [FFElement(self, n) for n in range(1, min(self.q, 6))]

    def roots(self, coeffs):
        """All roots in the field, by exhaustive evaluation, with multiplicity."""
        coeffs = _trim(self(c) for c in coeffs)
        if len(coeffs) <= 1:
            if not coeffs:
                raise ValueError("zero polynomial has every element as a root")
            return []
        out = []
        for e in self.elements():
            m = 0
            cur = coeffs
            while len(cur) > 1:
                quo, rem = _divide_linear(cur, e)
                if rem:
                    break
                m += 1
                cur = quo
            if m:
                out.append((e, m))
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.p == self.p and other.k == self.k

    def __hash__(self):
        return hash(("F", self.p, self.k))

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"


@lru_cache(maxsize=None)
def _smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    for tail in product(range(p), repeat=k):
        cand = list(reversed(tail)) + [1]
        if cand[0] == 0:
            continue
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    return [x % p for x in a]


def _is_irreducible(poly, p):
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def _poly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def _log_tables(p, k, modulus):
    q = p**k

    def enc(digits):
        n = 0
        for d in reversed(digits[:k] + [0] * (k - len(digits))):
            n = n * p + d
        return n

    def dec(n):
        out = []
        for _ in range(k):
            n, d = divmod(n, p)
            out.append(d)
        return out

    for cand in range(2, q):
        exp = [0] * (q - 1)
        log = {}
        cur = [1]
        ok = True
        for i in range(q - 1):
            n = enc(cur)
            if n in log:
                ok = False
                break
            exp[i] = n
            log[n] = i
            cur = _poly_mulmod(cur, dec(cand), modulus, p)
        if ok and len(log) == q - 1:
            table = [0] * q
            for n, i in log.items():
                table[n] = i
            return exp, table
    raise ValueError("no primitive element found")


def make_field(name="Q", p=None, k=1):
    """Build a field from CLI-style arguments: ``Q`` or ``Fp`` with p and k."""
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Fp", "F", "GF"):
        if p is None:
            raise ValueError("field Fp needs a prime p")
        return FiniteField(int(p), int(k or 1))
    raise ValueError(f"unknown field {name!r}")
