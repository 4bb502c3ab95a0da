"""Tropicalization of torus points and monomial maps between tori.

Under the canonical splitting of ``k((t^G))`` a point of the torus over the
series field has an exploded tropicalization ``(valuations, leading
coefficients)``.  A monomial map ``x -> x^A`` acts on valuations by ``A`` and
on leading coefficients by the same monomial map over ``k``; the two
``check_*`` functions test exactly these statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .series import EXACT, Series

__all__ = [
    "MonomialMap",
    "TorusPoint",
    "trop_point",
    "exploded_point",
    "apply_map",
    "apply_residue_map",
    "check_functoriality",
    "check_exploded_functoriality",
    "random_map",
    "random_torus_point",
]


@dataclass(frozen=True)
class MonomialMap:
    """Integer matrix ``A`` (m x n): output ``j`` is ``prod_i x_i^A[j][i]``."""

    matrix: tuple

    def __init__(self, matrix):
        rows = tuple(tuple(int(a) for a in row) for row in matrix)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("matrix rows must have equal length")
        object.__setattr__(self, "matrix", rows)

    @property
    def shape(self):
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)

    def act(self, v):
        """``A v`` for a vector of exponents."""
        return tuple(sum(a * Fraction(x) for a, x in zip(row, v)) for row in self.matrix)

    def compose(self, other):
        """The map ``self ∘ other`` (matrix product ``self.A @ other.A``)."""
        n = other.shape[1]
        return MonomialMap(
            [[sum(a * other.matrix[k][i] for k, a in enumerate(row)) for i in range(n)] for row in self.matrix]
        )


@dataclass(frozen=True)
class TorusPoint:
    """A point of ``(K^*)^n``: every coordinate has a certified leading term."""

    coords: tuple

    def __init__(self, coords):
        coords = tuple(coords)
        for i, c in enumerate(coords):
            if not isinstance(c, Series):
                raise TypeError("torus coordinates must be Series")
            if not c.terms:
                raise PrecisionError(f"coordinate {i} is zero to its precision")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __mul__(self, other):
        return TorusPoint(a * b for a, b in zip(self.coords, other.coords))


def _point(x):
    return x if isinstance(x, TorusPoint) else TorusPoint(x)


def trop_point(x):
    """Vector of valuations of the coordinates."""
    return tuple(c.valuation() for c in _point(x))


def exploded_point(x):
    """``(trop_point(x), residues)``: valuations and leading coefficients."""
    x = _point(x)
    return trop_point(x), tuple(c.residue() for c in x)


def apply_map(A, x, rel_precision=None):
    """Coordinate ``j`` of the image is ``prod_i x_i^A[j][i]`` (negative powers invert).

    With ``rel_precision`` each image coordinate is computed only to
    ``O(t^(val + rel_precision))``; every factor is then powered to exactly the
    precision the product needs.  Without it, negative powers of exact
    non-monomials fall back to :data:`DEFAULT_RELATIVE_PRECISION`.
    """
    A = A if isinstance(A, MonomialMap) else MonomialMap(A)
    x = _point(x)
    if A.shape[1] != len(x):
        raise ValueError(f"map expects {A.shape[1]} coordinates, got {len(x)}")
    field = x.coords[0].field
    vals = trop_point(x)
    out = []
    for row in A.matrix:
        total = sum(a * v for a, v in zip(row, vals))
        cap = EXACT if rel_precision is None else total + Fraction(rel_precision)
        acc = Series.one(field)
        for a, c, v in zip(row, x.coords, vals):
            if a:
                factor_cap = cap - (total - a * v)
                acc = acc * c.power(a, factor_cap)
        out.append(acc.truncate(cap))
    return TorusPoint(out)


def apply_residue_map(A, residues):
    """The same monomial map on a tuple of nonzero residue-field elements."""
    A = A if isinstance(A, MonomialMap) else MonomialMap(A)
    out = []
    for row in A.matrix:
        acc = None
        for a, c in zip(row, residues):
            term = c ** a
            acc = term if acc is None else acc * term
        out.append(acc if acc is not None else 1)
    return tuple(out)


def check_functoriality(A, x):
    """``Trop(phi(x)) == A Trop(x)``."""
    A = A if isinstance(A, MonomialMap) else MonomialMap(A)
    return trop_point(apply_map(A, x, 1)) == A.act(trop_point(x))


def check_exploded_functoriality(A, x):
    """Valuations and residues of ``phi(x)`` equal ``A`` applied to those of ``x``."""
    A = A if isinstance(A, MonomialMap) else MonomialMap(A)
    v, res = exploded_point(x)
    w, res_image = exploded_point(apply_map(A, x, 1))
    if w != A.act(v):
        return False
    field = _point(x).coords[0].field
    expected = tuple(field(c) for c in apply_residue_map(A, res))
    return res_image == expected


_EXPONENT_MENU = tuple(sorted({Fraction(a, b) for a in range(-6, 7) for b in (1, 2, 3)}))


def random_map(rng, m, n, bound=3):
    """Integer m x n matrix with entries drawn uniformly from [-bound, bound]."""
    return MonomialMap([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)])


def random_torus_point(rng, field, n, max_terms=3):
    """``n`` exact series with 1..max_terms terms, exponents in [-6, 6] (denominators 1-3)."""
    smalls = field.small_elements()
    coords = []
    for _ in range(n):
        k = rng.randint(1, max_terms)
        exps = rng.sample(_EXPONENT_MENU, k)
        coords.append(Series(field, [(e, rng.choice(smalls)) for e in exps]))
    return TorusPoint(coords)
