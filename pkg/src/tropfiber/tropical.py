"""Weights, initial forms, Newton polygons and plane tropical curves.

Sign convention: the weight of a monomial ``b x^u`` at a tropical point ``v``
is ``val(b) - <u, v>``, and tropical objects are minima of weights.  A torus
point whose coordinates have valuation vector ``w`` therefore reduces onto the
initial form at ``-w``; :func:`reduction_form` packages that bridge.
Univariate Newton polygons report genuine root valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .errors import PrecisionError, UnsupportedError, ZeroPolyError
from .laurent import LaurentPoly
from .series import EXACT

__all__ = [
    "weight",
    "InitialForm",
    "init_form",
    "reduction_form",
    "trop_member",
    "NewtonSegment",
    "newton_polygon",
    "TropEdge",
    "TropCurve",
    "trop_curve",
]


def _dot(u, v):
    return sum(Fraction(a) * b for a, b in zip(u, v))


def weight(u, a_u, v):
    """``val(a_u) - <u, v>`` for a nonzero coefficient ``a_u``."""
    val = a_u.valuation()
    if val is None:
        raise PrecisionError("coefficient is zero to its precision; weight is not certified")
    return val - _dot(u, v)


@dataclass(frozen=True)
class InitialForm:
    """Laurent polynomial over the residue field, with its normalization.

    ``monomials`` is a tuple of ``(u, c)`` with ``c`` a nonzero field element;
    ``base_weight`` is the minimal weight that was subtracted off.
    """

    nvars: int
    field: object
    monomials: tuple
    base_weight: Fraction
    point: tuple
    names: tuple = dc_field(default=(), compare=False)

    def is_monomial(self):
        return len(self.monomials) == 1

    def __len__(self):
        return len(self.monomials)

    def as_dict(self):
        return dict(self.monomials)

    def evaluate(self, xbar):
        xbar = [self.field(c) for c in xbar]
        total = self.field.zero
        for u, c in self.monomials:
            term = c
            for x, e in zip(xbar, u):
                term = term * x**e
            total = total + term
        return total

    def __mul__(self, other):
        if not isinstance(other, InitialForm):
            return NotImplemented
        acc = {}
        for u, a in self.monomials:
            for w, b in other.monomials:
                key = tuple(x + y for x, y in zip(u, w))
                acc[key] = acc.get(key, self.field.zero) + a * b
        point = self.point if self.point == other.point else ()
        return InitialForm(
            self.nvars,
            self.field,
            tuple(sorted((u, c) for u, c in acc.items() if c)),
            self.base_weight + other.base_weight,
            point,
            self.names,
        )

    def to_text(self):
        names = self.names or tuple(f"x{i + 1}" for i in range(self.nvars))
        poly = LaurentPoly(self.nvars, [(u, c) for u, c in self.monomials], self.field, names)
        return poly.to_text()

    def __str__(self):
        return self.to_text()


def init_form(f, v):
    """Initial form of ``f`` at ``v``: leading coefficients of the lowest-weight monomials."""
    if f.is_zero():
        raise ZeroPolyError("initial form of the zero polynomial")
    v = tuple(Fraction(x) for x in v)
    if len(v) != f.nvars:
        raise ValueError(f"point has {len(v)} coordinates, polynomial has {f.nvars} variables")
    certified = []
    bounds = []
    for u, a in f.terms:
        if a.terms:
            certified.append((weight(u, a, v), u, a.residue()))
        else:
            bounds.append(a.precision - _dot(u, v))
    if not certified:
        raise PrecisionError("no coefficient has a certified valuation")
    w0 = min(w for w, _, _ in certified)
    if any(b <= w0 for b in bounds):
        raise PrecisionError("a truncated coefficient could reach the minimal weight")
    mons = tuple(sorted((u, c) for w, u, c in certified if w == w0))
    return InitialForm(f.nvars, f.field, mons, w0, v, f.names)


def reduction_form(f, w):
    """Initial form governing residues of points with valuation vector ``w``.

    Under the minus-sign weight this is the initial form at ``-w``: for
    ``f(x) = 0`` with ``val(x) = w`` one has ``reduction_form(f, w)(lc(x)) = 0``.
    """
    return init_form(f, tuple(-Fraction(x) for x in w))


def trop_member(f, v):
    """True iff the minimal weight at ``v`` is attained at least twice."""
    return len(init_form(f, v).monomials) >= 2


# ---------------------------------------------------------------------------
# univariate Newton polygons


@dataclass(frozen=True)
class NewtonSegment:
    """One lower-hull edge: roots of valuation ``root_valuation``.

    ``residual_poly`` lists field coefficients from degree 0 up to
    ``multiplicity``; its roots are the leading coefficients of those roots.
    ``start``/``end`` are the polynomial degrees bounding the edge.
    """

    root_valuation: Fraction
    multiplicity: int
    residual_poly: tuple
    start: int
    end: int
    base_weight: Fraction


def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(g):
    """Lower-hull segments of a nonzero univariate Laurent polynomial.

    Segments are returned left to right, so root valuations decrease.  Their
    multiplicities add up to ``deg - ord``.
    """
    if g.nvars != 1:
        raise UnsupportedError("newton_polygon needs a univariate polynomial")
    if g.is_zero():
        raise ZeroPolyError("Newton polygon of the zero polynomial")
    pts = []
    loose = []
    lead = {}
    for (j,), a in g.terms:
        if a.terms:
            pts.append((j, a.valuation()))
            lead[j] = a.residue()
        else:
            loose.append((j, a.precision))
    if not pts:
        raise PrecisionError("no coefficient has a certified valuation")
    pts.sort()
    hull = _lower_hull(pts)
    lo, hi = hull[0][0], hull[-1][0]
    for j, p in loose:
        if j < lo or j > hi:
            raise PrecisionError(f"coefficient of degree {j} is zero only to O(t^{p})")
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= j <= x2:
                line = y1 + (y2 - y1) * Fraction(j - x1, x2 - x1)
                if p <= line:
                    raise PrecisionError(f"coefficient of degree {j} is zero only to O(t^{p})")
                break
    segs = []
    vals = dict(pts)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        r = -(y2 - y1) / (x2 - x1)
        w = y1 + x1 * r
        coeffs = [g.field.zero] * (x2 - x1 + 1)
        for j in range(x1, x2 + 1):
            if j in vals and vals[j] + j * r == w:
                coeffs[j - x1] = lead[j]
        segs.append(NewtonSegment(r, x2 - x1, tuple(coeffs), x1, x2, w))
    return segs


# ---------------------------------------------------------------------------
# plane tropical curves


@dataclass(frozen=True)
class TropEdge:
    """A one-dimensional cell of a plane tropical curve.

    ``kind`` is ``"segment"`` (``start`` to ``end`` vertex indices),
    ``"ray"`` (from ``start`` along ``direction``) or ``"line"`` (through
    ``point`` along ``direction``).  ``direction`` is a primitive integer
    vector; for segments it points from ``start`` to ``end``.
    """

    kind: str
    direction: tuple
    multiplicity: int
    start: int | None = None
    end: int | None = None
    point: tuple | None = None
    interval: tuple = dc_field(default=(None, None), repr=False)


@dataclass(frozen=True)
class TropCurve:
    vertices: tuple
    edges: tuple

    def contains(self, v):
        v = tuple(Fraction(x) for x in v)
        for e in self.edges:
            px, py = e.point
            dx, dy = e.direction
            rx, ry = v[0] - px, v[1] - py
            if rx * dy - ry * dx != 0:
                continue
            s = (rx * dx + ry * dy) / (dx * dx + dy * dy)
            lo, hi = e.interval
            if (lo is None or s >= lo) and (hi is None or s <= hi):
                return True
        return False

    def balancing(self):
        """Weighted sum of outgoing primitive directions at each vertex."""
        sums = [[0, 0] for _ in self.vertices]
        for e in self.edges:
            d, m = e.direction, e.multiplicity
            if e.kind in ("segment", "ray"):
                sums[e.start][0] += m * d[0]
                sums[e.start][1] += m * d[1]
            if e.kind == "segment":
                sums[e.end][0] -= m * d[0]
                sums[e.end][1] -= m * d[1]
        return [tuple(s) for s in sums]

    def is_balanced(self):
        return all(s == (0, 0) for s in self.balancing())


def _primitive(d):
    g = gcd(abs(d[0]), abs(d[1]))
    return (d[0] // g, d[1] // g)


def trop_curve(f):
    """Corner locus of ``v -> min_u (val(a_u) - <u, v>)`` for a bivariate ``f``.

    Every pair of monomials spans a candidate line; the part of it where that
    pair attains the minimum is cut out by the remaining monomials.  Cells
    are identified by their tying monomial set, whose lattice length is the
    multiplicity.  A Newton polytope of dimension one gives parallel lines.
    """
    if f.nvars != 2:
        raise UnsupportedError("trop_curve handles plane curves only (two variables)")
    if f.is_zero():
        raise ZeroPolyError("tropical curve of the zero polynomial")
    mons = []
    for u, a in f.terms:
        if not a.terms:
            raise PrecisionError("coefficient valuations must be certified for trop_curve")
        mons.append((u, a.valuation()))

    def weights_at(p):
        return [w - _dot(u, p) for u, w in mons]

    cells = {}
    for i in range(len(mons)):
        for j in range(i + 1, len(mons)):
            (ui, wi), (uj, wj) = mons[i], mons[j]
            d = (ui[0] - uj[0], ui[1] - uj[1])
            c = wi - wj
            nn = d[0] * d[0] + d[1] * d[1]
            p0 = (Fraction(c * d[0], nn), Fraction(c * d[1], nn))
            direction = _primitive((-d[1], d[0]))
            lo = hi = None
            empty = False
            for k, (uk, wk) in enumerate(mons):
                if k in (i, j):
                    continue
                du = (uk[0] - ui[0], uk[1] - ui[1])
                alpha = (wk - wi) - _dot(du, p0)
                beta = du[0] * direction[0] + du[1] * direction[1]
                if beta == 0:
                    if alpha < 0:
                        empty = True
                        break
                elif beta > 0:
                    bound = alpha / beta
                    hi = bound if hi is None else min(hi, bound)
                else:
                    bound = alpha / beta
                    lo = bound if lo is None else max(lo, bound)
            if empty or (lo is not None and hi is not None and lo >= hi):
                continue
            if lo is None and hi is None:
                s_mid = Fraction(0)
            elif lo is None:
                s_mid = hi - 1
            elif hi is None:
                s_mid = lo + 1
            else:
                s_mid = (lo + hi) / 2
            mid = (p0[0] + s_mid * direction[0], p0[1] + s_mid * direction[1])
            ws = weights_at(mid)
            wmin = min(ws)
            tying = frozenset(k for k, w in enumerate(ws) if w == wmin)
            if tying in cells:
                continue
            proj = sorted(tying, key=lambda k: mons[k][0][0] * d[0] + mons[k][0][1] * d[1])
            a, b = mons[proj[0]][0], mons[proj[-1]][0]
            mult = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
            cells[tying] = (p0, direction, lo, hi, mult)

    vertices = []
    vindex = {}

    def vertex(p0, direction, s):
        p = (p0[0] + s * direction[0], p0[1] + s * direction[1])
        if p not in vindex:
            vindex[p] = len(vertices)
            vertices.append(p)
        return vindex[p]

    edges = []
    for tying in sorted(cells, key=lambda t: tuple(sorted(t))):
        p0, direction, lo, hi, mult = cells[tying]
        if lo is not None and hi is not None:
            a, b = vertex(p0, direction, lo), vertex(p0, direction, hi)
            edges.append(TropEdge("segment", direction, mult, a, b, p0, (lo, hi)))
        elif lo is not None:
            a = vertex(p0, direction, lo)
            edges.append(TropEdge("ray", direction, mult, a, None, p0, (lo, None)))
        elif hi is not None:
            a = vertex(p0, direction, hi)
            neg = (-direction[0], -direction[1])
            # reparametrize along the outgoing direction: s -> -s
            edges.append(TropEdge("ray", neg, mult, a, None, p0, (-hi, None)))
        else:
            if direction[0] < 0 or (direction[0] == 0 and direction[1] < 0):
                direction = (-direction[0], -direction[1])
            edges.append(TropEdge("line", direction, mult, None, None, p0, (None, None)))
    return TropCurve(tuple(vertices), tuple(edges))
