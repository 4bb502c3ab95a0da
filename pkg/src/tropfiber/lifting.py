"""Lifting residue roots to series roots, and sampling tropical fibers.

The univariate engine is Newton's method read tropically.  After scaling so
the wanted root has valuation 0 and residue ``a``, start from ``x = a`` and
repeat: expand ``f(x + h) = y + c'_1 h + ... + c'_d h^d`` with Hasse
derivatives (valid in any characteristic), take the Newton polygon of that
expansion in ``h``, and add the leading term ``b t^s`` of its nearest root.
``s`` solves ``min_j(val c'_j + j s) = val y`` and ``b`` is a root of the
edge polynomial, so ``val f(x)`` strictly increases.  The transfinite
iteration is cut off by a :class:`LiftBudget`.

Enumeration follows every edge and every root of every edge polynomial, so a
cluster of ``m`` roots splits into its branches whenever they separate inside
the residue field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import (
    DegenerateSpecialization,
    InvalidResidue,
    InvariantViolation,
    PrecisionError,
    ResidueNotInField,
    UnsupportedError,
    ZeroPolyError,
)
from .fields import FiniteField, poly_eval
from .laurent import LaurentPoly
from .series import EXACT, Series
from .tropical import _lower_hull, newton_polygon, reduction_form

__all__ = [
    "LiftBudget",
    "LiftStatus",
    "LiftedRoot",
    "LiftFailure",
    "RootEnumeration",
    "FiberPoint",
    "FiberSample",
    "hasse_delta",
    "newton_step",
    "lift_root",
    "enumerate_roots",
    "translation_periods",
    "lift_hypersurface_point",
    "sample_fiber",
]

# exact re-evaluation is attempted when value^deg has at most this many terms
_EXACT_CHECK_LIMIT = 20000


@dataclass(frozen=True)
class LiftBudget:
    """Finite stand-in for transfinite iteration.

    ``target_precision`` is the precision to which the root itself should be
    known (``O(t^target)``); ``max_terms`` caps the number of terms in the
    approximation and ``max_iterations`` the number of Newton steps.
    """

    target_precision: Fraction = Fraction(10)
    max_terms: int = 64
    max_iterations: int = 256

    def __post_init__(self):
        object.__setattr__(self, "target_precision", Fraction(self.target_precision))
        if self.max_terms < 1 or self.max_iterations < 1:
            raise ValueError("budget limits must be positive")


class LiftStatus(str, Enum):
    CERTIFIED_EXACT = "CERTIFIED_EXACT"
    PRECISION_REACHED = "PRECISION_REACHED"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class LiftedRoot:
    """An approximate root together with its certificate.

    ``value`` is the last Newton iterate, an exact finite sum.  ``accuracy``
    bounds the distance to the roots it stands for: all ``multiplicity`` of
    them agree with ``value`` modulo ``t^accuracy``.  ``achieved_precision``
    is a certified lower bound for ``val f(value)``, obtained by evaluating
    ``f`` again at the end.  ``residual_valuations`` records ``val f(x_j)``
    along the iteration.  ``shift`` is the period translate that produced
    this root, if any (see :func:`translation_periods`).
    """

    value: Series
    multiplicity: int
    achieved_precision: object
    status: LiftStatus
    valuation: Fraction
    residue: object
    accuracy: object
    residual_valuations: tuple = ()
    steps: tuple = ()
    shift: object = None

    def series(self):
        """``value`` truncated at ``accuracy``: a certified truncation of the root."""
        return self.value.truncate(self.accuracy)


@dataclass(frozen=True)
class LiftFailure:
    """Roots that could not be produced inside the residue field."""

    valuation: Fraction
    multiplicity: int
    reason: str
    poly: tuple = ()
    residue: object = None


@dataclass
class RootEnumeration:
    roots: list
    failures: list
    expected: int

    @property
    def total_multiplicity(self):
        return sum(r.multiplicity for r in self.roots)

    @property
    def complete(self):
        return not self.failures and self.total_multiplicity == self.expected


# ---------------------------------------------------------------------------
# Hasse expansion and single steps


def _taylor(coeffs, x, cap=EXACT):
    """Coefficients of ``f(x + h)`` in ``h`` for ``f = sum coeffs[i] z^i``."""
    d = len(coeffs) - 1
    field = x.field
    powers = [Series.one(field)]
    for _ in range(d):
        powers.append(powers[-1].mul(x, cap))
    out = []
    for j in range(d + 1):
        acc = Series.zero(field, cap)
        for i in range(j, d + 1):
            c = coeffs[i]
            if c.is_exact_zero():
                continue
            b = comb(i, j)
            if field.characteristic:
                b %= field.characteristic
                if not b:
                    continue
            term = c.mul(powers[i - j], cap)
            if b != 1:
                term = term.scale(field(b))
            acc = acc + term
        out.append(acc)
    return out


def _polynomial_coeffs(f):
    """(ord, coefficient list) of ``z^(-ord) f``, a polynomial with nonzero constant term."""
    if f.nvars != 1:
        raise UnsupportedError("expected a univariate polynomial")
    if f.is_zero():
        raise ZeroPolyError("zero polynomial")
    return f.coefficient_list()


def _dense_coeffs(f):
    """Coefficient list of ``f``, or of ``z^(-ord) f`` when ``f`` has negative exponents."""
    ord_, coeffs = _polynomial_coeffs(f)
    if ord_ > 0:
        coeffs = [Series.zero(f.field)] * ord_ + coeffs
    return coeffs


def hasse_delta(f, x, precision=EXACT):
    """Coefficients ``c'_1..c'_d`` of ``f(x + h) - f(x)``.

    A Laurent polynomial with negative exponents is first multiplied by
    ``z^(-ord)`` so it is a polynomial.  The expansion is binomial (Hasse
    derivatives), so it is valid in characteristic p.
    """
    coeffs = _dense_coeffs(f)
    if x.is_zero():
        raise PrecisionError("expansion point is zero to its precision")
    return _taylor(coeffs, x, precision)[1:]


def _edge_roots(field, seg):
    roots = field.roots(seg.residual_poly)
    roots.sort(key=lambda rm: field.sort_key(rm[0]))
    return roots


def _expansion_polygon(taylor):
    coeffs = [c for c in taylor]
    keep = [(j, c) for j, c in enumerate(coeffs) if c.terms]
    return LaurentPoly(1, [((j,), c) for j, c in keep], taylor[0].field)


def newton_step(f, x, budget=None):
    """One tropical Newton step at ``x``: returns ``(v_step, a_step)``.

    ``v_step`` solves ``min_j(val c'_j + j v) = val f(x)`` and ``a_step`` is
    the first root (in the field's order) of ``sum_J lc(c'_j) a^j = -lc(f(x))``
    over the indices ``J`` attaining that minimum.
    """
    coeffs = _dense_coeffs(f)
    cap = EXACT
    if budget is not None and not (x.is_exact() and all(c.is_exact() for c in coeffs)):
        cap = budget.target_precision * max(1, len(coeffs) - 1) + 1
    taylor = _taylor(coeffs, x, cap)
    y = taylor[0]
    if y.is_zero():
        raise PrecisionError("f(x) vanishes to the working precision; no step to take")
    Y = y.valuation()
    best = None
    for j, c in enumerate(taylor[1:], start=1):
        if c.terms:
            r = (Y - c.valuation()) / j
            best = r if best is None or r > best else best
    if best is None:
        raise PrecisionError("f(x + h) - f(x) vanishes to the working precision")
    poly = [y.residue()] + [x.field.zero] * (len(taylor) - 1)
    for j, c in enumerate(taylor[1:], start=1):
        if c.terms and c.valuation() + j * best == Y:
            poly[j] = c.residue()
    while not poly[-1]:
        poly.pop()
    roots = x.field.roots(poly)
    if not roots:
        raise ResidueNotInField(
            f"step polynomial {_poly_text(x.field, poly)} has no root in {x.field.name}", tuple(poly)
        )
    roots.sort(key=lambda rm: x.field.sort_key(rm[0]))
    return best, roots[0][0]


def _poly_text(field, coeffs):
    return LaurentPoly.from_coefficients(list(coeffs), field, names=("a",)).to_text()


# ---------------------------------------------------------------------------
# the lifting engine


class _Problem:
    """``f`` rescaled so the wanted roots have valuation 0."""

    def __init__(self, f, v, budget):
        self.f = f
        self.field = f.field
        self.v = Fraction(v)
        self.budget = budget
        self.ord, self.f0 = _polynomial_coeffs(f)
        self.d = len(self.f0) - 1
        weights = [c.valuation() + j * self.v for j, c in enumerate(self.f0) if c.terms]
        if not weights:
            raise PrecisionError("no coefficient has a certified valuation")
        self.w0 = min(weights)
        self.target = budget.target_precision - self.v
        self.W = max(self.target, Fraction(0)) * max(self.d, 1) + 1
        # normalized coefficients all have valuation >= 0, so truncating them is safe
        self.Fn = [c.scale_t(j * self.v - self.w0) for j, c in enumerate(self.f0)]
        self.F = [c.truncate(self.W) for c in self.Fn]
        for j, c in enumerate(self.F):
            if not c.terms and c.precision < self.W and c.precision <= 0:
                raise PrecisionError(f"coefficient of degree {j + self.ord} is too imprecise")
        self.exact = all(c.is_exact() for c in self.f0)

    def residual(self):
        """Edge polynomial at valuation v (coefficients lowest degree first)."""
        out = [c.residue() if c.terms and c.valuation() == 0 else self.field.zero for c in self.F]
        lo = next((i for i, c in enumerate(out) if c), None)
        if lo is None:
            return []
        out = out[lo:]
        while out and not out[-1]:
            out.pop()
        return out

    def to_original(self, Y):
        return Y + self.w0 + self.ord * self.v

    def certify(self, value):
        """(achieved precision, exact?) for ``f(value)``, by direct re-evaluation.

        ``f(value) = value^ord * t^w0 * F(value / t^v)``; the evaluation of
        ``F`` happens in normalized coordinates, where nothing has negative
        valuation.
        """
        x = value.scale_t(-self.v)
        shift = self.w0 + self.ord * self.v
        r = _horner(self.Fn, x, self.W)
        if r.terms:
            return r.valuation() + shift, False
        if self.exact and comb(len(x.terms) + self.d - 1, max(self.d, 1)) <= _EXACT_CHECK_LIMIT:
            if _horner(self.Fn, x, EXACT).is_exact_zero():
                return EXACT, True
        return r.precision + shift, False


def _horner(coeffs, x, cap):
    acc = Series.zero(x.field, cap)
    for c in reversed(coeffs):
        acc = acc.mul(x, cap) + (c.truncate(cap) if cap != EXACT else c)
    return acc


@dataclass
class _Branch:
    x: Series
    rho: Fraction
    mult: int
    hist: list = dc_field(default_factory=list)
    steps: list = dc_field(default_factory=list)
    iterations: int = 0

    def fork(self, x, rho, mult):
        return _Branch(x, rho, mult, list(self.hist), list(self.steps), self.iterations)


def _cluster_radius(taylor, P, mult):
    """Smallest root valuation among the ``mult`` cluster roots when ``val y >= P``."""
    pts = [(0, P)] + [(j, c.valuation()) for j, c in enumerate(taylor) if j and c.terms]
    hull = _lower_hull(sorted(pts))
    best = None
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 >= mult:
            break
        s = -(y2 - y1) / (x2 - x1)
        best = s if best is None else min(best, s)
    return best


def _finish(prob, br, mult, accuracy, status):
    value = br.x.scale_t(prob.v)
    achieved, exact = prob.certify(value)
    if exact:
        status = LiftStatus.CERTIFIED_EXACT
        acc = EXACT
    else:
        acc = accuracy + prob.v if accuracy is not None else prob.v
    return LiftedRoot(
        value=value,
        multiplicity=mult,
        achieved_precision=achieved,
        status=status,
        valuation=prob.v,
        residue=br.x.residue(),
        accuracy=acc,
        residual_valuations=tuple(prob.to_original(Y) for Y in br.hist),
        steps=tuple((e + prob.v, c) for e, c in br.steps),
    )


def _run(prob, br, explore):
    """Advance one branch; returns a list of LiftedRoot / LiftFailure."""
    budget = prob.budget
    field = prob.field
    while True:
        taylor = _taylor(prob.F, br.x, prob.W)
        y = taylor[0]
        if not y.terms:
            acc = _cluster_radius(taylor, y.precision, br.mult)
            return [_finish(prob, br, br.mult, acc, LiftStatus.PRECISION_REACHED)]
        Y = y.valuation()
        if br.hist and Y <= br.hist[-1]:
            raise InvariantViolation(f"val f(x) did not increase: {br.hist[-1]} -> {Y}")
        br.hist.append(Y)
        segs = [s for s in newton_polygon(_expansion_polygon(taylor)) if s.root_valuation > br.rho]
        if sum(s.multiplicity for s in segs) != br.mult:
            raise InvariantViolation("cluster size disagrees with the expansion polygon")
        done = [s for s in segs if s.root_valuation >= prob.target]
        todo = [s for s in segs if s.root_valuation < prob.target]
        results = []
        if done:
            m = sum(s.multiplicity for s in done)
            acc = min(s.root_valuation for s in done)
            results.append(_finish(prob, br, m, acc, LiftStatus.PRECISION_REACHED))
            if not explore or not todo:
                return results
        out_of_budget = len(br.x.terms) >= budget.max_terms or br.iterations >= budget.max_iterations
        if out_of_budget:
            m = sum(s.multiplicity for s in todo)
            acc = min(s.root_valuation for s in todo)
            results.append(_finish(prob, br, m, acc, LiftStatus.BUDGET_EXHAUSTED))
            return results
        if not explore:
            seg = todo[0]
            roots = _edge_roots(field, seg)
            if not roots:
                raise ResidueNotInField(
                    f"step polynomial {_poly_text(field, seg.residual_poly)} has no root in {field.name}",
                    seg.residual_poly,
                )
            b, mu = roots[0]
            s = seg.root_valuation
            br.x = br.x + Series.monomial(b, s, field)
            br.steps.append((s, b))
            br.rho, br.mult = s, mu
            br.iterations += 1
            continue
        for seg in todo:
            s = seg.root_valuation
            roots = _edge_roots(field, seg)
            missing = seg.multiplicity - sum(mu for _, mu in roots)
            if missing:
                results.append(
                    LiftFailure(
                        prob.v,
                        missing,
                        f"step polynomial {_poly_text(field, seg.residual_poly)} "
                        f"has {missing} root(s) outside {field.name}",
                        seg.residual_poly,
                        br.x.residue(),
                    )
                )
            for b, mu in roots:
                child = br.fork(br.x + Series.monomial(b, s, field), s, mu)
                child.steps.append((s, b))
                child.iterations += 1
                results.extend(_run(prob, child, explore))
        return results


def _start(f, v, a, budget):
    budget = budget or LiftBudget()
    prob = _Problem(f, v, budget)
    a = prob.field(a)
    if not a:
        raise InvalidResidue("the residue must be nonzero")
    residual = prob.residual()
    if len(residual) < 2:
        raise InvalidResidue(f"no roots of valuation {prob.v}: the initial form is a monomial")
    m = 0
    cur = residual
    while len(cur) > 1 and not poly_eval(cur, a, prob.field.zero):
        m += 1
        cur = _deflate(cur, a)
    if not m:
        raise InvalidResidue(
            f"{prob.field.render(a)} is not a root of the residual polynomial "
            f"{_poly_text(prob.field, residual)}"
        )
    return prob, _Branch(Series.constant(a, prob.field), Fraction(0), m)


def _deflate(coeffs, a):
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * a
    return out


def lift_root(f, v, a, budget=None):
    """Lift the residue root ``a`` at valuation ``v`` to a series root of ``f``.

    Follows one branch (the nearest root at every step, first root in the
    field's order on ties).  Raises :class:`InvalidResidue` if ``a`` is not a
    root of the residual polynomial at ``v`` and :class:`ResidueNotInField`
    if some step needs a root the residue field does not have.
    """
    prob, br = _start(f, v, a, budget)
    (root,) = _run(prob, br, explore=False)
    return root


def translation_periods(f):
    """Nonzero constants ``c`` of the residue field with ``f(z + c) = f(z)``.

    Only finite residue fields can have them (in characteristic 0 the
    coefficient of ``z^(d-1)`` forces ``c = 0``).  The search is exhaustive,
    so it is skipped for fields with more than 4096 elements.
    """
    field = f.field
    if not isinstance(field, FiniteField) or field.q > 4096:
        return []
    if f.degree_range()[0] < 0:
        return []
    coeffs = _dense_coeffs(f)
    d = len(coeffs) - 1
    if d % field.p and coeffs[d].terms:
        return []
    out = []
    for c in field.elements()[1:]:
        shifted = _taylor(coeffs, Series.constant(c, field))
        if all((s - c0).is_zero() for s, c0 in zip(shifted, coeffs)):
            out.append(c)
    return out


def enumerate_roots(f, budget=None):
    """All roots of ``f`` in the multiplicative group, branch by branch.

    Every Newton polygon segment, every root of its residual polynomial and
    every later split of a cluster is followed.  Roots the residue field
    cannot supply are itemized in ``failures`` with their multiplicity.  A
    cluster that never splits within the budget, at negative valuation, is
    split by the translation periods of ``f`` when there are any: translating
    a root by a period gives another root with the same valuation and
    residue.
    """
    budget = budget or LiftBudget()
    ord_, coeffs = _polynomial_coeffs(f)
    expected = len(coeffs) - 1
    roots, failures = [], []
    periods = None
    for seg in newton_polygon(f):
        found = _edge_roots(f.field, seg)
        missing = seg.multiplicity - sum(mu for _, mu in found)
        if missing:
            failures.append(
                LiftFailure(
                    seg.root_valuation,
                    missing,
                    f"residual polynomial {_poly_text(f.field, seg.residual_poly)} "
                    f"has {missing} root(s) outside {f.field.name}",
                    seg.residual_poly,
                )
            )
        for a, _ in found:
            prob, br = _start(f, seg.root_valuation, a, budget)
            try:
                results = _run(prob, br, explore=True)
            except ResidueNotInField as exc:
                failures.append(LiftFailure(seg.root_valuation, br.mult, str(exc), exc.poly or (), a))
                continue
            for r in results:
                if isinstance(r, LiftFailure):
                    failures.append(r)
                    continue
                if r.multiplicity > 1 and r.valuation < 0 and r.status != LiftStatus.CERTIFIED_EXACT:
                    if periods is None:
                        periods = translation_periods(f)
                    group = len(periods) + 1
                    if periods and r.multiplicity % group == 0:
                        roots.extend(_translates(prob, r, periods, r.multiplicity // group))
                        continue
                roots.append(r)
    return RootEnumeration(roots, failures, expected)


def _translates(prob, root, periods, mult):
    out = []
    for c in [prob.field.zero] + list(periods):
        value = root.value + Series.constant(c, prob.field)
        achieved, exact = prob.certify(value)
        out.append(
            LiftedRoot(
                value=value,
                multiplicity=mult,
                achieved_precision=achieved,
                status=LiftStatus.CERTIFIED_EXACT if exact else root.status,
                valuation=root.valuation,
                residue=root.residue,
                accuracy=EXACT if exact else root.accuracy,
                residual_valuations=root.residual_valuations,
                steps=root.steps,
                shift=c,
            )
        )
    return out


# ---------------------------------------------------------------------------
# hypersurface points


@dataclass(frozen=True)
class FiberPoint:
    """A point of the hypersurface in a prescribed exploded fiber.

    ``trop`` is the valuation vector of ``coords`` and ``residues`` their
    leading coefficients.  ``root`` is the univariate lift that produced the
    solved coordinate; ``achieved_precision`` certifies ``val f(coords)``.
    """

    coords: tuple
    trop: tuple
    residues: tuple
    root: LiftedRoot = dc_field(compare=False, repr=False, default=None)
    achieved_precision: object = dc_field(compare=False, default=None)


class FiberSample(list):
    """List of FiberPoints; ``requested`` and ``attempts`` record how it was drawn."""

    def __init__(self, points=(), requested=0, attempts=0):
        super().__init__(points)
        self.requested = requested
        self.attempts = attempts

    @property
    def shortfall(self):
        return max(0, self.requested - len(self))


def _perturbation(rng, field, exponents=tuple(range(1, 9)), max_terms=3):
    n = rng.randint(1, max_terms)
    es = sorted(rng.sample(exponents, n))
    smalls = field.small_elements()
    return Series(field, [(e, rng.choice(smalls)) for e in es])


def _check_fiber_input(f, v, xbar):
    if f.nvars < 2:
        raise UnsupportedError("hypersurface lifting needs at least two variables; use lift_root")
    v = tuple(Fraction(x) for x in v)
    if len(v) != f.nvars or len(xbar) != f.nvars:
        raise ValueError("point and residues must have one entry per variable")
    xbar = tuple(f.field(c) for c in xbar)
    if any(not c for c in xbar):
        raise InvalidResidue("residues must be nonzero")
    form = reduction_form(f, v)
    if form.evaluate(xbar):
        raise InvalidResidue(
            f"residues do not satisfy the initial form {form.to_text()} for valuations {v}"
        )
    return v, xbar


def _fiber_point(f, v, xbar, budget, rng, retries, solve_for):
    field = f.field
    g = f.scale_variables(v)
    others = [i for i in range(f.nvars) if i != solve_for]
    last = None
    for _ in range(retries):
        ws = {i: Series.constant(xbar[i], field) + _perturbation(rng, field) for i in others}
        h = g.specialize(ws)
        if h.is_zero() or all(a.is_zero() for _, a in h.terms):
            last = "specialization vanishes"
            continue
        try:
            root = lift_root(h, 0, xbar[solve_for], budget)
        except InvalidResidue as exc:
            last = str(exc)
            continue
        coords = [None] * f.nvars
        coords[solve_for] = root.value.scale_t(v[solve_for])
        for i in others:
            coords[i] = ws[i].scale_t(v[i])
        coords = tuple(coords)
        trop = tuple(c.valuation() for c in coords)
        residues = tuple(c.residue() for c in coords)
        if trop != v or residues != xbar:
            raise InvariantViolation("lifted point left its exploded fiber")
        val = f.evaluate(coords, _certify_cap(f, coords, root))
        achieved = val.valuation() if val.terms else (EXACT if val.is_exact() else val.precision)
        return FiberPoint(coords, trop, residues, root, achieved)
    raise DegenerateSpecialization(f"no usable specialization after {retries} perturbations: {last}")


def _certify_cap(f, coords, root):
    if root.status == LiftStatus.CERTIFIED_EXACT:
        return EXACT
    return max(root.achieved_precision, Fraction(0)) + 2 * sum(abs(c.valuation()) for c in coords) + 1


def lift_hypersurface_point(f, v, xbar, budget=None, seed=0, retries=20, solve_for=0):
    """Lift residues ``xbar`` at valuation vector ``v`` to a point of ``f = 0``.

    The coordinates other than ``solve_for`` are fixed to ``xbar_i`` plus a
    seeded random higher-order perturbation; the remaining coordinate is
    lifted with :func:`lift_root`.  ``xbar`` must satisfy the reduction form
    of ``f`` at ``v`` (:func:`tropfiber.tropical.reduction_form`).
    """
    pts = sample_fiber(f, v, xbar, 1, budget, seed, retries=retries, solve_for=solve_for)
    return pts[0]


def sample_fiber(f, v, xbar, count, budget=None, seed=0, retries=20, solve_for=0):
    """Draw ``count`` distinct points of ``f = 0`` with valuations ``v`` and residues ``xbar``.

    Deterministic for a given seed; the first point equals
    :func:`lift_hypersurface_point` with the same seed.  If fewer distinct
    points turn up within ``20 * count`` draws the returned sample is short
    and ``shortfall`` says by how much.
    """
    budget = budget or LiftBudget()
    v, xbar = _check_fiber_input(f, v, xbar)
    rng = random.Random(seed)
    seen = set()
    points = FiberSample(requested=count)
    attempts = 0
    while len(points) < count and attempts < 20 * count:
        attempts += 1
        p = _fiber_point(f, v, xbar, budget, rng, retries, solve_for)
        if p.coords in seen:
            continue
        seen.add(p.coords)
        points.append(p)
    points.attempts = attempts
    return points
