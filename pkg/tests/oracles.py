"""Independent oracles and generators shared by the unit and acceptance tests."""

import math
from fractions import Fraction as F

from tropfiber import QQ, LaurentPoly, Series


def binomial_sqrt_coeffs(n):
    """First n coefficients of (1+t)^(1/2): c_k = c_(k-1) * (1/2 - k + 1) / k."""
    out = [F(1)]
    for k in range(1, n):
        out.append(out[-1] * (F(1, 2) - k + 1) / k)
    return out


def linear_product(roots, field=QQ):
    """prod (z - r) for a list of exact series r (repeats allowed)."""
    z = LaurentPoly.variable(0, 1, field)
    f = LaurentPoly.constant(field.one, 1, field)
    for r in roots:
        f = f * (z - LaurentPoly.constant(r, 1, field))
    return f


ROOT_VALUATIONS = [F(-1), F(-1, 2), F(0), F(1, 3), F(1), F(3, 2)]
ROOT_RESIDUES = [F(1), F(-1), F(2), F(-3), F(1, 2)]


def random_root_product(rng):
    """Monic product of 2-4 linear factors with distinct (valuation, residue) data.

    Returns ``(f, {root: multiplicity})``.  Roots are exact series with up to
    three higher terms (exponents in steps of 1/2 above the valuation).
    """
    nfactors = rng.randint(2, 4)
    ndistinct = rng.randint(1, nfactors) if nfactors > 2 else rng.randint(1, 2)
    if ndistinct == 1 and nfactors > 1 and rng.random() < 0.5:
        ndistinct = 2
    data = rng.sample([(v, a) for v in ROOT_VALUATIONS for a in ROOT_RESIDUES], ndistinct)
    roots = []
    for v, a in data:
        terms = [(v, a)]
        for _ in range(rng.randint(0, 3)):
            e = v + F(rng.randint(1, 8), 2)
            terms.append((e, F(rng.randint(-4, 4), rng.randint(1, 3))))
        roots.append(Series(QQ, terms))
    mults = [1] * ndistinct
    for _ in range(nfactors - ndistinct):
        mults[rng.randrange(ndistinct)] += 1
    factors = [r for r, m in zip(roots, mults) for _ in range(m)]
    rng.shuffle(factors)
    return linear_product(factors), dict(zip(roots, mults))


def _mul_terms(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def residual_valuation(f, x):
    """nu(f(x)) for f with exact coefficients at a point of finite series.

    Independent of the library's Series arithmetic: terms are convolved as plain
    {exponent: coefficient} dicts, using only the ``terms`` of each coordinate.
    Negative powers are cleared by evaluating g = x^(-m) f(x), where m_i is
    the lowest exponent of variable i, so nu(f(x)) = nu(g) + sum m_i nu(x_i).
    ``x`` may be a single series (univariate f).  Returns math.inf when
    f(x) is exactly zero.
    """
    assert f.is_exact()
    xs = (x,) if hasattr(x, "terms") and not isinstance(x, tuple) else tuple(x)
    assert len(xs) == f.nvars
    monos = [u for u, _ in f]
    lows = [min(u[i] for u in monos) for i in range(f.nvars)]
    highs = [max(u[i] for u in monos) for i in range(f.nvars)]
    one = {F(0): f.field.one}
    powers = []
    for xi, lo, hi in zip(xs, lows, highs):
        table = [one]
        for _ in range(hi - lo):
            table.append(_mul_terms(table[-1], dict(xi.terms)))
        powers.append(table)
    total = {}
    for u, c in f:
        acc = dict(c.terms)
        for i, j in enumerate(u):
            acc = _mul_terms(acc, powers[i][j - lows[i]])
        for e, a in acc.items():
            total[e] = total.get(e, 0) + a
    total = [e for e, a in total.items() if a]
    if not total:
        return math.inf
    return min(total) + sum(lo * xi.valuation() for lo, xi in zip(lows, xs))
