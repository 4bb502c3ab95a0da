"""Artin-Schreier: roots of z^p - z - t^-1 over F_p (paper §2.1 Remark).

The paper's example of why the series field needs transfinite exponent
sequences: the roots are t^(-1/p) + t^(-1/p^2) + ... + c with c in F_p.
Each Newton step finds one more term of the accumulating sequence; the
budget stops the iteration, and the p constants come from the translation
symmetry z -> z + c of the polynomial.

    python3 demos/artin_schreier.py
"""

from tropfiber import FiniteField, LiftBudget, enumerate_roots, newton_polygon, parse_poly, translation_periods

for p in (2, 3, 5):
    K = FiniteField(p)
    f = parse_poly(f"z^{p} - z - t^-1", K)
    print(f"== p = {p}: f = {f.to_text()}")
    (seg,) = newton_polygon(f)
    print(f"   Newton polygon: one segment, root valuation {seg.root_valuation}, multiplicity {seg.multiplicity}")
    print(f"   translation periods f(z + c) = f(z): c in {[K.render(c) for c in translation_periods(f)]}")
    rep = enumerate_roots(f, LiftBudget(10, max_terms=4))
    for r in rep.roots:
        print(f"   root: {r.value.to_text()}   [{r.status.value}, residuals {[str(v) for v in r.residual_valuations]}]")
    print()
