"""Many points in one tropical fiber (paper Prop. "hypersurface").

For f = x*y - (1+t) and the residue point (1, 1) at valuation (0, 0) the fiber
TTrop^-1 is infinite: perturb x by a random series of positive valuation,
then lift the root y of the specialized polynomial.  Different seeds give
different points with the same valuations and residues.

    python3 demos/fiber_sampling.py
"""

from tropfiber import LiftBudget, parse_poly, reduction_form, sample_fiber

for text, residues in (("x + y + 1", (1, -2)), ("x*y - (1+t)", (1, 1))):
    f = parse_poly(text)
    print(f"== f = {f.to_text()}, v = (0, 0), residues {residues}")
    print("   reduction form:", reduction_form(f, (0, 0)).to_text(), "-> vanishes at residues:",
          not reduction_form(f, (0, 0)).evaluate(residues))
    pts = sample_fiber(f, (0, 0), residues, 5, LiftBudget(6), seed=1)
    for pt in pts:
        coords = ", ".join(c.to_text() for c in pt.coords)
        print(f"   ({coords})   val f >= {pt.achieved_precision}")
    print()
