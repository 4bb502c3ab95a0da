"""Square root of 1 + t by Newton lifting (the Appendix iteration on the simplest example).

Each step reads the Newton polygon of the Hasse expansion f(x + h) and adds the
leading term of the correction.  The result is compared with the binomial
series (1 + t)^(1/2) = sum binom(1/2, k) t^k.

    python3 demos/sqrt_binomial.py
"""

from fractions import Fraction

from tropfiber import LiftBudget, hasse_delta, lift_root, parse_poly, parse_series

f = parse_poly("z^2 - (1+t)")
print("f =", f.to_text())
print("Hasse expansion at z = 1:", [c.to_text() for c in hasse_delta(f, parse_series("1"))])

root = lift_root(f, 0, 1, LiftBudget(8))
print("root   =", root.series().to_text())
print("steps  =", [f"{c}*t^{e}" for e, c in root.steps])
print("val f(x_j) per iteration:", [str(v) for v in root.residual_valuations])

binom = [Fraction(1)]
for k in range(1, 8):
    binom.append(binom[-1] * (Fraction(1, 2) - k + 1) / k)
print("binomial coefficients:", [str(c) for c in binom])
print("match:", [root.value.coefficient(k) for k in range(8)] == binom)
