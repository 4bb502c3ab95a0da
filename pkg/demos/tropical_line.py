"""The tropical line trop(x + y + 1) and functoriality of tropicalization.

Under the paper's sign convention (weight val(a_u) - <u, v>) the curve is three
rays from the origin, in directions (1,1), (-1,0) and (0,-1).  The second half
applies a monomial map to a torus point and checks Trop(phi(x)) = A Trop(x).

    python3 demos/tropical_line.py
"""

from tropfiber import (
    MonomialMap,
    TorusPoint,
    apply_map,
    exploded_point,
    init_form,
    parse_poly,
    parse_series,
    trop_curve,
    trop_member,
)


def fmt(vec):
    return "(" + ", ".join(str(a) for a in vec) + ")"


f = parse_poly("x + y + 1")
curve = trop_curve(f)
print("vertices:", [fmt(p) for p in curve.vertices])
for e in curve.edges:
    print(f"  {e.kind} from vertex {e.start} in direction {e.direction}, multiplicity {e.multiplicity}")
print("balanced:", curve.is_balanced())
for v in ((0, 0), (-3, 0), (2, 2), (1, 2)):
    print(f"  v = {v}: member = {trop_member(f, v)}, init form = {init_form(f, v).to_text()}")

x = TorusPoint([parse_series("2*t + t^2"), parse_series("3*t^-1")])
A = MonomialMap([[1, 1], [2, -1]])
y = apply_map(A, x, 4)
print("\nx        =", [c.to_text() for c in x])
print("phi(x)   =", [c.to_text() for c in y])
for name, pt in (("x", x), ("phi(x)", y)):
    v, res = exploded_point(pt)
    print(f"exploded {name:7}: valuations {fmt(v)}, residues {fmt(res)}")
print("A Trop(x)       :", fmt(A.act(exploded_point(x)[0])))
