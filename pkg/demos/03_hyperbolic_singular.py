"""Where does the hyperbolic Frégier locus degenerate?

The locus of a hyperbolic circle family is a regular conic for most
radii.  Scanning its determinant finds the parameters where it splits;
roots of even order are caught by minimising the smallest singular value.
"""
from fregier import FamilySpec, closed_form_locus, singular_scan

for tag, fixed, sweep in [
    ("hy_general", {"a": 2.0}, "b:0.05:3:0.001"),
    ("hy_parabola", {"mu": 1.0}, "lam:-3:1:0.01"),
    ("hy_circle_real", {}, "lam:-3.003:1:0.01"),
    ("hy_horocycle", {}, "lam:-2:2:0.01"),
]:
    res = singular_scan(tag, fixed, sweep)
    print(res.summary(), end="")

spec = FamilySpec("hy_circle_real", lam=-2.0)
loc = closed_form_locus(spec)
print("at lam = -2 the locus is a", loc.kind, "on", loc.carriers[0].coords)
print("real range on the carrier:", [(round(a, 3), round(b, 3)) for a, b in loc.real_range])
