"""Frégier loci of Euclidean conics.

As p runs over the conic, f traces a second conic.  It is a scaled copy
for an ellipse, a single point for a circle, the line at infinity for a
rectangular hyperbola, and a translated copy for a parabola.
"""
import numpy as np

from fregier import EUCLIDEAN, FamilySpec, closed_form_locus, conics_equal, locus_fit

cases = {
    "ellipse a=1 b=1/4": FamilySpec("eu_general", a=1.0, b=0.25),
    "circle a=b=2": FamilySpec("eu_general", a=2.0, b=2.0),
    "rectangular hyperbola": FamilySpec("eu_general", a=1.0, b=-1.0),
    "parabola a=0.5": FamilySpec("eu_parabola", a=0.5),
}

for name, spec in cases.items():
    fit = locus_fit(EUCLIDEAN, spec.conic(), n=48)
    cf = closed_form_locus(spec)
    same = conics_equal(fit.conic, cf.conic)
    print(f"{name:24s} kind={fit.kind:6s} fitted == closed form: {same}")
    if fit.kind == "conic":
        print("    locus coefficients", np.round(fit.conic.coefficients(), 6))
    elif fit.kind == "point":
        print("    locus point", fit.point.coords)
    else:
        print("    carrier", fit.carriers[0].coords)
