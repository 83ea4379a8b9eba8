"""Contact with the absolute decides the pencil class.

A conic and the absolute span a pencil.  How they meet (four points,
tangency, double contact, osculation) shows up in the multiplicities of
the singular members and of the base points.
"""
import numpy as np

from fregier import HYPERBOLIC, FamilySpec, classify

absolute = HYPERBOLIC.absolute
for conic in [
    np.diag([-1.0, 0.25, 4.0]),
    FamilySpec("hy_parabola", lam=1.0, mu=1.0).conic(),
    FamilySpec("hy_circle_real", lam=0.5).conic(),
    FamilySpec("hy_osc_parabola", lam=1.0).conic(),
    FamilySpec("hy_horocycle", lam=1.0).conic(),
]:
    pc = classify(conic, absolute)
    roots = [(m.multiplicity, m.rank.rank) for m in pc.singular_members]
    print(f"{pc.label:16s} base point multiplicities {pc.multiplicities}  "
          f"(root multiplicity, member rank) {roots}")
