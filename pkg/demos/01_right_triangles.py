"""Right triangles inscribed in an ellipse all have hypotenuses through one point.

Pick a point p on the ellipse x^2/4 + y^2 = 1.  Every chord q r seen from p
under a right angle passes through the Frégier point f of p.  Both
constructions (real chords, isotropic lines) give the same f.
"""
import numpy as np

from fregier import EUCLIDEAN, fregier_point_chords, fregier_point_isotropic, right_chord

c = np.diag([-1.0, 0.25, 1.0])
t = 0.8
p = np.array([1.0, 2 * np.cos(t), np.sin(t)])

f = fregier_point_isotropic(EUCLIDEAN, c, p)
print("p =", p[1:], " f =", f.coords[1:] / f.coords[0])
print("chord route:", fregier_point_chords(EUCLIDEAN, c, p).coords[1:])

for angle in np.linspace(0.2, 2.8, 6):
    q, r = right_chord(EUCLIDEAN, c, p, angle)
    hyp = np.cross(q, r)
    leg1, leg2 = q[1:] / q[0] - p[1:], r[1:] / r[0] - p[1:]
    print(f"angle {angle:.2f}: leg dot {leg1 @ leg2:+.1e}, "
          f"f on hypotenuse {hyp @ f.coords / np.linalg.norm(hyp):+.1e}")

# the affine formula for an ellipse with semi-axes A, B
A, B = 2.0, 1.0
k = (A * A - B * B) / (A * A + B * B)
print("closed form:", k * p[1], -k * p[2])
