"""Pictures: right triangles, hypotenuses and the locus.

Writes SVG files into the directory given on the command line (default:
the current directory).
"""
import pathlib
import sys

import numpy as np

from fregier import EUCLIDEAN, HYPERBOLIC, FamilySpec, Viewport, closed_form_locus, render_svg

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

# the ellipse x^2/4 + y^2 = 1 and one of its points
spec = FamilySpec("eu_general", a=1.0, b=0.25)
p = np.array([1.0, 2 * np.cos(0.9), np.sin(0.9)])
svg = render_svg(EUCLIDEAN, spec.conic(), point=p, triangles=6,
                 locus=closed_form_locus(spec), viewport=Viewport(-2.5, 2.5, -2.5, 2.5))
(out / "ellipse.svg").write_text(svg)

spec = FamilySpec("hy_circle_real", lam=-2.0)
svg = render_svg(HYPERBOLIC, spec.conic(), show_absolute=True, locus=closed_form_locus(spec),
                 viewport=Viewport(-1.5, 1.5, -1.5, 1.5))
(out / "hyperbolic_circle.svg").write_text(svg)

for f in sorted(out.glob("*.svg")):
    print(f, f.stat().st_size, "bytes")
