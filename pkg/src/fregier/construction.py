"""Frégier points.

Two independent routes are provided.  :func:`fregier_point_chords` works
with real right-angle chords only and serves as the reference;
:func:`fregier_point_isotropic` takes the pole of the line joining the
second intersections of the isotropic lines through ``p`` and is the one
used by the locus machinery.
"""
from __future__ import annotations

import itertools

import numpy as np

from .conic import matrix_of, rank_classify, second_intersection
from .errors import DegenerateChord, IsotropicTangent, NumericalInstability, SingularConic
from .metric import Geometry, is_isotropic, isotropic_lines, lines_through, perpendicular_through
from .projective import DEFAULT_TOL, ProjPoint, Tolerance, coords_of, normalize, realify, unit

# pencil angles tried for the chord construction, in order
CHORD_ANGLES = (0.37, 1.21, 2.03, 2.71, 0.83, 1.67)


def _check_inputs(g: Geometry, c, p, tol: Tolerance):
    m = matrix_of(c)
    if rank_classify(m, tol).rank < 3:
        raise SingularConic("the conic must be regular")
    p = coords_of(p)
    if abs(normalize(p) @ (m / np.max(np.abs(m))) @ normalize(p)) > 1e-7:
        raise ValueError("p does not lie on the conic")
    if is_isotropic(g, m @ p, tol.scaled(100)):
        raise IsotropicTangent("tangent at p is isotropic")
    return m, p


def _far(a, b) -> float:
    """Projective separation of two points (0 when equal)."""
    return float(np.linalg.norm(np.cross(unit(a), unit(b))))


def right_chord(g: Geometry, c, p, angle: float, tol: Tolerance = DEFAULT_TOL):
    """Right triangle (q, r) inscribed in ``c`` with right angle at ``p``.

    ``angle`` picks the leg ``p q`` from the pencil of lines through ``p``.
    """
    m = matrix_of(c)
    p = coords_of(p)
    l1, l2 = lines_through(p)
    leg = np.cos(angle) * unit(l1) + np.sin(angle) * unit(l2)
    if is_isotropic(g, leg, tol.scaled(1e3)):
        raise DegenerateChord("leg is isotropic")
    other = perpendicular_through(g, leg, p)
    q = second_intersection(m, p, np.cross(leg, p))
    r = second_intersection(m, p, np.cross(other, p))
    if min(_far(q, p), _far(r, p)) < 1e-6 or _far(q, r) < 1e-6:
        raise DegenerateChord("a leg is tangent at p")
    return normalize(q), normalize(r)


def _chord_lines(g, c, p, angles, tol):
    out = []
    for a in angles:
        try:
            q, r = right_chord(g, c, p, a, tol)
        except DegenerateChord:
            continue
        out.append(unit(np.cross(q, r)))
    return out


def fregier_point_chords(g: Geometry, c, p, angles=None, tol: Tolerance = DEFAULT_TOL,
                         check: bool = True) -> ProjPoint:
    """Common point of the hypotenuses of right triangles at ``p``.

    Uses the best-conditioned pair of hypotenuses among ``angles``.  With
    ``check`` a third hypotenuse must pass through the result.
    """
    m, p = _check_inputs(g, c, p, tol)
    chords = _chord_lines(g, m, p, CHORD_ANGLES if angles is None else angles, tol)
    if len(chords) < 2:
        raise DegenerateChord("fewer than two usable right chords at p")
    i, j = max(itertools.combinations(range(len(chords)), 2),
               key=lambda ij: np.linalg.norm(np.cross(chords[ij[0]], chords[ij[1]])))
    sep = np.linalg.norm(np.cross(chords[i], chords[j]))
    if sep < 1e-9:
        # every hypotenuse is the same line: p is where the conic meets the absolute
        raise DegenerateChord("all hypotenuses coincide")
    f = unit(np.cross(chords[i], chords[j]))
    if check:
        for k, h in enumerate(chords):
            if k not in (i, j) and abs(h @ f) > 1e-6:
                raise NumericalInstability("hypotenuses are not concurrent")
    return ProjPoint(normalize(f))


def isotropic_projections(g: Geometry, c, p, tol: Tolerance = DEFAULT_TOL):
    """Second intersections of ``c`` with the two isotropic lines through ``p``."""
    m = matrix_of(c)
    p = coords_of(p)
    pts = []
    for line in isotropic_lines(g, p, tol):
        w = np.cross(line.coords, p)
        x = second_intersection(m, p.astype(np.complex128), w)
        if _far(x, p) < 1e-9:
            raise IsotropicTangent("an isotropic line through p is tangent to the conic")
        pts.append(normalize(x))
    return pts[0], pts[1]


def fregier_point_isotropic(g: Geometry, c, p, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Pole of the line joining the isotropic projections of ``p``."""
    m, p = _check_inputs(g, c, p, tol)
    i, j = isotropic_projections(g, m, p, tol)
    line = np.cross(i, j)
    if np.linalg.norm(line) < 1e-12:
        raise DegenerateChord("isotropic projections coincide")
    f = np.linalg.solve(m.astype(line.dtype), line)
    return realify(ProjPoint(f), tol.scaled(1e3))


fregier_point = fregier_point_isotropic


def involution_image(g: Geometry, c, p, q, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Partner of ``q`` under the right-angle involution at ``p``.

    The line through ``p`` perpendicular to ``p q`` meets the conic again
    at the returned point; it is ``p`` itself when ``p q`` is the normal.
    """
    m = matrix_of(c)
    p = coords_of(p)
    q = coords_of(q)
    if _far(p, q) < 1e-9:
        raise DegenerateChord("q coincides with p")
    leg = np.cross(p, q)
    other = perpendicular_through(g, leg, p)
    if np.linalg.norm(np.cross(unit(other), unit(leg))) < 1e-12:
        return ProjPoint(normalize(q))
    r = second_intersection(m, p, np.cross(other, p))
    return ProjPoint(normalize(r))
