"""Cayley-Klein absolutes: perpendicularity, isotropic lines, normals."""
from __future__ import annotations

import warnings

import numpy as np

from .conic import Conic, conics_equal, matrix_of, solve_binary_quadratic
from .errors import IsotropicLineWarning, IsotropicTangent, OnAbsolute, UnsupportedAbsolute
from .projective import DEFAULT_TOL, ProjLine, Tolerance, coords_of, normalize

KINDS = ("euclidean", "pseudo_euclidean", "elliptic", "hyperbolic")

_DUAL = {
    "euclidean": np.diag([0.0, 1.0, 1.0]),
    "pseudo_euclidean": np.diag([0.0, 1.0, -1.0]),
    "elliptic": np.diag([1.0, 1.0, 1.0]),
    "hyperbolic": np.diag([-1.0, 1.0, 1.0]),
}
_PRIMAL = {
    "elliptic": np.diag([1.0, 1.0, 1.0]),
    "hyperbolic": np.diag([-1.0, 1.0, 1.0]),
}


class Geometry:
    """One of the four supported planes.

    ``dual`` is the dual absolute, a form on line coordinates; ``absolute``
    is the primal absolute conic, or ``None`` for the two planes whose
    absolute only exists as a degenerate dual form.
    """

    __slots__ = ("kind", "dual", "absolute")

    def __init__(self, kind: str):
        kind = kind.replace("-", "_").lower()
        if kind not in KINDS:
            raise ValueError(f"unknown geometry {kind!r}; expected one of {KINDS}")
        dual = _DUAL[kind].copy()
        dual.setflags(write=False)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "absolute", Conic(_PRIMAL[kind]) if kind in _PRIMAL else None)

    def __setattr__(self, name, value):
        raise AttributeError("Geometry is immutable")

    @property
    def cli_name(self) -> str:
        return self.kind.replace("_", "-")

    def __eq__(self, other):
        return isinstance(other, Geometry) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"Geometry({self.kind!r})"


EUCLIDEAN = Geometry("euclidean")
PSEUDO_EUCLIDEAN = Geometry("pseudo_euclidean")
ELLIPTIC = Geometry("elliptic")
HYPERBOLIC = Geometry("hyperbolic")


def geometry(name, absolute=None) -> Geometry:
    """Geometry by name; a custom absolute must equal the canonical one."""
    if isinstance(name, Geometry):
        g = name
    else:
        g = Geometry(name)
    if absolute is not None:
        if g.absolute is None or not conics_equal(absolute, g.absolute):
            raise UnsupportedAbsolute(f"only the canonical absolute is supported for {g.kind}")
    return g


def line_norm(g: Geometry, line) -> complex | float:
    """Value of the dual absolute on a normalized line."""
    l = normalize(coords_of(line))
    return (l @ g.dual @ l).item()


def is_isotropic(g: Geometry, line, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(line_norm(g, line)) <= tol.eps_abs + tol.eps_rel


def perpendicular(g: Geometry, l, m, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether two lines are perpendicular in ``g``.

    Warns with :class:`IsotropicLineWarning` if either line is isotropic,
    since every line through its absolute point is then "perpendicular".
    """
    a = normalize(coords_of(l))
    b = normalize(coords_of(m))
    for x in (a, b):
        if abs(x @ g.dual @ x) <= tol.eps_abs + tol.eps_rel:
            warnings.warn("isotropic line: perpendicularity degenerates", IsotropicLineWarning, stacklevel=2)
            break
    return bool(abs(a @ g.dual @ b) <= tol.eps_abs + tol.eps_rel)


def perpendicular_through(g: Geometry, line, p) -> np.ndarray:
    """Raw coordinates of the line through ``p`` perpendicular to ``line``."""
    return np.cross(coords_of(p), g.dual @ coords_of(line))


def lines_through(p) -> tuple[np.ndarray, np.ndarray]:
    """Two independent lines spanning the pencil through ``p``."""
    p = coords_of(p)
    k = int(np.argmax(np.abs(p)))
    es = [np.eye(3)[i] for i in range(3) if i != k]
    return np.cross(p, es[0]), np.cross(p, es[1])


def isotropic_lines(g: Geometry, p, tol: Tolerance = DEFAULT_TOL) -> tuple[ProjLine, ProjLine]:
    """The two self-perpendicular lines through ``p`` (complex in general)."""
    p = coords_of(p)
    l1, l2 = lines_through(p)
    l1 = l1 / np.linalg.norm(l1)
    l2 = l2 / np.linalg.norm(l2)
    d = g.dual
    roots = solve_binary_quadratic(l1 @ d @ l1, l1 @ d @ l2, l2 @ d @ l2, tol)
    if roots is None or roots[0] == roots[1]:
        raise OnAbsolute("the isotropic lines through p coincide")
    lines = []
    for s, t in roots:
        v = normalize(s * l1 + t * l2)
        if np.max(np.abs(v.imag)) <= tol.eps_abs:
            v = v.real.copy()
        lines.append(ProjLine(v))
    a, b = lines
    if np.max(np.abs(normalize(a.coords) - normalize(b.coords))) <= tol.eps_abs + tol.eps_rel:
        raise OnAbsolute("the isotropic lines through p coincide")
    return a, b


def normal_line(g: Geometry, c, p, tol: Tolerance = DEFAULT_TOL) -> ProjLine:
    """Line through ``p`` perpendicular to the tangent of ``c`` at ``p``."""
    t = matrix_of(c) @ coords_of(p)
    if is_isotropic(g, t, tol):
        raise IsotropicTangent("tangent at p is isotropic")
    n = perpendicular_through(g, t, p)
    if np.linalg.norm(n) <= tol.eps_abs:
        raise IsotropicTangent("normal is undefined at p")
    return ProjLine(n)
