"""Homogeneous points and lines of the projective plane.

Coordinates are stored as read-only numpy arrays.  Real objects carry a
``float64`` array, complex ones a ``complex128`` array; :func:`realify` is
the only way back from complex to real.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import CoincidentLines, CoincidentPoints, NotReal


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute thresholds applied to scale-normalized quantities."""

    eps_rel: float = 1e-9
    eps_abs: float = 1e-12

    def __post_init__(self):
        if not (self.eps_rel > 0 and self.eps_abs > 0):
            raise ValueError("tolerances must be strictly positive")
        if not (np.isfinite(self.eps_rel) and np.isfinite(self.eps_abs)):
            raise ValueError("tolerances must be finite")

    def scaled(self, factor: float) -> "Tolerance":
        return replace(self, eps_rel=self.eps_rel * factor, eps_abs=self.eps_abs * factor)

    def is_small(self, value, scale=1.0) -> bool:
        return bool(abs(value) <= self.eps_abs + self.eps_rel * abs(scale))


DEFAULT_TOL = Tolerance()


def _as_array(coords) -> np.ndarray:
    if isinstance(coords, _Homogeneous):
        return coords.coords
    arr = np.asarray(coords)
    if arr.shape != (3,):
        raise ValueError(f"expected 3 homogeneous coordinates, got shape {arr.shape}")
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128)
    else:
        arr = arr.astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def normalize(v) -> np.ndarray:
    """Scale ``v`` so that its largest-magnitude coordinate equals 1.

    For complex input this also removes the common phase.
    """
    v = np.asarray(v)
    a = np.abs(v)
    k = int(np.flatnonzero(a >= a.max() * (1 - 1e-9))[0])
    if v[k] == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / v[k]


def unit(v) -> np.ndarray:
    v = np.asarray(v)
    return v / np.linalg.norm(v)


class _Homogeneous:
    __slots__ = ("_coords",)

    def __init__(self, *coords):
        arr = _as_array(coords[0] if len(coords) == 1 else coords)
        if not np.any(arr):
            raise ValueError("homogeneous coordinates must not all vanish")
        arr.setflags(write=False)
        self._coords = arr

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self._coords)

    def normalized(self):
        return type(self)(normalize(self._coords))

    def isclose(self, other, tol: Tolerance = DEFAULT_TOL) -> bool:
        return equal_up_to_scale(self, other, tol)

    def __array__(self, dtype=None, copy=None):
        return np.array(self._coords, dtype=dtype)

    def __iter__(self):
        return iter(self._coords)

    def __len__(self):
        return 3

    def __getitem__(self, i):
        return self._coords[i]

    def __repr__(self):
        vals = ", ".join(f"{c:.6g}" for c in self._coords)
        return f"{type(self).__name__}({vals})"


class ProjPoint(_Homogeneous):
    __slots__ = ()


class ProjLine(_Homogeneous):
    __slots__ = ()


def coords_of(x) -> np.ndarray:
    """Coordinate array of a point, line or plain 3-sequence."""
    return _as_array(x)


def equal_up_to_scale(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = normalize(coords_of(x))
    b = normalize(coords_of(y))
    return bool(np.max(np.abs(a - b)) <= tol.eps_abs + tol.eps_rel)


def _cross_checked(a, b, tol, exc):
    a = coords_of(a)
    b = coords_of(b)
    c = np.cross(a / np.linalg.norm(a), b / np.linalg.norm(b))
    if np.linalg.norm(c) <= tol.eps_abs + tol.eps_rel:
        raise exc("inputs coincide up to scale")
    return c


def join(p, q, tol: Tolerance = DEFAULT_TOL) -> ProjLine:
    """Line through two distinct points."""
    return ProjLine(_cross_checked(p, q, tol, CoincidentPoints))


def meet(l, m, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Intersection point of two distinct lines."""
    return ProjPoint(_cross_checked(l, m, tol, CoincidentLines))


def incidence(p, l) -> float:
    """|<p, l>| for normalized representatives."""
    return float(abs(normalize(coords_of(p)) @ normalize(coords_of(l))))


def incident(p, l, tol: Tolerance = DEFAULT_TOL) -> bool:
    return incidence(p, l) <= tol.eps_abs + tol.eps_rel


def collinear(p, q, r, tol: Tolerance = DEFAULT_TOL) -> bool:
    rows = np.array([normalize(coords_of(x)) for x in (p, q, r)])
    return bool(abs(np.linalg.det(rows)) <= tol.eps_abs + tol.eps_rel)


def realify(x, tol: Tolerance = DEFAULT_TOL):
    """Return a real representative of a complex point or line.

    Raises :class:`NotReal` when no rescaling makes all imaginary parts
    vanish within ``tol``.
    """
    arr = coords_of(x)
    cls = type(x) if isinstance(x, _Homogeneous) else ProjPoint
    if not np.iscomplexobj(arr):
        return cls(arr)
    n = normalize(arr)
    if np.max(np.abs(n.imag)) > tol.eps_abs + tol.eps_rel:
        raise NotReal(f"{arr} has no real representative")
    return cls(n.real.copy())
