"""Conics as symmetric 3x3 quadratic forms.

The form of a conic with matrix ``M`` is ``x^T M x``; off-diagonal matrix
entries are half the cross-term coefficients, so ``m01`` multiplies
``2 x0 x1``.  On the wire coefficients are ordered
``[m00, m11, m22, m01, m02, m12]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import LineOnConic, NoRealPoints, NotDegenerate, SingularConic
from .projective import (
    DEFAULT_TOL,
    ProjLine,
    ProjPoint,
    Tolerance,
    coords_of,
    normalize,
    unit,
)

WIRE_ORDER = ("m00", "m11", "m22", "m01", "m02", "m12")
_WIRE_INDEX = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


class Conic:
    """Immutable symmetric 3x3 form, real or complex."""

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix)
        if m.shape != (3, 3):
            raise ValueError(f"conic matrix must be 3x3, got {m.shape}")
        m = m.astype(np.complex128 if np.iscomplexobj(m) else np.float64)
        if not np.all(np.isfinite(m)):
            raise ValueError("conic matrix must be finite")
        scale = np.max(np.abs(m))
        if scale == 0:
            raise ValueError("conic matrix is identically zero")
        if np.max(np.abs(m - m.T)) > 1e-12 * scale:
            raise ValueError("conic matrix must be symmetric")
        m = (m + m.T) / 2
        m.setflags(write=False)
        self._m = m

    @classmethod
    def from_coefficients(cls, m00, m11, m22, m01=0.0, m02=0.0, m12=0.0) -> "Conic":
        """Build from wire-order entries (cross terms are matrix entries)."""
        return cls([[m00, m01, m02], [m01, m11, m12], [m02, m12, m22]])

    @classmethod
    def diag(cls, d0, d1, d2) -> "Conic":
        return cls(np.diag([d0, d1, d2]))

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self._m)

    def coefficients(self) -> list:
        """Entries in wire order."""
        return [self._m[i, j].item() for i, j in _WIRE_INDEX]

    def normalized(self) -> "Conic":
        return Conic(normalize_matrix(self._m))

    def isclose(self, other, tol: Tolerance = DEFAULT_TOL) -> bool:
        return conics_equal(self, other, tol)

    def __array__(self, dtype=None, copy=None):
        return np.array(self._m, dtype=dtype)

    def __repr__(self):
        vals = ", ".join(f"{c:.6g}" for c in self.coefficients())
        return f"Conic([{vals}])"


def matrix_of(c) -> np.ndarray:
    if isinstance(c, Conic):
        return c.matrix
    return Conic(c).matrix


def normalize_matrix(m) -> np.ndarray:
    """Divide by the largest-magnitude entry (sign and phase included).

    Near-ties go to the first such entry in row-major order, so two
    proportional forms always pick the same pivot.
    """
    m = np.asarray(m)
    a = np.abs(m).ravel()
    k = int(np.flatnonzero(a >= a.max() * (1 - 1e-9))[0])
    return m / m.flat[k]


def conics_equal(c1, c2, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = normalize_matrix(matrix_of(c1))
    b = normalize_matrix(matrix_of(c2))
    return bool(np.max(np.abs(a - b)) <= tol.eps_abs + tol.eps_rel)


def conic_distance(c1, c2) -> float:
    """Max entrywise difference after normalization; 0 means equal up to scale."""
    a = normalize_matrix(matrix_of(c1))
    b = normalize_matrix(matrix_of(c2))
    return float(np.max(np.abs(a - b)))


def adjugate(c) -> np.ndarray:
    m = matrix_of(c)
    cof = np.empty_like(m)
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(m, i, 0), j, 1)
            cof[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return cof.T


def dual(c) -> Conic:
    """Dual conic (the adjugate), defined for rank >= 2."""
    return Conic(adjugate(c))


def evaluate(c, p) -> complex | float:
    """Value of the quadratic form at ``p`` (raw, not normalized)."""
    x = coords_of(p)
    val = x @ matrix_of(c) @ x
    return val.item()


def residual(c, p) -> float:
    """|C(p)| with both the conic and the point normalized."""
    x = normalize(coords_of(p))
    return float(abs(x @ normalize_matrix(matrix_of(c)) @ x))


def contains(c, p, tol: Tolerance = DEFAULT_TOL) -> bool:
    return residual(c, p) <= tol.eps_abs + tol.eps_rel


def polar(c, p) -> ProjLine:
    """Polar line of ``p``; the tangent when ``p`` lies on the conic."""
    return ProjLine(matrix_of(c) @ coords_of(p))


tangent = polar


def pole(c, line, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    rk = rank_classify(c, tol)
    if rk.rank < 3:
        raise SingularConic("pole requires a regular conic")
    return ProjPoint(np.linalg.solve(matrix_of(c), coords_of(line)))


def second_intersection(c, p, w) -> np.ndarray:
    """Second intersection with ``c`` of the line through ``p`` and ``w``.

    ``p`` must lie on ``c``.  Returns raw homogeneous coordinates; the
    result equals ``p`` exactly when the line is tangent at ``p``.
    """
    m = matrix_of(c)
    p = coords_of(p)
    w = coords_of(w)
    return (w @ m @ w) * p - 2 * (p @ m @ w) * w


def line_points(line) -> tuple[np.ndarray, np.ndarray]:
    """Two independent points spanning ``line``."""
    l = coords_of(line)
    k = int(np.argmax(np.abs(l)))
    others = [i for i in range(3) if i != k]
    pts = []
    for j in others:
        v = np.zeros(3, dtype=l.dtype)
        v[j] = l[k]
        v[k] = -l[j]
        pts.append(v)
    return pts[0], pts[1]


def solve_binary_quadratic(a, b, c, tol: Tolerance = DEFAULT_TOL):
    """Roots (s:t) of a*s^2 + 2*b*s*t + c*t^2 = 0 as two homogeneous pairs.

    Returns ``None`` when the form vanishes identically (within ``tol``).
    A discriminant below ``tol`` relative to the coefficients is treated
    as zero, so tangencies produce an exactly repeated root.
    """
    a, b, c = complex(a), complex(b), complex(c)
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        return None
    a, b, c = a / scale, b / scale, c / scale
    disc = b * b - a * c
    if abs(disc) <= tol.eps_rel * max(abs(b) ** 2, abs(a * c), tol.eps_abs):
        disc = 0j
    d = np.sqrt(disc)
    if (np.conj(b) * d).real < 0:
        d = -d
    q = -(b + d)
    if abs(q) <= tol.eps_abs:
        # b = 0 and disc = 0: a*c = 0, so the root is double at a coordinate axis
        if abs(a) >= abs(c):
            r = (0j, 1 + 0j)
        else:
            r = (1 + 0j, 0j)
        return r, r
    return (q, a), (c, q)


def _maybe_real(v: np.ndarray, tol: Tolerance) -> np.ndarray:
    n = normalize(v)
    if np.max(np.abs(n.imag)) <= tol.eps_abs:
        return n.real.copy()
    return n


def intersect_line(c, line, tol: Tolerance = DEFAULT_TOL) -> tuple[ProjPoint, ProjPoint]:
    """The two (possibly complex, possibly equal) intersection points."""
    m = matrix_of(c)
    w1, w2 = line_points(line)
    w1 = w1 / np.linalg.norm(w1)
    w2 = w2 / np.linalg.norm(w2)
    a = w1 @ m @ w1
    b = w1 @ m @ w2
    cc = w2 @ m @ w2
    mscale = np.max(np.abs(m))
    if max(abs(a), abs(b), abs(cc)) <= (tol.eps_abs + tol.eps_rel) * mscale:
        raise LineOnConic("the conic vanishes on the line")
    roots = solve_binary_quadratic(a, b, cc, tol)
    pts = []
    for s, t in roots:
        pts.append(ProjPoint(_maybe_real(s * w1 + t * w2, tol)))
    return pts[0], pts[1]


@dataclass(frozen=True)
class ConicRank:
    rank: Literal[1, 2, 3]
    determinant: complex | float
    classification: Literal["regular", "line_pair", "double_line"]
    singular_values: tuple

    @property
    def regular(self) -> bool:
        return self.rank == 3


_CLASS_BY_RANK = {3: "regular", 2: "line_pair", 1: "double_line"}


def rank_classify(c, tol: Tolerance = DEFAULT_TOL) -> ConicRank:
    """Rank from singular values relative to the largest one."""
    m = matrix_of(c)
    s = np.linalg.svd(m, compute_uv=False)
    rank = int(np.sum(s > tol.eps_rel * s[0]))
    rank = max(rank, 1)
    det = np.linalg.det(normalize_matrix(m)).item()
    return ConicRank(rank, det, _CLASS_BY_RANK[rank], tuple(float(v) for v in s))


def split_line_pair(c, tol: Tolerance = DEFAULT_TOL) -> tuple[ProjLine, ProjLine]:
    """Factor a degenerate conic into two lines.

    The vertex ``s`` of a line pair is the kernel of the matrix.  A line
    missing ``s`` meets the pair in one point of each component; joining
    those points with ``s`` recovers the components.  A double line is
    returned twice.
    """
    m = normalize_matrix(matrix_of(c))
    rk = rank_classify(m, tol)
    if rk.rank == 3:
        raise NotDegenerate("conic is regular")
    if rk.rank == 1:
        line = _double_line(m)
        return line, line
    _, _, vh = np.linalg.svd(m)
    s = vh[-1].conj()
    k = int(np.argmax(np.abs(s)))
    cut = np.zeros(3)
    cut[k] = 1.0
    a, b = intersect_line(m, cut, tol)
    l1 = np.cross(s, a.coords)
    l2 = np.cross(s, b.coords)
    if np.linalg.norm(l1) <= tol.eps_rel or np.linalg.norm(l2) <= tol.eps_rel:
        line = _double_line(m)
        return line, line
    return ProjLine(_maybe_real(l1, tol)), ProjLine(_maybe_real(l2, tol))


def _double_line(m) -> ProjLine:
    w, v = np.linalg.eig(m) if np.iscomplexobj(m) else np.linalg.eigh(m)
    k = int(np.argmax(np.abs(w)))
    return ProjLine(_maybe_real(v[:, k], DEFAULT_TOL))


def line_pair_matrix(l, m) -> np.ndarray:
    """Matrix of the product of two linear forms."""
    l = coords_of(l)
    m = coords_of(m)
    return (np.outer(l, m) + np.outer(m, l)) / 2


def find_real_point(c, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Some real point of a real conic, found by scanning probe lines."""
    m = matrix_of(c)
    if np.iscomplexobj(m):
        raise ValueError("find_real_point needs a real conic")
    w = np.linalg.eigvalsh(m)
    big = np.max(np.abs(w))
    if np.all(w > tol.eps_rel * big) or np.all(w < -tol.eps_rel * big):
        raise NoRealPoints("definite form: the conic has no real points")
    grid = [np.array(v, dtype=float) for v in np.ndindex(3, 3, 3) if any(v)]
    probes = [g - 1.0 for g in grid]
    probes = [unit(g) for g in probes if np.any(g)]
    best = None
    for i, x in enumerate(probes):
        for y in probes[i + 1:]:
            if np.linalg.norm(np.cross(x, y)) < 1e-6:
                continue
            a = x @ m @ x
            b = x @ m @ y
            cc = y @ m @ y
            disc = b * b - a * cc
            if disc < 0:
                continue
            scale = max(abs(a), abs(b), abs(cc))
            if scale == 0 or disc < 1e-6 * scale * scale:
                continue
            (s, t), _ = solve_binary_quadratic(a, b, cc)
            p = (s * x + t * y).real
            score = disc / scale**2
            if best is None or score > best[0] + 1e-12:
                best = (score, unit(p))
        if best is not None and best[0] > 0.1:
            break
    if best is None:
        # indefinite form: mix eigenvectors of opposite sign
        w, v = np.linalg.eigh(m)
        lo, hi = int(np.argmin(w)), int(np.argmax(w))
        return unit(np.sqrt(w[hi]) * v[:, lo] + np.sqrt(-w[lo]) * v[:, hi])
    return best[1]


def conic_points(c, angles, base=None) -> list[np.ndarray]:
    """Points of ``c`` from lines through a base point at the given angles.

    The angle parameterizes the pencil of lines through ``base``;
    each line contributes its second intersection with the conic.
    """
    m = matrix_of(c)
    s = find_real_point(m) if base is None else coords_of(base)
    k = int(np.argmax(np.abs(s)))
    e = [np.eye(3)[i] for i in range(3) if i != k]
    u = unit(e[0] - (e[0] @ s) / (s @ s) * s)
    v = unit(np.cross(s, u))
    pts = []
    for phi in angles:
        w = np.cos(phi) * u + np.sin(phi) * v
        pts.append(normalize(second_intersection(m, s, w)))
    return pts


def sample_points(c, n: int, seed: int = 0) -> list[ProjPoint]:
    """``n`` distinct real points of a regular real conic.

    Directions through one found conic point are drawn uniformly from a
    generator seeded with ``seed``, so the result is reproducible.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m = matrix_of(c)
    if rank_classify(m).rank < 3:
        raise SingularConic("sample_points requires a regular conic")
    rng = np.random.default_rng(seed)
    base = find_real_point(m)
    out: list[ProjPoint] = []
    while len(out) < n:
        angles = rng.uniform(0.0, np.pi, size=n - len(out))
        for q in conic_points(m, angles, base):
            if np.linalg.norm(np.cross(unit(q), base)) < 1e-9:
                continue
            if any(np.max(np.abs(q - o.coords)) < 1e-12 for o in out):
                continue
            out.append(ProjPoint(q))
    return out
