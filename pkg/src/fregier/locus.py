"""Frégier loci: sampling, conic fitting and real ranges of singular loci."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conic import (
    Conic,
    ConicRank,
    conic_points,
    find_real_point,
    matrix_of,
    normalize_matrix,
    rank_classify,
    sample_points,
    split_line_pair,
)
from .construction import fregier_point
from .errors import FitUnstable, FregierError
from .metric import Geometry
from .projective import DEFAULT_TOL, ProjLine, ProjPoint, Tolerance, coords_of, normalize, realify, unit

FIT_THRESHOLD = 1e-6
RANGE_SAMPLES = 1440


@dataclass(frozen=True)
class LocusResult:
    """A Frégier locus, fitted from samples or taken from a closed form.

    ``kind`` is ``"conic"`` for a regular locus, ``"line"`` when all
    Frégier points lie on ``carriers[0]`` (the conic is then that line
    doubled), ``"line_pair"`` for a real pair of carriers, and ``"point"``
    when the locus collapses to ``point``.  ``real_range`` lists parameter
    intervals on the carrier as produced by :func:`real_range`.
    """

    source: str
    conic: Conic
    rank: ConicRank
    kind: str
    carriers: tuple = ()
    point: ProjPoint | None = None
    real_range: tuple = ()
    singular_values: tuple = field(default=(), repr=False)
    samples: int = 0

    @property
    def singular(self) -> bool:
        return self.rank.rank < 3


def veronese(points) -> np.ndarray:
    """Rows (x0^2, x1^2, x2^2, 2x0x1, 2x0x2, 2x1x2) in wire order."""
    x = np.asarray(points)
    x0, x1, x2 = x[:, 0], x[:, 1], x[:, 2]
    return np.stack([x0 * x0, x1 * x1, x2 * x2, 2 * x0 * x1, 2 * x0 * x2, 2 * x1 * x2], axis=1)


def point_conic(f) -> np.ndarray:
    """Rank-2 form whose only real point is ``f``."""
    u = unit(coords_of(f))
    return np.eye(3) - np.outer(u, u)


def fregier_samples(g: Geometry, c, points, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    out = []
    for p in points:
        try:
            out.append(fregier_point(g, c, p, tol).coords)
        except FregierError:
            continue
    return out



def _describe_degenerate(g, c, m, tol, *, source, sv=(), samples=0, with_range=True,
                         range_samples=RANGE_SAMPLES) -> LocusResult:
    """Wrap a degenerate locus conic ``m`` with carriers or a point."""
    rank = rank_classify(m, tol)
    lines = split_line_pair(m, tol)
    if rank.rank == 1:
        carriers = (lines[0],)
        kind = "line"
    elif not (lines[0].is_complex or lines[1].is_complex):
        carriers = lines
        kind = "line_pair"
    else:
        # conjugate complex lines: the real locus is their common point
        vertex = np.cross(lines[0].coords, lines[1].coords)
        point = realify(ProjPoint(vertex), tol.scaled(1e3))
        return LocusResult(source, Conic(normalize_matrix(m).real), rank, "point", (), point,
                           (), tuple(sv), samples)
    ranges = ()
    if with_range:
        ranges = tuple(real_range(g, c, carriers[0], range_samples)) if kind == "line" else ()
    return LocusResult(source, Conic(normalize_matrix(m)), rank, kind, carriers, None, ranges,
                       tuple(sv), samples)


def locus_fit(g: Geometry, c, n: int = 64, seed: int = 0, tol: Tolerance = DEFAULT_TOL,
              with_range: bool = True, range_samples: int = RANGE_SAMPLES) -> LocusResult:
    """Fit the Frégier locus of ``c`` from ``n`` sampled conic points.

    The dimension of the null space of the Veronese design matrix tells
    the outcomes apart: 1 for a conic, 3 when the Frégier points are
    collinear, 5 when they all coincide.  Any other count, or a singular
    value in the undecidable band just above the threshold, raises
    :class:`FitUnstable`.
    """
    if n < 8:
        raise ValueError("locus_fit needs at least 8 samples")
    m = matrix_of(c)
    pts = sample_points(m, n, seed)
    fs = [unit(f) for f in fregier_samples(g, m, pts, tol)]
    if len(fs) < max(math.ceil(n / 2), 6):
        raise FitUnstable(f"only {len(fs)} of {n} samples produced a Frégier point")
    design = veronese(fs)
    _, s, vh = np.linalg.svd(design)
    ratios = s / s[0]
    null_dim = int(np.sum(ratios < FIT_THRESHOLD))
    ambiguous = np.any((ratios >= FIT_THRESHOLD) & (ratios < 100 * FIT_THRESHOLD))
    if null_dim not in (1, 3, 5) or ambiguous:
        raise FitUnstable(f"singular values {ratios} do not separate a null space")
    sv = tuple(float(r) for r in ratios)
    if null_dim == 5:
        _, _, pv = np.linalg.svd(np.asarray(fs))
        f = normalize(pv[0])
        conic = Conic(point_conic(f))
        return LocusResult("fitted", conic, rank_classify(conic, tol), "point", (), ProjPoint(f),
                           (), sv, len(fs))
    if null_dim == 3:
        _, _, pv = np.linalg.svd(np.asarray(fs))
        line = normalize(pv[-1])
        return _describe_degenerate(g, m, np.outer(line, line), tol, source="fitted", sv=sv,
                                    samples=len(fs), with_range=with_range,
                                    range_samples=range_samples)
    v = vh[-1]
    fitted = Conic.from_coefficients(*v).normalized()
    rank = rank_classify(fitted, tol)
    if rank.rank < 3:
        return _describe_degenerate(g, m, fitted.matrix, tol, source="fitted", sv=sv,
                                    samples=len(fs), with_range=with_range,
                                    range_samples=range_samples)
    return LocusResult("fitted", fitted, rank, "conic", samples=len(fs), singular_values=sv)


# -- real ranges ------------------------------------------------------------

def _carrier_axes(line) -> tuple[int, int, int]:
    l = coords_of(line)
    k = int(np.argmax(np.abs(l)))
    i, j = (x for x in range(3) if x != k)
    return k, i, j


def carrier_parameter(line, x) -> float:
    """Angle in [-pi/2, pi/2) locating a real point ``x`` on ``line``.

    The two coordinates not solved for by the line equation give a
    direction (cos t, sin t); antipodal directions are the same point.
    """
    _, i, j = _carrier_axes(line)
    x = coords_of(x)
    t = math.atan2(x[j], x[i])
    return (t + math.pi / 2) % math.pi - math.pi / 2


def carrier_point(line, t: float) -> ProjPoint:
    """Inverse of :func:`carrier_parameter`."""
    l = coords_of(line)
    k, i, j = _carrier_axes(l)
    x = np.zeros(3)
    x[i] = math.cos(t)
    x[j] = math.sin(t)
    x[k] = -(l[i] * x[i] + l[j] * x[j]) / l[k]
    return ProjPoint(x)


def real_range(g: Geometry, c, carrier, n: int = RANGE_SAMPLES, gap: float | None = None):
    """Intervals of :func:`carrier_parameter` values hit by real Frégier points.

    Conic points come from evenly spaced lines through one conic point;
    points where the construction degenerates are skipped, and so are
    ideal points in the Euclidean planes, where no normal exists.  Gaps
    wider than ``gap`` (default ``20 pi / n``) separate intervals.  A
    single interval ``(-pi/2, pi/2)`` means the whole carrier line.
    """
    m = matrix_of(c)
    l = normalize(coords_of(carrier)).real
    angles = (np.arange(n) + 0.5) * (math.pi / n)
    pts = conic_points(m, angles, find_real_point(m))
    if g.kind in ("euclidean", "pseudo_euclidean"):
        pts = [p for p in pts if abs(p[0]) > 1e-9]
    thetas = []
    for f in fregier_samples(g, m, pts):
        f = unit(f)
        if abs(f @ l) > 1e-6 * np.max(np.abs(l)):
            raise ValueError("a Frégier point is off the carrier line")
        thetas.append(carrier_parameter(l, f))
    if not thetas:
        return []
    gap = 20 * math.pi / n if gap is None else gap
    return _arcs(np.sort(np.asarray(thetas)), gap)


def _arcs(t: np.ndarray, gap: float) -> list[tuple[float, float]]:
    """Cover sorted angles on the circle R/pi with arcs, split at wide gaps."""
    half = math.pi / 2
    steps = np.diff(np.append(t, t[0] + math.pi))
    cuts = np.flatnonzero(steps > gap)
    if cuts.size == 0:
        return [(-half, half)]
    arcs = []
    for a, b in zip(cuts, np.roll(cuts, -1)):
        start = t[(a + 1) % len(t)]
        end = t[b]
        if start <= end:
            arcs.append((float(start), float(end)))
        else:
            arcs.append((float(start), half))
            arcs.append((-half, float(end)))
    return sorted(arcs)
