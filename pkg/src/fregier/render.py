"""SVG 1.1 pictures of Frégier configurations in the affine chart x0 = 1.

Coordinates are written with a fixed number of decimals and elements in a
fixed order, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .conic import find_real_point, matrix_of, rank_classify, second_intersection, split_line_pair
from .construction import fregier_point, right_chord
from .errors import FregierError, NoRealPoints
from .locus import LocusResult, carrier_point
from .metric import Geometry, isotropic_lines
from .projective import coords_of, unit

CONIC_SEGMENTS = 1024


@dataclass(frozen=True)
class Viewport:
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    width: int = 600

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("viewport ranges must be nonempty")
        if self.width < 16:
            raise ValueError("viewport width must be at least 16 pixels")

    @classmethod
    def parse(cls, text: str, width: int = 600) -> Viewport:
        parts = [float(v) for v in text.split(",")]
        if len(parts) != 4 or not all(math.isfinite(v) for v in parts):
            raise ValueError("viewport must be xmin,xmax,ymin,ymax")
        return cls(*parts, width=width)

    @property
    def height(self) -> int:
        return max(16, int(round(self.width * (self.ymax - self.ymin) / (self.xmax - self.xmin))))

    def px(self, x: float, y: float) -> tuple[float, float]:
        u = (x - self.xmin) / (self.xmax - self.xmin) * self.width
        v = (self.ymax - y) / (self.ymax - self.ymin) * self.height
        return u, v


@dataclass(frozen=True)
class Style:
    stroke: str = "#000000"
    width: float = 1.5
    dash: str | None = None
    fill: str = "none"


CONIC = Style("#1f4e99", 2.0)
ABSOLUTE = Style("#777777", 1.2, "6 4")
LOCUS = Style("#c0392b", 2.0)
CARRIER = Style("#c0392b", 1.0, "3 3")
TRIANGLE = Style("#2e7d32", 1.0)
HYPOTENUSE = Style("#2e7d32", 0.8, "4 3")
ISOTROPIC = Style("#8e44ad", 1.0, "2 3")
POINT = Style("#000000", 1.0, fill="#000000")
FREGIER = Style("#c0392b", 1.0, fill="#c0392b")


@dataclass
class Scene:
    """Drawable primitives in homogeneous coordinates plus a viewport."""

    geometry: Geometry
    viewport: Viewport = field(default_factory=Viewport)
    conics: list = field(default_factory=list)      # (matrix, style)
    lines: list = field(default_factory=list)       # (coords, style)
    segments: list = field(default_factory=list)    # (p, q, style), affine-finite points
    paths: list = field(default_factory=list)       # (list of homogeneous points, style)
    points: list = field(default_factory=list)      # (coords, style, label)
    notes: list = field(default_factory=list)       # border annotations

    def add_conic(self, c, style: Style = CONIC):
        self.conics.append((matrix_of(c).real.copy(), style))

    def add_line(self, line, style: Style):
        self.lines.append((np.real(coords_of(line)).copy(), style))

    def add_point(self, p, style: Style = POINT, label: str = ""):
        self.points.append((np.real(coords_of(p)).copy(), style, label))


# -- clipping -----------------------------------------------------------------

def _clip(p, q, vp: Viewport):
    """Liang-Barsky clip of segment pq to the viewport; None when outside."""
    (x0, y0), (x1, y1) = p, q
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for d, s in ((-dx, x0 - vp.xmin), (dx, vp.xmax - x0), (-dy, y0 - vp.ymin), (dy, vp.ymax - y0)):
        if d == 0:
            if s < 0:
                return None
            continue
        r = s / d
        if d < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    start = p if t0 == 0.0 else (x0 + t0 * dx, y0 + t0 * dy)
    end = q if t1 == 1.0 else (x0 + t1 * dx, y0 + t1 * dy)
    return start, end


def _polyline_runs(pts, vp: Viewport):
    """Split a polyline of affine points into visible runs."""
    runs, cur = [], []
    for a, b in zip(pts, pts[1:]):
        if a is None or b is None:
            if cur:
                runs.append(cur)
            cur = []
            continue
        seg = _clip(a, b, vp)
        if seg is None:
            if cur:
                runs.append(cur)
            cur = []
            continue
        s, e = seg
        if not cur or cur[-1] != s:
            if cur:
                runs.append(cur)
            cur = [s]
        cur.append(e)
    if cur:
        runs.append(cur)
    return [r for r in runs if len(r) > 1]


def line_in_viewport(line, vp: Viewport):
    """Visible segment of a projective line, or None (also for the line at infinity)."""
    a, b, c = np.real(coords_of(line))
    if math.hypot(b, c) <= 1e-12 * abs(a):
        return None
    # point on the line closest to the viewport centre, then a long segment
    cx, cy = (vp.xmin + vp.xmax) / 2, (vp.ymin + vp.ymax) / 2
    n2 = b * b + c * c
    k = (a + b * cx + c * cy) / n2
    px, py = cx - k * b, cy - k * c
    span = 4 * (vp.xmax - vp.xmin + vp.ymax - vp.ymin)
    d = np.array([-c, b]) / math.sqrt(n2)
    return _clip((px - span * d[0], py - span * d[1]), (px + span * d[0], py + span * d[1]), vp)


def is_line_at_infinity(line) -> bool:
    l = np.abs(np.real(coords_of(line)))
    return l[0] > 0 and max(l[1], l[2]) <= 1e-12 * l[0]


def _affine(x):
    x = np.real(np.asarray(x))
    if abs(x[0]) <= 1e-12 * np.max(np.abs(x)):
        return None
    return float(x[1] / x[0]), float(x[2] / x[0])


def conic_branches(c, vp: Viewport, n: int = CONIC_SEGMENTS):
    """Visible polyline runs of a regular real conic.

    Points come from the raw second intersection along lines through a
    fixed conic point; that vector is continuous in the angle, so a sign
    change of x0 marks a passage through the line at infinity and the
    polyline is cut there.
    """
    m = matrix_of(c).real
    s = find_real_point(m)
    k = int(np.argmax(np.abs(s)))
    e = np.eye(3)[(k + 1) % 3]
    u = unit(e - (e @ s) / (s @ s) * s)
    v = unit(np.cross(s, u))
    phis = np.arange(n + 1) * (math.pi / n)
    raw = [second_intersection(m, s, math.cos(t) * u + math.sin(t) * v) for t in phis]
    pts = []
    prev = None
    for x in raw:
        w = x[0] / np.linalg.norm(x)
        if prev is not None and (w > 0) != (prev > 0):
            pts.append(None)
        prev = w
        pts.append(_affine(x))
    return _polyline_runs(pts, vp)


# -- SVG output ----------------------------------------------------------------

def _f(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _style_attrs(st: Style) -> str:
    out = f'fill="{st.fill}" stroke="{st.stroke}" stroke-width="{_f(st.width)}"'
    if st.dash:
        out += f' stroke-dasharray="{st.dash}"'
    return out


def _polyline(run, vp, st) -> str:
    pts = " ".join(f"{_f(u)},{_f(v)}" for u, v in (vp.px(x, y) for x, y in run))
    return f'  <polyline points="{pts}" {_style_attrs(st)}/>'


def _draw_conic(m, st, vp):
    rk = rank_classify(m)
    if rk.rank < 3:
        out = []
        for line in split_line_pair(m):
            if not line.is_complex:
                seg = line_in_viewport(line, vp)
                if seg:
                    out.append(_polyline(list(seg), vp, st))
        return out
    try:
        return [_polyline(r, vp, st) for r in conic_branches(m, vp)]
    except NoRealPoints:
        return []


def to_svg(scene: Scene) -> str:
    vp = scene.viewport
    w, h = vp.width, vp.height
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'  <rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="none"/>',
    ]
    for m, st in scene.conics:
        out += _draw_conic(m, st, vp)
    for line, st in scene.lines:
        seg = line_in_viewport(line, vp)
        if seg:
            out.append(_polyline(list(seg), vp, st))
    for path, st in scene.paths:
        out += [_polyline(r, vp, st) for r in _polyline_runs([_affine(x) for x in path], vp)]
    for p, q, st in scene.segments:
        a, b = _affine(p), _affine(q)
        seg = _clip(a, b, vp) if a and b else None
        if seg:
            out.append(_polyline(list(seg), vp, st))
    for p, st, label in scene.points:
        a = _affine(p)
        if a is None or not (vp.xmin <= a[0] <= vp.xmax and vp.ymin <= a[1] <= vp.ymax):
            continue
        u, v = vp.px(*a)
        out.append(f'  <circle cx="{_f(u)}" cy="{_f(v)}" r="3.00" {_style_attrs(st)}/>')
        if label:
            out.append(f'  <text x="{_f(u + 5)}" y="{_f(v - 5)}" font-family="sans-serif" '
                       f'font-size="12">{escape(label)}</text>')
    for i, note in enumerate(scene.notes):
        out.append(f'  <rect x="1" y="1" width="{w - 2}" height="{h - 2}" fill="none" '
                   f'stroke="{LOCUS.stroke}" stroke-width="2.00" stroke-dasharray="8 4"/>')
        out.append(f'  <text x="6" y="{16 + 14 * i}" font-family="sans-serif" font-size="12" '
                   f'fill="{LOCUS.stroke}">{escape(note)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- scene building -------------------------------------------------------------

def add_triangles(scene: Scene, c, p, n: int):
    """``n`` right triangles at ``p`` with their hypotenuses and the Frégier point."""
    g = scene.geometry
    if n <= 0:
        return
    f = fregier_point(g, c, p)
    drawn = 0
    k = 0
    while drawn < n and k < 8 * n:
        angle = (k + 0.5) * math.pi / (2 * n) + 0.1
        k += 1
        try:
            q, r = right_chord(g, c, p, angle)
        except FregierError:
            continue
        p_ = coords_of(p)
        scene.segments += [(p_, q, TRIANGLE), (p_, r, TRIANGLE), (q, r, TRIANGLE)]
        scene.add_line(np.cross(q, r), HYPOTENUSE)
        drawn += 1
    scene.add_point(p, POINT, "p")
    scene.add_point(f, FREGIER, "f")


def add_isotropic(scene: Scene, p):
    for line in isotropic_lines(scene.geometry, p):
        if not line.is_complex:
            scene.add_line(line, ISOTROPIC)


def add_locus(scene: Scene, res: LocusResult):
    if res.kind == "conic":
        scene.add_conic(res.conic, LOCUS)
    elif res.kind == "point":
        scene.add_point(res.point, FREGIER, "locus")
    else:
        for line in res.carriers:
            if is_line_at_infinity(line):
                scene.notes.append("Frégier locus on the line at infinity")
            else:
                scene.add_line(line, CARRIER)
        if res.kind == "line":
            for lo, hi in res.real_range:
                ts = np.linspace(lo, hi, 257)
                scene.paths.append(([carrier_point(res.carriers[0], t).coords for t in ts], LOCUS))


def build_scene(g: Geometry, c, *, point=None, triangles: int = 0, show_absolute: bool = False,
                locus: LocusResult | None = None, show_isotropic: bool = False,
                viewport: Viewport | None = None) -> Scene:
    scene = Scene(g, viewport or Viewport())
    if show_absolute and g.absolute is not None:
        scene.add_conic(g.absolute, ABSOLUTE)
    scene.add_conic(c, CONIC)
    if locus is not None:
        add_locus(scene, locus)
    if point is not None:
        if triangles:
            add_triangles(scene, c, point, triangles)
        else:
            scene.add_point(point, POINT, "p")
        if show_isotropic:
            add_isotropic(scene, point)
    return scene


def render_svg(g: Geometry, c, **kw) -> str:
    return to_svg(build_scene(g, c, **kw))
