"""Command line: ``fregier point | locus | classify | scan | render``.

Exit codes: 0 success, 2 bad input or domain violation, 3 numerical
instability, 4 I/O failure.  Errors are printed as a JSON object on
standard output.  ``FREGIER_TOLERANCE`` overrides the relative tolerance.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .conic import Conic, conic_distance, matrix_of, residual
from .construction import fregier_point_chords, fregier_point_isotropic
from .errors import FregierError, NumericalInstability
from .families import FamilySpec, closed_form_locus
from .locus import LocusResult, locus_fit
from .metric import geometry, normal_line
from .pencil import classify
from .projective import DEFAULT_TOL, Tolerance, normalize, unit
from .render import Viewport, render_svg
from .scan import singular_scan

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class InputError(ValueError):
    pass


# -- parsing helpers -------------------------------------------------------------

def _floats(values, n: int, what: str) -> list[float]:
    items = [v for s in values for v in s.replace(",", " ").split()]
    try:
        out = [float(v) for v in items]
    except ValueError:
        raise InputError(f"{what} must be numbers, got {items}") from None
    if len(out) != n or not all(math.isfinite(v) for v in out):
        raise InputError(f"{what} needs {n} finite numbers, got {len(out)}")
    return out


def _params(values) -> dict[str, float]:
    out = {}
    for item in (v for s in values or () for v in s.split(",") if v):
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise InputError(f"parameter {item!r} has a non-numeric value") from None
    return out


def _tolerance() -> Tolerance:
    raw = os.environ.get("FREGIER_TOLERANCE")
    if raw is None or raw == "":
        return DEFAULT_TOL
    try:
        return Tolerance(eps_rel=float(raw), eps_abs=DEFAULT_TOL.eps_abs)
    except ValueError:
        raise InputError(f"FREGIER_TOLERANCE={raw!r} is not a valid tolerance") from None


def _setting(args):
    """Geometry, conic matrix and optional family spec from the flags."""
    spec = None
    if getattr(args, "family", None):
        if args.conic:
            raise InputError("give either --family or --conic, not both")
        spec = FamilySpec(args.family, _params(args.params))
        g = spec.geometry
        if args.geometry and geometry(args.geometry) != g:
            raise InputError(f"{spec.tag} lives in {g.cli_name} geometry")
        return g, spec.conic().matrix, spec
    if not args.conic:
        raise InputError("--conic (or --family) is required")
    if not args.geometry:
        raise InputError("--geometry is required")
    return geometry(args.geometry), Conic.from_coefficients(*_floats(args.conic, 6, "--conic")).matrix, spec


# -- JSON helpers ----------------------------------------------------------------

def _num(x):
    x = complex(x) + 0.0  # also folds -0.0 into 0.0
    if x.imag == 0:
        return float(x.real)
    return [float(x.real), float(x.imag)]


def _point(v) -> list:
    """Real point with x0 = 1 when it is finite, else largest coordinate 1."""
    v = np.real(np.asarray(v))
    if abs(v[0]) > 1e-9 * np.max(np.abs(v)):
        return _vec(v / v[0])
    return _vec(normalize(v))


def _vec(v) -> list:
    return [_num(x) for x in np.asarray(v).ravel()]


def _conic_json(c) -> list:
    return _vec(Conic(matrix_of(c)).coefficients())


def _locus_json(res: LocusResult) -> dict:
    out = {"conic": _conic_json(res.conic), "rank": res.rank.rank, "kind": res.kind}
    if res.point is not None:
        out["point"] = _point(res.point.coords)
    if res.samples:
        out["samples"] = res.samples
    return out


def _singular_json(res: LocusResult) -> dict | None:
    if res.kind == "conic":
        return None
    if res.kind == "point":
        return {"point": _point(res.point.coords)}
    out = {"carrier": _vec(res.carriers[0].normalized().coords),
           "real_range": [[float(a), float(b)] for a, b in res.real_range]}
    if res.kind == "line_pair":
        out["carriers"] = [_vec(l.normalized().coords) for l in res.carriers]
    return out


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, allow_nan=False)


# -- commands --------------------------------------------------------------------

def cmd_point(args, tol: Tolerance) -> dict:
    g, m, _ = _setting(args)
    p = np.asarray(_floats(args.point, 3, "--point"))
    out: dict = {"residuals": {}}
    fs = {}
    if args.method in ("chords", "both"):
        fs["chords"] = fregier_point_chords(g, m, p, tol=tol).coords
    if args.method in ("isotropic", "both"):
        fs["isotropic"] = fregier_point_isotropic(g, m, p, tol).coords
    f = fs.get("isotropic", fs.get("chords"))
    if len(fs) == 2:
        gap = float(np.linalg.norm(np.cross(unit(fs["chords"]), unit(fs["isotropic"]))))
        out["methods_agree"] = gap < 1e-8
        out["residuals"]["methods"] = gap
    else:
        out["methods_agree"] = None
    nl = unit(normal_line(g, m, p, tol).coords)
    on_normal = abs(float(nl @ unit(f)))
    out["residuals"]["on_conic"] = residual(m, p)
    out["residuals"]["on_normal"] = on_normal
    out["on_normal"] = on_normal < 1e-8
    out["fregier_point"] = _point(f)
    return out


def cmd_locus(args, tol: Tolerance) -> dict:
    g, m, spec = _setting(args)
    if args.samples < 8:
        raise InputError("--samples must be at least 8")
    fit = locus_fit(g, m, n=args.samples, seed=args.seed, tol=tol)
    out: dict = {"fitted": _locus_json(fit)}
    if spec is not None:
        cf = closed_form_locus(spec, tol)
        out["closed_form"] = _locus_json(cf)
        out["match"] = bool(conic_distance(cf.conic, fit.conic) <= 1e-6)
    sing = _singular_json(fit)
    if sing is not None:
        out["singular"] = sing
    return out


def cmd_classify(args, tol: Tolerance) -> dict:
    g, m, _ = _setting(args)
    if g.absolute is None:
        raise InputError("classify needs an elliptic or hyperbolic geometry")
    pc = classify(m, g.absolute)
    return {
        "class": pc.label,
        "base_points": [[_vec(p.coords), k] for p, k in pc.base_points],
        "singular_members": [
            {"parameter": [_num(s.parameter[0]), _num(s.parameter[1])],
             "conic": _conic_json(s.matrix), "rank": s.rank.rank, "multiplicity": s.multiplicity}
            for s in pc.singular_members
        ],
    }


def cmd_scan(args, tol: Tolerance):
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    res = singular_scan(args.family, _params(args.params), args.sweep, jobs=args.jobs)
    sys.stdout.write(res.csv())
    sys.stderr.write(res.summary())
    return None


def cmd_render(args, tol: Tolerance):
    g, m, spec = _setting(args)
    vp = Viewport.parse(args.viewport, args.width) if args.viewport else Viewport(width=args.width)
    point = np.asarray(_floats(args.point, 3, "--point")) if args.point else None
    locus = None
    if args.show_locus:
        locus = closed_form_locus(spec, tol) if spec is not None else locus_fit(g, m, tol=tol)
    svg = render_svg(g, m, point=point, triangles=args.triangles, show_absolute=args.show_absolute,
                     locus=locus, show_isotropic=args.show_isotropic, viewport=vp)
    if args.out == "-":
        sys.stdout.write(svg)
        return None
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return {"out": args.out, "bytes": len(svg.encode("utf-8"))}


# -- argument parser -------------------------------------------------------------

def _add_setting(p, point: bool):
    p.add_argument("--geometry", help="euclidean | pseudo-euclidean | elliptic | hyperbolic")
    p.add_argument("--conic", nargs="+", help="m00 m11 m22 m01 m02 m12")
    p.add_argument("--family", help="closed-form family tag, e.g. hy_circle_real")
    p.add_argument("--params", nargs="*", default=[], help="family parameters k=v")
    if point:
        p.add_argument("--point", nargs="+", required=True, help="x0 x1 x2")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fregier", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="Frégier point of a conic point")
    _add_setting(p, point=True)
    p.add_argument("--method", choices=("chords", "isotropic", "both"), default="both")

    p = sub.add_parser("locus", help="fit (and optionally compare) the Frégier locus")
    _add_setting(p, point=False)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("classify", help="pencil spanned by the conic and the absolute")
    _add_setting(p, point=False)

    p = sub.add_parser("scan", help="singular parameters of a family, CSV on stdout")
    p.add_argument("--family", required=True)
    p.add_argument("--params", nargs="*", default=[])
    p.add_argument("--sweep", required=True, help="param:lo:hi:step")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("render", help="SVG picture of a configuration")
    _add_setting(p, point=False)
    p.add_argument("--point", nargs="+", help="x0 x1 x2")
    p.add_argument("--out", required=True, help="output file, or - for stdout")
    p.add_argument("--show-absolute", action="store_true")
    p.add_argument("--show-locus", action="store_true")
    p.add_argument("--show-isotropic", action="store_true")
    p.add_argument("--triangles", type=int, default=0)
    p.add_argument("--viewport", help="xmin,xmax,ymin,ymax (write --viewport=-2,2,-2,2 for negative bounds)")
    p.add_argument("--width", type=int, default=600)
    return ap


COMMANDS = {"point": cmd_point, "locus": cmd_locus, "classify": cmd_classify,
            "scan": cmd_scan, "render": cmd_render}


def _fail(code: int, exc: BaseException) -> int:
    sys.stdout.write(_dump({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerance()
        out = COMMANDS[args.command](args, tol)
    except NumericalInstability as e:
        return _fail(EXIT_NUMERIC, e)
    except (FregierError, ValueError) as e:
        return _fail(EXIT_INPUT, e)
    except OSError as e:
        return _fail(EXIT_IO, e)
    if out is not None:
        sys.stdout.write(_dump(out) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
