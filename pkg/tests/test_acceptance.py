"""The twelve acceptance criteria, one test each.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
terminal summary prints one PASS/FAIL line per criterion.
"""
import io
import json
import math
import sys
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from conftest import random_conic_through
from fregier import cli
from fregier.conic import conic_distance, evaluate, matrix_of, sample_points
from fregier.construction import fregier_point_chords, fregier_point_isotropic, involution_image
from fregier.errors import FregierError
from fregier.families import FAMILIES, FamilySpec, closed_form_locus
from fregier.locus import locus_fit
from fregier.metric import ELLIPTIC, EUCLIDEAN, HYPERBOLIC, PSEUDO_EUCLIDEAN, normal_line
from fregier.pencil import classify
from fregier.projective import normalize, unit
from fregier.scan import SIGMA_TOL, singular_scan

GEOMETRIES = (EUCLIDEAN, PSEUDO_EUCLIDEAN, ELLIPTIC, HYPERBOLIC)


def _sep(a, b):
    return float(np.linalg.norm(np.cross(unit(a), unit(b))))


def _det3(*vs):
    return abs(float(np.linalg.det(np.array([unit(v) for v in vs]))))


def test_criterion_01_thales_fregier_agreement():
    rng = np.random.default_rng(1)
    worst = np.zeros(3)
    for i in range(100):
        g = GEOMETRIES[i % 4]
        m, p = random_conic_through(rng, g)
        f1 = fregier_point_chords(g, m, p).coords
        f2 = fregier_point_isotropic(g, m, p).coords
        worst[0] = max(worst[0], _sep(f1, f2))
        worst[1] = max(worst[1], abs(unit(normal_line(g, m, p).coords) @ unit(f2)))
        checked = 0
        for q in sample_points(m, 12, seed=i):
            if _sep(q.coords, p) < 1e-6:
                continue
            r = involution_image(g, m, p, q).coords
            worst[2] = max(worst[2], _det3(f2, q.coords, r))
            checked += 1
            if checked == 10:
                break
        assert checked == 10
    assert worst[0] < 1e-8, worst
    assert worst[1] < 1e-8, worst
    assert worst[2] < 1e-8, worst


def test_criterion_02_euclidean_scaling():
    rng = np.random.default_rng(2)
    done = 0
    while done < 20:
        a, b = rng.uniform(0.2, 3.0, 2)
        if abs(a - b) < 0.05:
            continue
        spec = FamilySpec("eu_general", a=a, b=b)
        s = (a - b) / (a + b)
        scaled = np.diag([-s * s, b, a])        # b x1^2 + a x2^2 = s^2 x0^2
        fit = locus_fit(EUCLIDEAN, spec.conic(), n=48, seed=done)
        assert fit.kind == "conic"
        assert conic_distance(fit.conic, scaled) < 1e-6
        assert conic_distance(closed_form_locus(spec).conic, fit.conic) < 1e-6
        done += 1


def test_criterion_03_euclidean_degenerations():
    circle = locus_fit(EUCLIDEAN, np.diag([-1.0, 1.0, 1.0]))
    assert circle.kind == "point"
    assert np.allclose(normalize(circle.point.coords), [1, 0, 0], atol=1e-9)

    spec = FamilySpec("eu_general", a=-1.0, b=1.0)     # x1^2 - x2^2 = x0^2
    res = locus_fit(EUCLIDEAN, spec.conic())
    assert res.kind == "line" and res.rank.rank == 1
    assert np.allclose(normalize(res.carriers[0].coords), [1, 0, 0], atol=1e-9)
    (lo, hi), = res.real_range
    assert -math.pi / 4 < lo < -math.pi / 4 + 0.01
    assert math.pi / 4 - 0.01 < hi < math.pi / 4
    cf = closed_form_locus(spec)
    assert cf.kind == "line" and np.allclose(normalize(cf.carriers[0].coords), [1, 0, 0])


def test_criterion_04_euclidean_parabola():
    for a in (1.0, -1.0, 2.0, -2.0, 0.5):
        expected = np.array([[1 / a, 0, -0.5], [0, a, 0], [-0.5, 0, 0]])   # a x1^2 + x0^2/a - x0 x2
        fit = locus_fit(EUCLIDEAN, FamilySpec("eu_parabola", a=a).conic())
        assert fit.kind == "conic"
        assert conic_distance(fit.conic, expected) < 1e-6


def test_criterion_05_hyperbolic_general_scan():
    for a in (0.5, 1.5, 2.0, 3.0):
        a2 = a * a
        b2s = [a2 / (a2 + 1), -a2 / (a2 - 1), a2 / (a2 - 1)]
        expected = sorted(math.sqrt(v) for v in b2s if v > 0 and 0.05 < math.sqrt(v) < 3)
        res = singular_scan("hy_general", {"a": a}, "b:0.05:3:0.001")
        found = [r.value for r in res.roots]
        assert len(found) == len(expected), (a, found, expected)
        assert np.allclose(found, expected, atol=1e-6, rtol=0)
        assert all(r.admissible for r in res.roots)


def test_criterion_06_hyperbolic_parabola():
    for mu in (-1.0, 0.3, 0.7, 2.0):
        res = singular_scan("hy_parabola", {"mu": mu}, "lam:-3:2:0.001")
        adm = res.admissible_roots
        assert len(adm) == 1 and abs(adm[0] + 1) < 1e-6, (mu, res.roots)
        assert {round(r.value, 6) for r in res.roots if not r.admissible} == {-0.5, 0.0}


def test_criterion_07_hyperbolic_circles():
    for tag in ("hy_circle_real", "hy_circle_complex"):
        # the offset grid never hits -2, so the |det| minimum path must find it
        res = singular_scan(tag, {}, "lam:-4.0003:0.5:0.001")
        adm = [r for r in res.roots if r.admissible]
        assert len(adm) == 1 and abs(adm[0].value + 2) < 1e-6
        assert adm[0].parity == "even"

    real = closed_form_locus(FamilySpec("hy_circle_real", lam=-2))
    assert real.kind == "line"
    assert np.allclose(normalize(real.carriers[0].coords), [0, 0, 1], atol=1e-12)
    assert real.real_range
    for lo, hi in real.real_range:
        # parameter is atan2(x1, x0) on x2 = 0; the interior of N is |t| < pi/4
        assert -math.pi / 4 < lo <= hi < math.pi / 4
    fit = locus_fit(HYPERBOLIC, FamilySpec("hy_circle_real", lam=-2).conic())
    assert fit.kind == "line" and _sep(fit.carriers[0].coords, [0, 0, 1]) < 1e-8

    cplx = closed_form_locus(FamilySpec("hy_circle_complex", lam=-2))
    assert cplx.kind == "line"
    assert np.allclose(normalize(cplx.carriers[0].coords), [1, 0, 0], atol=1e-12)


def test_criterion_08_osculating_parabola_and_horocycle():
    for tag in ("hy_osc_parabola", "hy_horocycle"):
        res = singular_scan(tag, {}, "lam:-5:5:0.001")
        assert res.admissible_roots == []
        assert all(abs(r.value) < 1e-6 for r in res.roots)
    for lam in (-3.0, -0.4, 0.5, 1.0, 2.5):
        fit = locus_fit(HYPERBOLIC, FamilySpec("hy_horocycle", lam=lam).conic())
        target = FamilySpec("hy_horocycle", lam=lam / 5).conic()
        assert conic_distance(fit.conic, target) < 1e-6


def test_criterion_09_elliptic():
    for a in (0.3, 0.5, 0.8, 1.5, 2.0, 3.0):
        a2 = a * a
        branches = [a2 / (a2 + 1)] + ([a2 / (1 - a2)] if a < 1 else [])
        expected = sorted(math.sqrt(v) for v in branches if math.sqrt(v) < 4)
        res = singular_scan("el_general", {"a": a}, "b:0.01:4:0.001")
        found = [r.value for r in res.roots]
        assert np.allclose(found, expected, atol=1e-6, rtol=0), (a, found, expected)
        # b^2 = -a^2/(a^2+1) has no real solution; nothing else may appear
        assert len(found) == len(expected)
    for b in (0.4, 1.2):
        res = singular_scan("el_general", {"b": b}, "a:0.01:4:0.001")
        assert len(res.roots) == (2 if b < 1 else 1)
    # circles a = b: the locus stays regular (it only shrinks like a^6 near a = 0)
    fam = FAMILIES["el_general"]
    t = np.linspace(0.1, 10, 5000)
    m = fam.locus(t, t)
    m = m / np.max(np.abs(m), axis=(-2, -1))[:, None, None]
    s = np.linalg.svd(m, compute_uv=False)
    assert np.min(s[:, -1] / s[:, 0]) > 1e3 * SIGMA_TOL
    assert np.all(np.sign(np.linalg.det(m)) == np.sign(np.linalg.det(m[0])))


def test_criterion_10_pencil_classification():
    rng = np.random.default_rng(10)
    for tag, fam in FAMILIES.items():
        if fam.pencil_class is None:
            continue
        n = matrix_of(fam.geometry.absolute)
        done = 0
        while done < 5:
            params = {k: float(rng.uniform(-3, 3)) for k in fam.params}
            try:
                spec = FamilySpec(tag, params)
            except FregierError:
                continue
            c = spec.conic().matrix
            pc = classify(c, n)
            assert pc.label == spec.pencil_class, (tag, params, pc.label)
            assert sum(k for _, k in pc.base_points) == 4
            cn = c / np.max(np.abs(c))
            for p, _ in pc.base_points:
                x = normalize(p.coords)
                assert abs(evaluate(cn, x)) < 1e-8 and abs(evaluate(n, x)) < 1e-8
            done += 1


def test_criterion_11_minus_two_remark():
    c = np.diag([-1.0, 1.0, 2.0])
    n_inv = np.linalg.inv(np.diag([-1.0, 1.0, 1.0]))
    worst = 0.0
    for p in sample_points(c, 32, seed=11):
        x = p.coords
        pole = n_inv @ (c @ x)
        foot = np.array([x[0], x[1], 0.0])
        worst = max(worst, _det3(pole, foot, x))
    assert worst < 1e-8


CLI_EXAMPLES = [
    (["point", "--geometry", "euclidean", "--conic", "-1", "1", "1", "0", "0", "0",
      "--point", "1", "1", "0"], 0),
    (["point", "--geometry", "euclidean", "--conic", "-1", "0.25", "1", "0", "0", "0",
      "--point", "1", "2", "0"], 0),
    (["point", "--geometry", "hyperbolic", "--conic", "-1", "1", "2", "0", "0", "0",
      "--point", "1", "0", "0.70710678"], 0),
    (["locus", "--geometry", "euclidean", "--conic", "-1", "1", "1", "0", "0", "0"], 0),
    (["locus", "--family", "hy_horocycle", "--params", "lam=1"], 0),
    (["locus", "--geometry", "euclidean", "--conic", "-1", "1", "-1", "0", "0", "0"], 0),
    (["classify", "--family", "hy_circle_real", "--params", "lam=-2"], 0),
    (["classify", "--family", "hy_osc_parabola", "--params", "lam=1"], 0),
    (["classify", "--family", "hy_general", "--params", "a=3", "b=2"], 0),
    (["scan", "--family", "hy_general", "--params", "a=2", "--sweep", "b:0.05:3:0.001"], 0),
    (["scan", "--family", "el_general", "--params", "a=2", "--sweep", "b:0.05:3:0.001"], 0),
    (["scan", "--family", "hy_circle_real", "--sweep", "lam:-4:0.5:0.001"], 0),
    (["render", "--family", "hy_circle_real", "--params", "lam=-2", "--show-absolute",
      "--show-locus", "--point", "1", "0.6", "0.565685425", "--out", "-"], 0),
    (["render", "--geometry", "euclidean", "--conic", "-1", "1", "1", "0", "0", "0",
      "--point", "1", "0.6", "0.8", "--triangles", "3", "--out", "-"], 0),
    (["render", "--geometry", "pseudo-euclidean", "--conic", "-1", "1", "2", "0", "0", "0",
      "--point", "1", "1", "0", "--triangles", "2", "--show-isotropic", "--out", "-"], 0),
    (["point", "--geometry", "euclidean", "--conic", "1", "1", "1", "0", "0", "0",
      "--point", "1", "1", "0"], 2),
    (["scan", "--family", "hy_general", "--params", "a=0", "--sweep", "b:0.05:3:0.001"], 2),
    (["render", "--geometry", "euclidean", "--conic", "-1", "1", "1", "0", "0", "0",
      "--out", "/nonexistent-dir/x.svg"], 4),
]


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


def test_criterion_12_cli_contract():
    for argv, expected in CLI_EXAMPLES:
        first = _run_cli(argv)
        second = _run_cli(argv)
        assert first[0] == expected, (argv, first)
        assert first == second, argv
    code, out, _ = _run_cli(CLI_EXAMPLES[1][0])
    assert np.allclose(json.loads(out)["fregier_point"], [1, 1.2, 0], atol=1e-12)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
