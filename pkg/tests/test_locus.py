import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fregier.conic import conics_equal, residual
from fregier.construction import fregier_point
from fregier.errors import FitUnstable
from fregier.families import FamilySpec
from fregier.locus import (
    _arcs,
    carrier_parameter,
    carrier_point,
    locus_fit,
    point_conic,
    real_range,
    veronese,
)
from fregier.metric import ELLIPTIC, EUCLIDEAN, HYPERBOLIC
from fregier.projective import equal_up_to_scale, incidence


def test_veronese_matches_wire_order():
    x = np.array([[1.0, 2.0, 3.0]])
    coeffs = np.array([1, 2, 3, 4, 5, 6.0])
    m = np.array([[1, 4, 5], [4, 2, 6], [5, 6, 3.0]])
    assert veronese(x) @ coeffs == pytest.approx(x[0] @ m @ x[0])


def test_point_conic_has_single_real_point():
    f = np.array([1.0, 2.0, -1.0])
    m = point_conic(f)
    assert abs(f @ m @ f) < 1e-12
    assert np.all(np.linalg.eigvalsh(m) > -1e-12)
    assert np.linalg.matrix_rank(m) == 2


@given(st.floats(0.3, 4.0), st.floats(0.3, 4.0))
@settings(max_examples=15, deadline=None)
def test_ellipse_locus_is_scaled_ellipse(a, b):
    if abs(a - b) < 0.05:
        return
    k = (a * a - b * b) / (a * a + b * b)
    res = locus_fit(EUCLIDEAN, np.diag([-1.0, 1 / a**2, 1 / b**2]))
    assert res.kind == "conic" and res.source == "fitted"
    assert conics_equal(res.conic, np.diag([-1.0, 1 / (k * a) ** 2, 1 / (k * b) ** 2]))


def test_circle_locus_is_centre():
    res = locus_fit(EUCLIDEAN, np.diag([-2.0, 1.0, 1.0]) + np.array([[0, -1, 0], [-1, 0, 0], [0, 0, 0.0]]))
    assert res.kind == "point" and res.singular
    assert equal_up_to_scale(res.point, [1.0, 1.0, 0.0])


def test_rectangular_hyperbola_locus_is_line_at_infinity():
    res = locus_fit(EUCLIDEAN, np.diag([-1.0, 1.0, -1.0]))
    assert res.kind == "line"
    assert equal_up_to_scale(res.carriers[0], [1.0, 0.0, 0.0])


def test_locus_contains_fregier_points():
    c = np.diag([-1.0, 1 / 0.7**2, 4.0])
    res = locus_fit(ELLIPTIC, c, n=40, seed=7)
    for t in (0.2, 1.3, 2.9):
        p = [1.0, 0.7 * math.cos(t), 0.5 * math.sin(t)]
        assert residual(res.conic, fregier_point(ELLIPTIC, c, p)) < 1e-9


def test_fit_is_seed_independent():
    c = np.diag([-1.0, 1.0, 0.3])
    a = locus_fit(HYPERBOLIC, c, seed=1)
    b = locus_fit(HYPERBOLIC, c, seed=99)
    assert conics_equal(a.conic, b.conic)


def test_singular_hyperbolic_locus_has_range():
    spec = FamilySpec("hy_circle_real", lam=-2.0)
    res = locus_fit(HYPERBOLIC, spec.conic(), range_samples=360)
    assert res.singular and res.kind in ("line", "line_pair")
    for lo, hi in res.real_range:
        assert -math.pi / 2 <= lo <= hi <= math.pi / 2


def test_too_few_samples():
    with pytest.raises(ValueError):
        locus_fit(EUCLIDEAN, np.diag([-1.0, 1.0, 2.0]), n=7)


def test_fit_unstable_when_construction_fails():
    # every point of the absolute has an isotropic tangent
    with pytest.raises(FitUnstable):
        locus_fit(HYPERBOLIC, np.diag([-1.0, 1.0, 1.0]))


@given(st.floats(-1.5, 1.5))
def test_carrier_parameter_roundtrip(t):
    line = np.array([0.3, -1.0, 2.0])
    x = carrier_point(line, t)
    assert incidence(x, line) < 1e-12
    assert carrier_parameter(line, x) == pytest.approx(t, abs=1e-12)


def test_real_range_on_carrier():
    c = np.diag([-1.0, 1.0, -1.0])
    arcs = real_range(EUCLIDEAN, c, [1.0, 0.0, 0.0], n=360)
    assert arcs
    for lo, hi in arcs:
        assert lo <= hi


def test_arcs_wraps_and_splits():
    t = np.sort(np.concatenate([np.linspace(-1.5, -1.0, 50), np.linspace(0.2, 1.5, 100)]))
    arcs = _arcs(t, 0.1)
    assert arcs == [(-1.5, -1.0), (0.2, 1.5)]
    # dense samples with no wide gap cover the whole line
    assert _arcs(np.linspace(-1.5, 1.5, 400), 0.2) == [(-math.pi / 2, math.pi / 2)]
    # isolated samples give zero-length arcs
    assert _arcs(np.array([-1.2, 0.0, 1.2]), 0.5) == [(-1.2, -1.2), (0.0, 0.0), (1.2, 1.2)]
