import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_conic_through
from fregier.construction import (
    fregier_point,
    fregier_point_chords,
    fregier_point_isotropic,
    involution_image,
    isotropic_projections,
    right_chord,
)
from fregier.conic import residual
from fregier.errors import DegenerateChord, IsotropicTangent, SingularConic
from fregier.metric import ELLIPTIC, EUCLIDEAN, HYPERBOLIC, PSEUDO_EUCLIDEAN, normal_line
from fregier.projective import Tolerance, equal_up_to_scale, incidence

LOOSE = Tolerance(1e-7)
GEOMETRIES = [EUCLIDEAN, PSEUDO_EUCLIDEAN, ELLIPTIC, HYPERBOLIC]
axis = st.floats(0.2, 5.0)
angle = st.floats(0.05, 2 * np.pi - 0.05)


def affine(f):
    f = f.coords
    return np.array([f[1] / f[0], f[2] / f[0]]).real


def right_angle_at(p, q, r):
    """Independent affine check: (q - p) . (r - p) in the Euclidean plane."""
    p, q, r = (np.asarray(x)[1:] / np.asarray(x)[0] for x in (p, q, r))
    return float(np.dot(q - p, r - p))


def test_circle_fregier_point_is_centre():
    c = np.diag([-4.0, 1.0, 1.0])
    for t in (0.3, 1.9, 4.0):
        p = [1.0, 2 * np.cos(t), 2 * np.sin(t)]
        assert np.allclose(affine(fregier_point(EUCLIDEAN, c, p)), 0, atol=1e-12)


@given(axis, axis, angle)
@settings(max_examples=60)
def test_ellipse_closed_form(a, b, t):
    c = np.diag([-1.0, 1 / a**2, 1 / b**2])
    x, y = a * np.cos(t), b * np.sin(t)
    want = (a * a - b * b) / (a * a + b * b) * np.array([x, -y])
    got = affine(fregier_point(EUCLIDEAN, c, [1.0, x, y]))
    assert np.allclose(got, want, atol=1e-9 * (a + b))


@given(axis, st.floats(-3, 3))
@settings(max_examples=40)
def test_parabola_closed_form(k, y):
    # y^2 = 4 k x; the Frégier point of (x, y) is (x + 4k, -y)
    x = y * y / (4 * k)
    c = np.array([[0.0, -2 * k, 0.0], [-2 * k, 0.0, 0.0], [0.0, 0.0, 1.0]])
    got = affine(fregier_point(EUCLIDEAN, c, [1.0, x, y]))
    assert np.allclose(got, [x + 4 * k, -y], atol=1e-9 * (1 + abs(x) + k))


def test_rectangular_hyperbola_sends_points_to_infinity():
    c = np.diag([-1.0, 1.0, -1.0])
    f = fregier_point(EUCLIDEAN, c, [1.0, np.cosh(0.7), np.sinh(0.7)])
    assert abs(f.coords[0]) < 1e-12


def test_hypotenuses_pass_through_fregier_point():
    c = np.diag([-1.0, 0.25, 1.0])
    p = np.array([1.0, 2 * np.cos(1.0), np.sin(1.0)])
    f = fregier_point(EUCLIDEAN, c, p)
    for t in np.linspace(0.1, 3.0, 9):
        try:
            q, r = right_chord(EUCLIDEAN, c, p, t)
        except DegenerateChord:
            continue
        assert abs(right_angle_at(p, q, r)) < 1e-9
        assert residual(c, q) < 1e-12 and residual(c, r) < 1e-12
        assert incidence(f, np.cross(q, r)) < 1e-9


@pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind)
def test_methods_agree_on_random_conics(g, rng):
    for _ in range(15):
        c, p = random_conic_through(rng, g)
        a = fregier_point_chords(g, c, p)
        b = fregier_point_isotropic(g, c, p)
        assert equal_up_to_scale(a, b, tol=LOOSE)


@pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind)
def test_involution_image_is_on_conic_and_chord_through_f(g, rng):
    c, p = random_conic_through(rng, g)
    f = fregier_point(g, c, p)
    q = right_chord(g, c, p, 0.5)[0]
    r = involution_image(g, c, p, q)
    assert residual(c, r) < 1e-10
    assert incidence(f, np.cross(q, r.coords)) < 1e-8
    assert equal_up_to_scale(involution_image(g, c, p, r), q, tol=LOOSE)


def test_isotropic_projections_are_conjugate():
    c = np.diag([-1.0, 1.0, 3.0])
    i, j = isotropic_projections(EUCLIDEAN, c, [1.0, 1.0, 0.0])
    assert equal_up_to_scale(i, np.conj(j))
    assert residual(c, i) < 1e-12


def test_preconditions():
    c = np.diag([-1.0, 1.0, 1.0])
    with pytest.raises(SingularConic):
        fregier_point(EUCLIDEAN, np.diag([-1.0, 1.0, 0.0]), [1.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        fregier_point(EUCLIDEAN, c, [1.0, 0.5, 0.0])
    with pytest.raises(IsotropicTangent):
        # the unit circle is the hyperbolic absolute, so every tangent is isotropic
        fregier_point(HYPERBOLIC, c, [1.0, 0.6, 0.8])


@pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind)
def test_fregier_point_lies_on_normal(g, rng):
    for _ in range(10):
        c, p = random_conic_through(rng, g)
        f = fregier_point(g, c, p).coords
        n = normal_line(g, c, p).coords
        assert abs(n @ f) < 1e-8 * np.linalg.norm(n) * np.linalg.norm(f)
