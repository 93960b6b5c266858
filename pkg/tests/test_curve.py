import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from centroflow.curve import (ClosedCurve, bracket, check_convex,
                              check_star_shaped, origin_ellipse,
                              perturbed_ellipse, preset, random_star_convex,
                              shifted_ellipse, star_convex)
from centroflow.errors import DegenerateMetric, NotStarShaped
from conftest import fd_bracket_signs

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
small = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_bracket_examples():
    assert bracket((1, 0), (0, 1)) == 1.0
    assert bracket((1, 0), (1, 0)) == 0.0
    # by hand: 2*3 - 1*(-1) = 7
    assert bracket((2, 1), (-1, 3)) == 7.0


@given(ax=finite, ay=finite, bx=finite, by=finite)
def test_bracket_antisymmetric(ax, ay, bx, by):
    a, b = np.array([ax, ay]), np.array([bx, by])
    assert bracket(a, b) == -bracket(b, a)


@given(ax=small, ay=small, bx=small, by=small, cx=small, cy=small,
       s=st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_bracket_bilinear(ax, ay, bx, by, cx, cy, s):
    a, b, c = np.array([ax, ay]), np.array([bx, by]), np.array([cx, cy])
    left = bracket(a + s * c, b)
    right = bracket(a, b) + s * bracket(c, b)
    # absolute slack covers rounding of a + s*c scaled by |b|
    assert left == pytest.approx(right, rel=1e-9, abs=1e-6)


def test_curve_validation():
    with pytest.raises(ValueError):
        ClosedCurve(np.zeros((8, 2)))          # too few samples
    with pytest.raises(ValueError):
        ClosedCurve(np.zeros((17, 2)))         # odd
    with pytest.raises(ValueError):
        ClosedCurve(np.full((32, 2), np.nan))  # non-finite
    with pytest.raises(ValueError):
        ClosedCurve(np.zeros((32, 3)))         # wrong shape


def test_curve_samples_immutable():
    c = origin_ellipse(1, 1, n=32)
    with pytest.raises(ValueError):
        c.points[0, 0] = 5.0


def test_circle_derivatives_exact():
    c = origin_ellipse(1, 1)
    p = c.p
    d1 = c.derivative(1)
    assert np.abs(d1 - np.stack([-np.sin(p), np.cos(p)], axis=1)).max() <= 1e-12
    d2 = c.derivative(2)
    assert np.abs(d2 + c.points).max() <= 1e-12


def test_ellipse_third_derivative():
    # symbolic: d^3/dp^3 (2cos, sin/2) = (2sin, -cos/2)
    c = origin_ellipse(2.0, 0.5)
    p = c.p
    want = np.stack([2 * np.sin(p), -0.5 * np.cos(p)], axis=1)
    assert np.abs(c.derivative(3) - want).max() <= 1e-12


def test_preset_sampling_matches_formulas():
    n = 256
    p = origin_ellipse(2, 0.5, n).p
    assert np.allclose(origin_ellipse(2, 0.5, n).points,
                       np.stack([2 * np.cos(p), 0.5 * np.sin(p)], axis=1))
    assert np.allclose(shifted_ellipse(1, 1, 0.5, 0, n).points,
                       np.stack([0.5 + np.cos(p), np.sin(p)], axis=1))
    r = 1 + 0.05 * np.cos(3 * p)
    assert np.allclose(perturbed_ellipse(1, 1, 0.05, 3, n).points,
                       np.stack([r * np.cos(p), r * np.sin(p)], axis=1))


def test_star_and_convex_checks_on_ellipse():
    c = origin_ellipse(2, 0.5)
    assert check_star_shaped(c)
    assert check_convex(c)


def test_origin_outside_is_not_star_shaped():
    c = shifted_ellipse(1, 1, 2.0, 0.0)
    # oracle: dense finite-difference sign scan of [C, C_p]
    d, _ = fd_bracket_signs(shifted_ellipse(1, 1, 2.0, 0.0, n=2048).points)
    assert d.min() < 0 < d.max()
    assert not check_star_shaped(c)


def test_large_high_mode_perturbation_is_not_convex():
    c = perturbed_ellipse(1, 1, 0.5, 8, require_convex=False)
    _, m = fd_bracket_signs(perturbed_ellipse(1, 1, 0.5, 8, n=4096).points)
    assert m.min() < 0 < m.max()
    assert not check_convex(c)
    assert check_star_shaped(c)  # radius stays positive


def test_perturbed_preset_validation():
    with pytest.raises(NotStarShaped):
        perturbed_ellipse(1, 1, 1.5, 3)        # radius crosses zero
    with pytest.raises(DegenerateMetric):
        perturbed_ellipse(1, 1, 0.5, 8, require_convex=True)
    with pytest.raises(ValueError):
        perturbed_ellipse(1, 1, 0.05, 33)      # mode above N/8


def test_star_convex_preset_and_errors():
    c = star_convex([0.05, 0.02], [0.0, -0.03])
    assert check_convex(c)
    with pytest.raises(NotStarShaped):
        star_convex([1.2], [0.0])              # radius not positive
    with pytest.raises(ValueError):
        star_convex([0.1], [0.0, 0.0])         # mismatched lengths


def test_random_star_convex_deterministic_and_convex():
    a = random_star_convex(7)
    b = random_star_convex(7)
    assert np.array_equal(a.points, b.points)
    for seed in range(25):
        c = random_star_convex(seed)
        assert check_star_shaped(c) and check_convex(c)


def test_preset_dispatcher():
    c = preset("origin_ellipse", a=1.0, b=2.0)
    assert c.n == 256
    with pytest.raises(ValueError):
        preset("klein_bottle")


def test_enclosed_area_of_ellipse():
    assert origin_ellipse(2, 0.5).enclosed_area() == pytest.approx(np.pi, abs=1e-12)
    assert shifted_ellipse(1, 1, 0.4, 0.2).enclosed_area() == pytest.approx(np.pi, abs=1e-12)
