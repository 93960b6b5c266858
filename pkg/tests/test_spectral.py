import numpy as np
import pytest

from centroflow.spectral import (antiderivative, dealias, derivative, grid,
                                 periodic_integral)


def test_grid_endpoints():
    p = grid(8)
    assert p[0] == 0.0
    assert np.allclose(np.diff(p), np.pi / 4)


@pytest.mark.parametrize("m", [1, 3, 7, 20])
@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_pure_mode_derivative_exact(m, order):
    n = 128
    p = grid(n)
    f = np.cos(m * p)
    got = derivative(f, order)
    # d^k cos(mp) cycles through +-m^k sin/cos
    table = [np.cos(m * p), -m * np.sin(m * p), -m**2 * np.cos(m * p), m**3 * np.sin(m * p)]
    want = table[order % 4] * m ** (4 * (order // 4))
    assert np.abs(got - want).max() <= 1e-10 * max(1.0, m**order)


def test_derivative_rejects_bad_order():
    with pytest.raises(ValueError):
        derivative(np.zeros(32), 0)


def test_derivative_matches_finite_differences():
    # independent FD oracle on a matching dense grid
    from conftest import fd_derivative
    dense, coarse = 4096, 64
    f_dense = np.exp(np.sin(grid(dense)))
    fd = fd_derivative(f_dense, 1, 2 * np.pi / dense)[:: dense // coarse]
    spec = derivative(np.exp(np.sin(grid(coarse))))
    assert np.abs(spec - fd).max() <= 1e-5


def test_periodic_integral_examples():
    n = 256
    p = grid(n)
    assert periodic_integral(np.ones(n)) == pytest.approx(2 * np.pi, abs=1e-14)
    assert abs(periodic_integral(np.sin(p))) <= 1e-14
    # closed form: integral of sin^2 over a period is pi
    assert periodic_integral(np.sin(p) ** 2) == pytest.approx(np.pi, abs=1e-12)


def test_integral_of_derivative_vanishes():
    n = 256
    p = grid(n)
    f = np.exp(np.cos(2 * p)) + 0.3 * np.sin(5 * p)
    for order in (1, 2, 3):
        assert abs(periodic_integral(derivative(f, order))) <= 1e-12


def test_antiderivative_anchor_and_exact_form():
    n = 256
    p = grid(n)
    f = 1.5 + np.cos(3 * p)
    F = antiderivative(f)
    assert F[0] == 0.0
    exact = 1.5 * p + np.sin(3 * p) / 3
    assert np.abs(F - exact).max() <= 1e-12


def test_antiderivative_of_mean_zero_is_periodic():
    n = 128
    p = grid(n)
    f = np.cos(4 * p) - 0.2 * np.sin(p)
    F = antiderivative(f)
    exact = np.sin(4 * p) / 4 + 0.2 * (np.cos(p) - 1.0)
    assert np.abs(F - exact).max() <= 1e-13


def test_dealias_zeroes_top_third():
    n = 96
    p = grid(n)
    f = np.cos(2 * p) + np.cos((n // 3) * p) + np.cos((n // 2 - 1) * p)
    g = dealias(f)
    spec = np.fft.rfft(g)
    assert np.abs(spec[n // 3:]).max() <= 1e-12
    assert np.abs(g - np.cos(2 * p)).max() <= 1e-12


def test_dealias_keeps_constants():
    f = np.full(64, 2.0)
    assert np.abs(dealias(f) - 2.0).max() <= 1e-14
