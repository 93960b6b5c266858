"""Shared oracles for the test suite.

The finite-difference helpers are deliberately independent of the package's
spectral machinery so they can serve as cross-checks for it.
"""

import numpy as np
import pytest


def fd_derivative(values: np.ndarray, order: int, h: float) -> np.ndarray:
    """Periodic centered finite differences, iterated; O(h^2) accurate."""
    out = np.asarray(values, dtype=float)
    for _ in range(order):
        out = (np.roll(out, -1, axis=0) - np.roll(out, 1, axis=0)) / (2.0 * h)
    return out


def fd_bracket_signs(points: np.ndarray):
    """Sign pattern of [C, C_p] and [C_p, C_pp] from dense finite differences."""
    n = len(points)
    h = 2.0 * np.pi / n
    cp = fd_derivative(points, 1, h)
    cpp = fd_derivative(points, 2, h)
    d = points[:, 0] * cp[:, 1] - points[:, 1] * cp[:, 0]
    m = cp[:, 0] * cpp[:, 1] - cp[:, 1] * cpp[:, 0]
    return d, m


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
