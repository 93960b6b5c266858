"""Centro-equiaffine and centro-affine differential invariants of closed curves.

The centro-equiaffine arc-length density is s = [C, C_p] and the curvature
mu = [C_sigma, C_sigmasigma] satisfies mu*C + C_sigmasigma = 0. The
centro-affine metric is g = sqrt(eps*[C_p, C_pp]/[C, C_p]) with eps the
common sign of the ratio, and the centro-affine curvature is

    phi = sqrt(eps*[C, C_p]/[C_p, C_pp])
          * (1.5*[C, C_pp]/[C, C_p] - 0.5*[C_p, C_ppp]/[C_p, C_pp]).

phi_from_mu provides an independent route, phi = -(eps/2)(eps*mu)^(-3/2) mu_sigma.
"""

from dataclasses import dataclass

import numpy as np

from .curve import ClosedCurve, bracket
from .errors import DegenerateMetric, NonConstantSign, NotStarShaped
from .spectral import (_trimmed_spectrum, antiderivative, derivative,
                       periodic_integral)

SIGN_TOL = 1e-12


@dataclass(frozen=True)
class InvariantField:
    """All differential invariants of one curve, sampled on its grid.

    epsilon: common sign of [C_p,C_pp]/[C,C_p] (+1 for every valid closed curve);
    sigma_density: d(sigma)/dp; mu: centro-equiaffine curvature;
    g: centro-affine metric d(xi)/dp; xi: arc length anchored at p = 0;
    phi: centro-affine curvature.
    """

    epsilon: int
    sigma_density: np.ndarray
    mu: np.ndarray
    g: np.ndarray
    xi: np.ndarray
    phi: np.ndarray

    @property
    def n(self) -> int:
        return len(self.g)


def _sigma_density(curve: ClosedCurve, cp=None):
    s = bracket(curve.points, curve.derivative(1) if cp is None else cp)
    tol = SIGN_TOL * np.abs(s).max()
    if not (np.all(s > tol) or np.all(s < -tol)):
        raise NotStarShaped("[C, C_p] changes sign: curve is not star-shaped")
    return s


def centro_equiaffine(curve: ClosedCurve):
    """Return (sigma_density, mu) for a star-shaped curve.

    mu is evaluated by the chain rule through the free parameter:
    C_sigma = C_p/s, C_sigmasigma = (C_pp - (s_p/s) C_p)/s^2 with s = [C, C_p].
    """
    cp = curve.derivative(1)
    cpp = curve.derivative(2)
    s = _sigma_density(curve, cp)
    s_p = derivative(s)
    c_sigma = cp / s[:, None]
    c_sigma2 = (cpp - (s_p / s)[:, None] * cp) / (s**2)[:, None]
    mu = bracket(c_sigma, c_sigma2)
    return s, mu


def _metric_curvature(points: np.ndarray):
    """Lean core shared with the curve flow: (cp, den, eps, g, phi).

    One forward FFT per component; derivative orders 1..3 reuse the
    noise-trimmed spectrum.
    """
    n = points.shape[0]
    spec = _trimmed_spectrum(points)
    k = np.arange(n // 2 + 1)
    ik = (1j * k)[:, None]
    ik_odd = ik.copy()
    if n % 2 == 0:
        ik_odd[-1] = 0.0
    cp = np.fft.irfft(spec * ik_odd, n=n, axis=0)
    cpp = np.fft.irfft(spec * ik**2, n=n, axis=0)
    cppp = np.fft.irfft(spec * ik_odd**3, n=n, axis=0)

    den = bracket(points, cp)            # [C, C_p]
    num = bracket(cp, cpp)               # [C_p, C_pp]

    tol_den = SIGN_TOL * np.abs(den).max()
    if not (np.all(den > tol_den) or np.all(den < -tol_den)):
        raise NotStarShaped("[C, C_p] changes sign: curve is not star-shaped")

    ratio = num / den
    signs = np.sign(ratio)
    if signs.max() != signs.min():
        raise NonConstantSign("sign of [C_p, C_pp]/[C, C_p] varies over the grid")
    eps = int(signs[0])

    radicand = eps * ratio
    if np.any(radicand <= SIGN_TOL * radicand.max()):
        raise DegenerateMetric("metric radicand [C_p, C_pp]/[C, C_p] vanishes on the grid")
    g = np.sqrt(radicand)

    # sqrt(eps*den/num) is 1/g; no extra radicand to guard
    phi = (1.0 / g) * (1.5 * bracket(points, cpp) / den
                       - 0.5 * bracket(cp, cppp) / num)
    return cp, cpp, den, eps, g, phi


def centro_affine(curve: ClosedCurve) -> InvariantField:
    """Full invariant field of a star-shaped curve with one-signed [C_p, C_pp]."""
    cp, cpp, den, eps, g, phi = _metric_curvature(curve.points)

    s_p = derivative(den)
    c_sigma = cp / den[:, None]
    c_sigma2 = (cpp - (s_p / den)[:, None] * cp) / (den**2)[:, None]
    mu = bracket(c_sigma, c_sigma2)

    xi = antiderivative(g)
    return InvariantField(epsilon=eps, sigma_density=den, mu=mu, g=g, xi=xi, phi=phi)


def phi_from_mu(curve: ClosedCurve) -> np.ndarray:
    """Centro-affine curvature via the centro-equiaffine relation.

    Independent cross-check of centro_affine: phi = -(1/2) mu^(-3/2) mu_sigma
    with mu_sigma = mu_p / sigma_density (the eps = +1 branch; mu must be
    positive everywhere).
    """
    s, mu = centro_equiaffine(curve)
    if np.any(mu <= SIGN_TOL * np.abs(mu).max()):
        raise DegenerateMetric("mu is not positive: eps = +1 relation not applicable")
    mu_sigma = derivative(mu) / s
    return -0.5 * mu**-1.5 * mu_sigma


def perimeter(field: InvariantField) -> float:
    """Centro-affine perimeter L = closed integral of d(xi)."""
    return periodic_integral(field.g)


def energy(field: InvariantField) -> float:
    """E = closed integral of phi^2 d(xi)."""
    return periodic_integral(field.phi**2 * field.g)


def xi_derivative(values: np.ndarray, g: np.ndarray, order: int = 1) -> np.ndarray:
    """Apply d/d(xi) = (1/g) d/dp `order` times."""
    if order < 1:
        raise ValueError(f"xi-derivative order must be >= 1, got {order}")
    g = np.asarray(g, dtype=float)
    if np.any(g <= 0):
        raise DegenerateMetric("metric g must be positive for xi-derivatives")
    out = np.asarray(values, dtype=float)
    for _ in range(order):
        out = derivative(out) / g
    return out


def sobolev_norm(field: InvariantField, n: int) -> float:
    """Closed integral of (d^n phi / d xi^n)^2 d(xi); n = 0 reproduces the energy."""
    if n < 0:
        raise ValueError(f"sobolev order must be >= 0, got {n}")
    if n == 0:
        return energy(field)
    f = xi_derivative(field.phi, field.g, n)
    return periodic_integral(f**2 * field.g)
