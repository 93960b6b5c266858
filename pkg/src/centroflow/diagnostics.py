"""Machine-checkable verdicts for the geometric identities, bounds and limits.

Each check returns a Verdict whose `passed` flag restates a quantitative
relation between `measured`, `bound` and `tolerance`; the context string
records what was compared. Verdicts are deterministic given identical inputs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .curve import ClosedCurve, bracket
from .errors import InsufficientStride
from .invariants import InvariantField, centro_affine, perimeter, xi_derivative
from .spectral import grid, periodic_integral
from .trajectory import FlowTrajectory

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    measured: float
    bound: float
    tolerance: float
    context: str = ""

    def __post_init__(self):
        # normalize numpy scalars so reprs and JSON stay plain
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "measured", float(self.measured))
        object.__setattr__(self, "bound", float(self.bound))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "context": self.context,
        }


def check_mean_zero(field: InvariantField) -> Verdict:
    """Closed-curve curvature has zero mean: |closed integral of phi dxi| <= 1e-8 L."""
    L = perimeter(field)
    measured = abs(periodic_integral(field.phi * field.g))
    tol = 1e-8 * L
    return Verdict("mean_zero", measured <= tol, measured, 0.0, tol,
                   context=f"L={L!r}")


def check_isoperimetric(field: InvariantField) -> Verdict:
    """Perimeter against the 2*pi bound; equality flagged at 1e-10.

    Note: the bound provably fails for curves whose mode-1 (origin offset)
    content is large enough; the verdict reports the measured relation
    either way.
    """
    L = perimeter(field)
    passed = L <= TWO_PI + 1e-8
    if abs(L - TWO_PI) <= 1e-10:
        context = "equality"
    elif passed:
        context = "strict"
    else:
        context = "exceeded"
    return Verdict("isoperimetric", passed, L, TWO_PI, 1e-8, context=context)


def check_curvature_bounds(traj: FlowTrajectory, phi0_min: float, phi0_max: float) -> Verdict:
    """Extrema confinement: min(-2, phi_min(0)) <= phi <= max(2, phi_max(0))."""
    lo = min(-2.0, phi0_min)
    hi = max(2.0, phi0_max)
    worst = 0.0
    for r in traj.records:
        worst = max(worst, r.phi_max - hi, lo - r.phi_min)
    worst = max(worst, 0.0)
    return Verdict("curvature_bounds", worst <= 1e-6, worst, 0.0, 1e-6,
                   context=f"bounds=[{lo!r},{hi!r}]")


def check_energy_identities(traj: FlowTrajectory) -> tuple:
    """Residuals of the energy law and its first-derivative analogue.

    Uses the scale-normalized centered-difference residuals already
    finalized on the trajectory; the worst interior value must stay within
    1e-4 for each identity.
    """
    if len(traj.records) < 5:
        raise InsufficientStride(
            f"need at least 5 records for centered differencing, have {len(traj.records)}")
    interior = traj.records[1:-1]
    res_e = max(r.energy_residual for r in interior)
    res_h = max(r.h1_residual for r in interior)
    v1 = Verdict("energy_identity", res_e <= 1e-4, res_e, 0.0, 1e-4,
                 context="dE/dt = -H1 - quartic/2 + 4E, scale-normalized")
    v2 = Verdict("h1_identity", res_h <= 1e-4, res_h, 0.0, 1e-4,
                 context="dH1/dt = -H2 + 4*H1 - 3.5*mixed, scale-normalized")
    return v1, v2


def check_monotone_L_and_integralE(traj: FlowTrajectory) -> tuple:
    """(a) L nondecreasing with E = 2 dL/dt (trapezoid consistency);
    (b) accumulated integral of E bounded by 4*pi.

    Trapezoid form of the rate identity: L(t_{i+1}) - L(t_i) is the integral
    of E/2, so 4 dL / dt_interval matches E_i + E_{i+1}.
    """
    t = traj.times
    L = traj.column("L")
    E = traj.column("E")
    monotone = bool(np.all(np.diff(L) >= -1e-12 * L[:-1]))
    worst = 0.0
    for i in range(len(t) - 1):
        dt = t[i + 1] - t[i]
        resid = abs(4.0 * (L[i + 1] - L[i]) / dt - (E[i] + E[i + 1]))
        worst = max(worst, resid / (E[i] + E[i + 1] + 1.0))
    v1 = Verdict("L_monotone_energy_rate", monotone and worst <= 1e-4, worst, 0.0, 1e-4,
                 context=f"monotone={monotone}, residual of E = 2 dL/dt")
    integral_e = float(np.trapezoid(E, t)) if len(t) > 1 else 0.0
    v2 = Verdict("integral_E_bound", integral_e <= 4.0 * math.pi + 1e-6,
                 integral_e, 4.0 * math.pi, 1e-6, context="trapezoid over records")
    return v1, v2


def check_sobolev_bounded(traj: FlowTrajectory, n_max: int = 4) -> Verdict:
    """Each recorded Sobolev integral stays within 10x its maximum over the first
    time unit (absolute floor 1e-20 guards identically-zero trajectories)."""
    t = traj.times
    t_head = t[0] + 1.0
    worst = 0.0
    orders = min(n_max, len(traj.records[0].sobolev)) if traj.records else 0
    for n in range(orders):
        h = np.array([r.sobolev[n] for r in traj.records])
        head_max = max(float(h[t <= t_head].max()), 1e-20)
        worst = max(worst, float(h.max()) / head_max)
    return Verdict("sobolev_bounded", worst <= 10.0, worst, 10.0, 0.0,
                   context=f"orders 1..{orders}, first-unit reference")


def fit_origin_ellipse(points: np.ndarray):
    """Least-squares symmetric quadratic form Q with C^T Q C = 1 over the samples.

    Returns (Q, residual) with residual the worst nodewise |C^T Q C - 1|.
    Q is the fitted form whether or not it is positive definite; callers
    decide what residual/definiteness to require.
    """
    x, y = points[:, 0], points[:, 1]
    design = np.stack([x * x, 2.0 * x * y, y * y], axis=1)
    coef, *_ = np.linalg.lstsq(design, np.ones(len(x)), rcond=None)
    q = np.array([[coef[0], coef[1]], [coef[1], coef[2]]])
    residual = float(np.abs(design @ coef - 1.0).max())
    return q, residual


def check_convergence_to_ellipse(traj: FlowTrajectory, final_curve: ClosedCurve) -> Verdict:
    """Forward-limit proxies: sup|phi| <= 1e-4, |L - 2pi| <= 1e-3, and an
    origin-centered positive-definite quadratic-form fit residual <= 1e-6."""
    field = centro_affine(final_curve)
    sup_phi = float(np.abs(field.phi).max())
    L_gap = abs(perimeter(field) - TWO_PI)
    q, residual = fit_origin_ellipse(final_curve.points)
    definite = bool(np.all(np.linalg.eigvalsh(q) > 0))
    passed = sup_phi <= 1e-4 and L_gap <= 1e-3 and residual <= 1e-6 and definite
    return Verdict("convergence_to_ellipse", passed, residual, 0.0, 1e-6,
                   context=f"sup_phi={sup_phi!r}, L_gap={L_gap!r}, definite={definite}")


def explicit_ellipse_family(a0: float, b0: float, t: float, n: int = 256) -> ClosedCurve:
    """The closed-form solution family: scale factor (a0 b0)^((e^(2t) - 1)/2)
    applied to the ellipse (a0 cos, b0 sin). a0 b0 = 1 is the static member;
    the enclosed area is pi (a0 b0)^(e^(2t)) and tends to pi as t -> -infinity."""
    if a0 <= 0 or b0 <= 0:
        raise ValueError("family axes must be positive")
    scale = (a0 * b0) ** ((math.exp(2.0 * t) - 1.0) / 2.0)
    p = grid(n)
    pts = scale * np.stack([a0 * np.cos(p), b0 * np.sin(p)], axis=1)
    return ClosedCurve(pts, name=f"family({a0},{b0},t={t})")


def family_area(a0: float, b0: float, t: float) -> float:
    """Closed-form enclosed area of the family member."""
    return math.pi * (a0 * b0) ** math.exp(2.0 * t)


def check_backward_limit_on_family(a0: float, b0: float, t_list, n: int = 256) -> Verdict:
    """Backward-limit witness on the explicit family only.

    For each time in the strictly decreasing t_list: sup norms of phi and its
    first two xi-derivatives stay below 1e-10, the sampled area matches the
    closed form to 1e-10, and |area - pi| is nonincreasing as t decreases.
    """
    t_list = list(t_list)
    if len(t_list) < 2 or any(b >= a for a, b in zip(t_list, t_list[1:])):
        raise ValueError("t_list must be strictly decreasing with at least two entries")
    worst_phi = 0.0
    worst_area = 0.0
    deviations = []
    for t in t_list:
        curve = explicit_ellipse_family(a0, b0, t, n)
        field = centro_affine(curve)
        sup = float(np.abs(field.phi).max())
        for order in (1, 2):
            sup = max(sup, float(np.abs(xi_derivative(field.phi, field.g, order)).max()))
        worst_phi = max(worst_phi, sup)
        area = 0.5 * periodic_integral(bracket(curve.points, curve.derivative(1)))
        worst_area = max(worst_area, abs(area - family_area(a0, b0, t)))
        deviations.append(abs(area - math.pi))
    toward_pi = all(b <= a + 1e-12 for a, b in zip(deviations, deviations[1:]))
    passed = worst_phi <= 1e-10 and worst_area <= 1e-10 and toward_pi
    return Verdict("backward_limit_family", passed, worst_phi, 0.0, 1e-10,
                   context=f"area_err={worst_area!r}, monotone_to_pi={toward_pi}")
