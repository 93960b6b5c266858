"""File formats: curve JSON, trajectory CSV, SVG snapshots, verdict reports.

The curve file is a JSON object {"name": str, "points": [[x, y], ...]}
interpreted as uniform periodic samples. CSV columns are fixed:
t, L, E, phi_min, phi_max, mean_phi, H1, H2, H3, H4, energy_residual,
h1_residual, area - written at full double precision (shortest round-trip
repr), so identical runs produce byte-identical files.
"""

import json
import math
from pathlib import Path

import numpy as np

from .curve import ClosedCurve
from .trajectory import FlowTrajectory

CSV_COLUMNS = ("t", "L", "E", "phi_min", "phi_max", "mean_phi",
               "H1", "H2", "H3", "H4", "energy_residual", "h1_residual", "area")


def read_curve_json(path) -> ClosedCurve:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(payload, dict) or "points" not in payload:
        raise ValueError(f"{path}: expected an object with a 'points' array")
    points = np.asarray(payload["points"], dtype=float)
    return ClosedCurve(points, name=str(payload.get("name", path.stem)))


def write_curve_json(curve: ClosedCurve, path) -> None:
    path = Path(path)
    payload = {"name": curve.name, "points": [[float(x), float(y)] for x, y in curve.points]}
    path.write_text(json.dumps(payload))


def _fmt(value: float) -> str:
    return repr(float(value))


def write_csv(traj: FlowTrajectory, path) -> None:
    """One row per record; header always present, so an empty trajectory
    yields a header-only file."""
    path = Path(path)
    lines = [",".join(CSV_COLUMNS)]
    for r in traj.records:
        sob = list(r.sobolev[:4]) + [math.nan] * max(0, 4 - len(r.sobolev))
        row = [r.t, r.L, r.E, r.phi_min, r.phi_max, r.mean_phi, *sob,
               r.energy_residual, r.h1_residual, r.area]
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def write_report(scenario_name: str, verdicts, path, *, error: dict | None = None,
                 extra: dict | None = None) -> None:
    """JSON report: {"scenario": ..., "verdicts": [...]} plus optional error/extras."""
    payload = {"scenario": scenario_name,
               "verdicts": [v.as_dict() for v in verdicts]}
    if extra:
        payload.update(extra)
    if error is not None:
        payload["error"] = error
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_svg(curve: ClosedCurve, path, *, fitted_form: np.ndarray | None = None,
              size: int = 480) -> None:
    """Closed polyline with the origin marked; optional fitted-ellipse overlay.

    The fitted form is the SPD matrix Q of the locus C^T Q C = 1. The y axis
    is flipped so the geometry appears in the usual orientation.
    """
    pts = curve.points
    span = float(np.abs(pts).max()) * 1.15
    span = max(span, 1e-12)

    def sx(x):
        return (x / span * 0.5 + 0.5) * size

    def sy(y):
        return (-y / span * 0.5 + 0.5) * size

    def path_of(samples):
        coords = " L ".join(f"{sx(x):.3f} {sy(y):.3f}" for x, y in samples)
        return f"M {coords} Z"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<path d="{path_of(pts)}" fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    if fitted_form is not None:
        # map the unit circle through Q^(-1/2) to draw the locus C^T Q C = 1
        vals, vecs = np.linalg.eigh(np.asarray(fitted_form, dtype=float))
        if np.all(vals > 0):
            root_inv = vecs @ np.diag(vals**-0.5) @ vecs.T
            theta = np.linspace(0.0, 2.0 * np.pi, 181)
            ring = np.stack([np.cos(theta), np.sin(theta)], axis=1) @ root_inv.T
            parts.append(f'<path d="{path_of(ring)}" fill="none" stroke="red" '
                         f'stroke-width="1" stroke-dasharray="6 4"/>')
    ox, oy = sx(0.0), sy(0.0)
    parts.append(f'<line x1="{ox - 6:.3f}" y1="{oy:.3f}" x2="{ox + 6:.3f}" y2="{oy:.3f}" '
                 f'stroke="blue" stroke-width="1"/>')
    parts.append(f'<line x1="{ox:.3f}" y1="{oy - 6:.3f}" x2="{ox:.3f}" y2="{oy + 6:.3f}" '
                 f'stroke="blue" stroke-width="1"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
