"""Scenario configuration, execution and batch sweeps.

A scenario is one JSON document; see ScenarioConfig.from_json for the exact
field set. run_scenario executes the configured flow(s), the verdict suite
and all emissions. Exit codes: 0 all verdicts passed, 1 configuration error,
2 verdict failure, 3 flow failure (failure time lands in the report).
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import curvature_flow, curve_flow, diagnostics
from .curve import ClosedCurve, preset
from .errors import ConfigError, FlowError
from .invariants import centro_affine
from .io import read_curve_json, write_csv, write_report, write_svg

ENV_OUTDIR = "CENTROFLOW_OUTDIR"
FLOWS = ("curvature", "curve", "both")

_FIELD_TYPES = {
    "name": str,
    "curve": (dict, str),
    "N": int,
    "dt": (int, float),
    "t_end": (int, float),
    "lambda": (int, float),
    "flow": str,
    "normalization": str,
    "record_stride": int,
    "sobolev_max_n": int,
    "seed": int,
    "check_convergence": bool,
    "dealias": bool,
    "snapshot_stride": int,
    "outputs": dict,
}


@dataclass
class ScenarioConfig:
    name: str
    curve: dict | str           # preset spec {"kind": ..., params} or path to curve JSON
    n: int = 256
    dt: float = 1e-4
    t_end: float = 1.0
    lam: float = 0.0
    flow: str = "curvature"
    normalization: str = "unit_area_scale"
    record_stride: int = 1
    sobolev_max_n: int = 4
    seed: int = 0
    check_convergence: bool = False
    dealias: bool = True
    csv_path: str | None = None
    report_path: str | None = None
    svg_dir: str | None = None
    snapshot_stride: int = 0

    def validate(self) -> "ScenarioConfig":
        if self.dt <= 0 or self.t_end <= 0:
            raise ConfigError("dt and t_end must be positive")
        if self.n < 16 or self.n % 2:
            raise ConfigError("N must be even and >= 16")
        if self.record_stride < 1:
            raise ConfigError("record_stride must be >= 1")
        if self.flow not in FLOWS:
            raise ConfigError(f"flow must be one of {FLOWS}")
        if self.normalization not in curve_flow.NORMALIZATIONS:
            raise ConfigError(f"normalization must be one of {curve_flow.NORMALIZATIONS}")
        if self.check_convergence and self.flow == "curvature":
            raise ConfigError("check_convergence needs curve samples: use flow 'curve' or 'both'")
        return self

    @classmethod
    def from_json(cls, path) -> "ScenarioConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be an object")
        for key, value in raw.items():
            expected = _FIELD_TYPES.get(key)
            if expected is None:
                raise ConfigError(f"{path}: unknown field {key!r}")
            if isinstance(value, bool) and expected is not bool:
                raise ConfigError(f"{path}: field {key!r} has wrong type")
            if not isinstance(value, expected):
                raise ConfigError(f"{path}: field {key!r} has wrong type")
        for required in ("name", "curve"):
            if required not in raw:
                raise ConfigError(f"{path}: missing required field {required!r}")
        outputs = raw.get("outputs", {})
        cfg = cls(
            name=raw["name"],
            curve=raw["curve"],
            n=raw.get("N", 256),
            dt=float(raw.get("dt", 1e-4)),
            t_end=float(raw.get("t_end", 1.0)),
            lam=float(raw.get("lambda", 0.0)),
            flow=raw.get("flow", "curvature"),
            normalization=raw.get("normalization", "unit_area_scale"),
            record_stride=raw.get("record_stride", 1),
            sobolev_max_n=raw.get("sobolev_max_n", 4),
            seed=raw.get("seed", 0),
            check_convergence=raw.get("check_convergence", False),
            dealias=raw.get("dealias", True),
            csv_path=outputs.get("csv"),
            report_path=outputs.get("report"),
            svg_dir=outputs.get("svg_dir"),
            snapshot_stride=raw.get("snapshot_stride", outputs.get("snapshot_stride", 0)),
        )
        return cfg.validate()

    def build_curve(self) -> ClosedCurve:
        if isinstance(self.curve, str):
            return read_curve_json(self.curve)
        spec = dict(self.curve)
        kind = spec.pop("kind", None)
        if kind is None:
            raise ConfigError("curve spec needs a 'kind' field")
        try:
            return preset(kind, n=self.n, **spec)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"curve spec invalid: {exc}") from exc


def _resolve(configured, default_dir: Path, fallback: str) -> Path:
    p = Path(configured) if configured else Path(fallback)
    if not p.is_absolute():
        p = default_dir / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def run_scenario(config: ScenarioConfig, out_dir=None, *, verdicts_only: bool = False,
                 printer=None) -> int:
    """Execute one scenario end to end; returns the process exit status.

    verdicts_only suppresses CSV/SVG emission (the report is always written).
    printer, when given, receives one line per verdict.
    """
    default_dir = Path(out_dir or os.environ.get(ENV_OUTDIR, "."))
    report_path = _resolve(config.report_path, default_dir, f"{config.name}.report.json")
    csv_path = _resolve(config.csv_path, default_dir, f"{config.name}.csv")
    extra = {"seed": config.seed, "flow": config.flow,
             "dt": config.dt, "t_end": config.t_end, "lambda": config.lam}

    curve0 = config.build_curve()
    field0 = centro_affine(curve0)
    verdicts = [diagnostics.check_mean_zero(field0),
                diagnostics.check_isoperimetric(field0)]

    scalar_traj = curve_traj = None
    try:
        if config.flow in ("curvature", "both"):
            state = curvature_flow.CurvatureFlowState.from_field(field0)
            scalar_traj = curvature_flow.evolve(
                state, config.t_end, config.dt, record_stride=config.record_stride,
                sobolev_max_n=config.sobolev_max_n, use_dealias=config.dealias)
        if config.flow in ("curve", "both"):
            state = curve_flow.CurveFlowState(
                t=0.0, curve=curve0, lam=config.lam, normalization=config.normalization)
            curve_traj = curve_flow.evolve(
                state, config.t_end, config.dt, record_stride=config.record_stride,
                sobolev_max_n=config.sobolev_max_n,
                snapshot_stride=config.snapshot_stride)
    except FlowError as exc:
        write_report(config.name, verdicts, report_path,
                     error={"type": type(exc).__name__, "message": str(exc),
                            "time": exc.time}, extra=extra)
        if printer:
            printer(f"FLOW ERROR {type(exc).__name__} at t={exc.time}")
        return 3

    primary = curve_traj if curve_traj is not None else scalar_traj
    verdicts.append(diagnostics.check_curvature_bounds(
        primary, float(field0.phi.min()), float(field0.phi.max())))
    if len(primary) >= 5:
        verdicts.extend(diagnostics.check_energy_identities(primary))
    verdicts.extend(diagnostics.check_monotone_L_and_integralE(primary))
    verdicts.append(diagnostics.check_sobolev_bounded(primary, config.sobolev_max_n))

    final_curve = curve_traj.final.physical_curve if curve_traj is not None else None
    if config.check_convergence and final_curve is not None:
        verdicts.append(diagnostics.check_convergence_to_ellipse(curve_traj, final_curve))
    if config.flow == "both":
        gap = float(np.abs(centro_affine(final_curve).phi - scalar_traj.final.phi).max())
        verdicts.append(diagnostics.Verdict(
            "flow_equivalence", gap <= 1e-4, gap, 0.0, 1e-4,
            context="final curvature gap, curve flow vs curvature flow"))

    if not verdicts_only:
        write_csv(primary, csv_path)
        if config.svg_dir:
            _emit_svgs(_resolve(None, default_dir, config.svg_dir), config,
                       curve0, curve_traj, final_curve)
    write_report(config.name, verdicts, report_path, extra=extra)
    if printer:
        for v in verdicts:
            printer(f"{'PASS' if v.passed else 'FAIL'} {v.name}: measured={v.measured!r} "
                    f"bound={v.bound!r} tol={v.tolerance!r} {v.context}")
    return 0 if all(v.passed for v in verdicts) else 2


def _emit_svgs(svg_dir: Path, config, curve0, curve_traj, final_curve) -> None:
    svg_dir.mkdir(parents=True, exist_ok=True)
    write_svg(curve0, svg_dir / f"{config.name}.initial.svg")
    if curve_traj is not None:
        for t, snap in curve_traj.snapshots:
            write_svg(snap, svg_dir / f"{config.name}.t{t:.6f}.svg")
    if final_curve is not None:
        form, residual = diagnostics.fit_origin_ellipse(final_curve.points)
        fitted = form if residual < 1e-3 else None
        write_svg(final_curve, svg_dir / f"{config.name}.final.svg", fitted_form=fitted)


def run_sweep(directory, out_dir=None, printer=None) -> int:
    """Run every *.json scenario in the directory in parallel, one worker each.

    Returns the worst exit status; per-scenario outputs stay independent.
    """
    paths = sorted(Path(directory).glob("*.json"))
    if not paths:
        raise ConfigError(f"no scenario files in {directory}")
    configs = [ScenarioConfig.from_json(p) for p in paths]
    with ThreadPoolExecutor(max_workers=len(configs)) as pool:
        codes = list(pool.map(lambda c: run_scenario(c, out_dir=out_dir), configs))
    if printer:
        for cfg, code in zip(configs, codes):
            printer(f"{cfg.name}: exit {code}")
    return max(codes)
