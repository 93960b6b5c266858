import json
from pathlib import Path

import pytest

from centroflow.cli import main
from centroflow.curve import origin_ellipse, shifted_ellipse
from centroflow.io import write_curve_json
from centroflow.scenario import ScenarioConfig, run_scenario, run_sweep
from centroflow.errors import ConfigError

REPO = Path(__file__).resolve().parents[1]


def small_scenario(tmp_path, name="small", **overrides):
    # record every step: the identity residuals scale with the square of the
    # record spacing, so coarse sampling would fail them spuriously
    spec = {
        "name": name,
        "curve": {"kind": "perturbed_ellipse", "a": 1.0, "b": 1.0,
                  "amplitude": 0.05, "mode": 3},
        "N": 128,
        "dt": 1e-4,
        "t_end": 0.02,
        "flow": "both",
        "record_stride": 1,
        "outputs": {"csv": f"{name}.csv", "report": f"{name}.report.json"},
    }
    spec.update(overrides)
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(spec))
    return path


def test_invariants_command(tmp_path, capsys):
    curve_path = tmp_path / "ellipse.json"
    write_curve_json(origin_ellipse(2, 0.5), curve_path)
    assert main(["invariants", str(curve_path)]) == 0
    out = capsys.readouterr().out
    assert "epsilon   = 1" in out
    assert "PASS mean_zero" in out
    assert "PASS isoperimetric" in out


def test_invariants_command_failing_curve(tmp_path, capsys):
    curve_path = tmp_path / "shifted.json"
    write_curve_json(shifted_ellipse(1, 1, 0.5, 0), curve_path)
    assert main(["invariants", str(curve_path)]) == 2
    assert "FAIL isoperimetric" in capsys.readouterr().out


def test_evolve_scenario_exit_zero(tmp_path, capsys):
    cfg = small_scenario(tmp_path)
    assert main(["evolve", str(cfg), "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "small.csv").exists()
    report = json.loads((tmp_path / "small.report.json").read_text())
    assert all(v["passed"] for v in report["verdicts"])
    assert any(v["name"] == "flow_equivalence" for v in report["verdicts"])


def test_static_circle_bundled_scenario(tmp_path):
    config = ScenarioConfig.from_json(REPO / "scenarios" / "static-circle.json")
    config.t_end = 0.05  # trimmed horizon: the fixed point does not evolve
    assert run_scenario(config, out_dir=tmp_path) == 0
    rows = (tmp_path / "static-circle.csv").read_text().strip().split("\n")[1:]
    energy_column = [float(r.split(",")[2]) for r in rows]
    assert max(energy_column) <= 1e-25  # machine zero


def test_perturbed_m3_bundled_scenario_wiring(tmp_path):
    # the full 8-unit headline run lives in the acceptance suite; this
    # exercises the bundled config end to end on a trimmed horizon
    config = ScenarioConfig.from_json(REPO / "scenarios" / "perturbed-m3.json")
    config.t_end = 0.2
    config.check_convergence = False  # convergence needs the full horizon
    assert run_scenario(config, out_dir=tmp_path) == 0
    report = json.loads((tmp_path / "perturbed-m3.report.json").read_text())
    assert all(v["passed"] for v in report["verdicts"])


def test_cfl_violation_exits_three(tmp_path):
    cfg = small_scenario(tmp_path, name="unstable", dt=0.5, t_end=1.0, record_stride=1)
    assert main(["evolve", str(cfg), "--out-dir", str(tmp_path)]) == 3
    report = json.loads((tmp_path / "unstable.report.json").read_text())
    assert report["error"]["type"] == "StabilityViolation"
    assert report["error"]["time"] is not None


def test_config_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["evolve", str(bad)]) == 1
    assert "line" in capsys.readouterr().err

    bad.write_text(json.dumps({"name": "x", "curve": {"kind": "origin_ellipse"},
                               "flow": "sideways"}))
    assert main(["evolve", str(bad)]) == 1

    bad.write_text(json.dumps({"name": "x"}))
    assert main(["evolve", str(bad)]) == 1

    bad.write_text(json.dumps({"name": "x", "curve": {"kind": "origin_ellipse", "a": 1, "b": 1},
                               "mystery_field": 3}))
    assert main(["evolve", str(bad)]) == 1


def test_verify_writes_report_only(tmp_path):
    cfg = small_scenario(tmp_path, name="verify-only")
    assert main(["verify", str(cfg), "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "verify-only.report.json").exists()
    assert not (tmp_path / "verify-only.csv").exists()


def test_family_command(capsys):
    assert main(["family", "--a0", "2", "--b0", "1", "--times", "0,-1,-2,-4"]) == 0
    out = capsys.readouterr().out
    assert "PASS backward_limit_family" in out


def test_sweep_runs_all(tmp_path):
    sweep_dir = tmp_path / "sweep"
    sweep_dir.mkdir()
    small_scenario(sweep_dir, name="one")
    small_scenario(sweep_dir, name="two", t_end=0.01)
    code = run_sweep(sweep_dir, out_dir=tmp_path)
    assert code == 0
    assert (tmp_path / "one.report.json").exists()
    assert (tmp_path / "two.report.json").exists()
    with pytest.raises(ConfigError):
        run_sweep(tmp_path / "missing")


def test_env_var_default_outdir(tmp_path, monkeypatch):
    cfg = small_scenario(tmp_path, name="envdir")
    out = tmp_path / "fromenv"
    monkeypatch.setenv("CENTROFLOW_OUTDIR", str(out))
    assert main(["evolve", str(cfg)]) == 0
    assert (out / "envdir.csv").exists()


def test_determinism_byte_identical(tmp_path):
    cfg_path = small_scenario(tmp_path, name="det")
    config = ScenarioConfig.from_json(cfg_path)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run_scenario(config, out_dir=out_a) == 0
    assert run_scenario(config, out_dir=out_b) == 0
    assert (out_a / "det.csv").read_bytes() == (out_b / "det.csv").read_bytes()
    assert (out_a / "det.report.json").read_bytes() == (out_b / "det.report.json").read_bytes()


def test_svg_outputs(tmp_path):
    cfg = small_scenario(tmp_path, name="withsvg",
                         outputs={"csv": "withsvg.csv", "report": "withsvg.report.json",
                                  "svg_dir": "svgs"}, snapshot_stride=25)
    assert main(["evolve", str(cfg), "--out-dir", str(tmp_path)]) == 0
    svgs = sorted((tmp_path / "svgs").glob("*.svg"))
    names = [s.name for s in svgs]
    assert "withsvg.initial.svg" in names
    assert "withsvg.final.svg" in names


def test_evolve_sweep_flag(tmp_path, capsys):
    sweep_dir = tmp_path / "batch"
    sweep_dir.mkdir()
    small_scenario(sweep_dir, name="alpha")
    small_scenario(sweep_dir, name="beta")
    assert main(["evolve", "--sweep", str(sweep_dir), "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "alpha: exit 0" in out and "beta: exit 0" in out


def test_evolve_without_config_or_sweep(capsys):
    assert main(["evolve"]) == 1
    assert "required" in capsys.readouterr().err
