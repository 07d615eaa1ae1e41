import json
import subprocess
import sys

import numpy as np
import pytest

from ermakov import cli

SPECTRUM = {
    "task": "spectrum",
    "potential": {"name": "square_well"},
    "n_max": 2,
    "energy_range": [-0.5, 10.0],
    "scan_steps": 12,
}


def run(tmp_path, cfg, *extra, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    out = tmp_path / "out"
    code = cli.main(["--config", str(path), "--out", str(out), *extra])
    return code, out


def report(out):
    return json.loads((out / "report.json").read_text())


def test_spectrum_task(tmp_path):
    code, out = run(tmp_path, SPECTRUM)
    assert code == 0
    data = np.loadtxt(out / "spectrum.csv", delimiter=",", skiprows=1)
    assert np.max(np.abs(data[:, 1] - [0.0, 3.0, 8.0])) < 1e-6
    rep = report(out)
    assert rep["schema_version"] == 1 and len(rep["levels"]) == 3 and len(rep["scan"]) == 12


def test_solve_emp_task(tmp_path):
    cfg = {"task": "solve-emp", "potential": {"name": "square_well"}, "energy": 8.0,
           "amplitude": {"method": "pair", "coefficients": [3.0, 1 / 3, 0.0]}}
    code, out = run(tmp_path, cfg)
    assert code == 0
    rep = report(out)
    assert rep["N"] == pytest.approx(3.0, abs=1e-9) and rep["residual"] < 1e-9
    rho = np.loadtxt(out / "emp.csv", delimiter=",", skiprows=1)
    assert np.allclose(rho[:, 1] ** 2, 1 / 3, atol=1e-9)
    assert (out / "psi.csv").exists()


def test_transform_task(tmp_path):
    cfg = {"task": "transform", "potential": {"name": "square_well"}, "energy": 8.0}
    code, out = run(tmp_path, cfg)
    rep = report(out)
    assert code == 0 and round(rep["N_shift"]) == 1
    assert rep["residual_out"] < 1e-7 and rep["auxiliary"] < 1e-8
    assert (out / "emp_in.csv").exists() and (out / "emp_out.csv").exists()


def test_transform_needs_superpotential(tmp_path):
    cfg = {"task": "transform", "potential": {"name": "square_well", "side": "partner"}, "energy": 8.0}
    assert run(tmp_path, cfg)[0] == 2


def test_chain_task_with_generator(tmp_path):
    cfg = {"task": "chain", "potential": {"name": "square_well"},
           "generator": {"name": "tan", "scale": 1.5, "c": 3.0}, "grid": {"points": 4000}, "energy": 8.0}
    code, out = run(tmp_path, cfg)
    rep = report(out)
    assert code == 0 and rep["direct_vs_composed"] < 1e-7
    ns = [s["N"] for s in rep["stages"]]
    assert round(ns[0] - ns[2]) == 2
    assert all(s["residual"] < 1e-7 for s in rep["stages"])


def test_chain_task_with_steps(tmp_path):
    cfg = {"task": "chain", "energy": 2.0, "amplitude": {"method": "integrate", "rho0": 1.0},
           "transforms": [{"order": 2, "generator": {"name": "polynomial", "coefficients": [1.0, 0.0, 1.0], "d": 1.0}}]}
    code, out = run(tmp_path, cfg)
    assert code == 0 and report(out)["stages"][1]["residual"] < 1e-6


def test_invariant_task(tmp_path):
    cfg = {"task": "invariant", "potential": {"name": "square_well"}, "energy": 8.0,
           "psi": {"psi0": 1.0, "psi0_prime": 0.0},
           "amplitude": {"method": "pair", "coefficients": [3.0, 1 / 3, 0.0]}}
    code, out = run(tmp_path, cfg)
    rep = report(out)
    assert code == 0
    assert rep["I"] == pytest.approx(1.5, rel=1e-9) and rep["relative_change"] < 1e-7
    assert rep["deviations"]["relative"] < 1e-7


@pytest.mark.parametrize(
    "cfg",
    [
        {"task": "solve-emp", "potential": {"name": "square_well"}},
        {"task": "solve-emp", "potential": {"name": "square_well"}, "energy": "high"},
        {"task": "fly", "potential": {"name": "square_well"}},
        {"potential": {"name": "square_well"}},
        {"task": "spectrum", "potential": {"name": "square_well"}, "n_max": 1, "energy_range": [1.0]},
        {"task": "solve-emp", "potential": {"name": "square_well"}, "energy": 3.0, "grid": {"points": 3}},
        {"task": "solve-emp", "potential": {"name": "square_well"}, "energy": 3.0,
         "amplitude": {"method": "pair", "coefficients": [1.0, 1.0, 1.0]}},
        {"task": "chain", "energy": 3.0, "transforms": [{"order": 3}]},
    ],
)
def test_config_errors_exit_2(tmp_path, cfg, capsys):
    assert run(tmp_path, cfg)[0] == 2
    assert "config_error" in capsys.readouterr().err


def test_unreadable_config(tmp_path):
    (tmp_path / "x.json").write_text("{not json")
    assert cli.main(["--config", str(tmp_path / "x.json")]) == 2
    assert cli.main(["--config", str(tmp_path / "missing.json")]) == 2
    (tmp_path / "y.json").write_text("[1, 2]")
    assert cli.main(["--config", str(tmp_path / "y.json")]) == 2


def test_numerical_failure_exits_1(tmp_path, capsys):
    cfg = {"task": "transform", "potential": {"name": "square_well"}, "energy": 0.0}
    assert run(tmp_path, cfg)[0] == 1
    assert "zero_mode_energy" in capsys.readouterr().err


def test_strict_mode(tmp_path):
    # input amplitude solves V = 0, not the well's W**2 - W' = -1
    cfg = {"task": "chain", "potential": {"name": "constant", "value": 0.0},
           "generator": {"name": "tan", "scale": 1.5, "c": 3.0}, "grid": {"points": 4000}, "energy": 8.0}
    with pytest.warns(UserWarning):
        assert run(tmp_path, cfg)[0] == 0
    assert run(tmp_path, cfg, "--strict")[0] == 1


def test_task_override_and_threads(tmp_path):
    cfg = dict(SPECTRUM, task="solve-emp")
    assert run(tmp_path, cfg, "--task", "spectrum", "--threads", "2")[0] == 0
    assert run(tmp_path, cfg, "--threads", "0")[0] == 2


def test_outputs_are_deterministic(tmp_path):
    cfg = {"task": "transform", "potential": {"name": "square_well"}, "energy": 8.0}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    for name in ("a", "b"):
        assert cli.main(["--config", str(path), "--out", str(tmp_path / name)]) == 0
    for f in ("report.json", "emp_in.csv", "emp_out.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ermakov", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "--strict" in proc.stdout
