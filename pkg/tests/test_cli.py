"""Command-line surface: result JSONs, tables, sweeps, landscape export."""
import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qsreg import FourierModel
from qsreg.cli import ConfigError, RunConfig, load_problem, main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


# --- run ---

def test_run_qsr_exact_result_json(capsys, tmp_path):
    model_path = tmp_path / "model.json"
    out_path = tmp_path / "result.json"
    code, out = _run(
        capsys,
        [
            "run",
            "--problem", "deuteron-1",
            "--algorithm", "qsr",
            "--mode", "exact",
            "--model-out", str(model_path),
            "--out", str(out_path),
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ledger"]["samples"] == 3
    assert doc["ledger"]["queries"] == 1
    assert doc["error_percent"] <= 1e-8
    assert doc["energy"] == pytest.approx(doc["exact_ground_energy"], rel=1e-10)
    assert json.loads(out_path.read_text()) == doc
    loaded = FourierModel.load(model_path)
    assert loaded.bandwidths == (1,)


def test_run_qsr_table_configuration(capsys, tmp_path):
    code, out = _run(
        capsys,
        [
            "run",
            "--problem", "deuteron-2",
            "--algorithm", "qsr",
            "--mode", "shots",
            "--shots", "2000",
            "--seed", "4",
            "--bandwidths", "2,2",
            "--model-out", str(tmp_path / "m.json"),
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ledger"]["samples"] == 25
    assert doc["ledger"]["queries"] == 1
    assert doc["bandwidths"] == [2, 2]


def test_run_vqe_is_reproducible(capsys, tmp_path):
    argv = [
        "run",
        "--problem", "deuteron-1",
        "--algorithm", "vqe",
        "--mode", "shots",
        "--shots", "1000",
        "--seed", "7",
    ]
    code_a, out_a = _run(capsys, argv)
    code_b, out_b = _run(capsys, argv)
    assert code_a == code_b == 0
    assert json.loads(out_a) == json.loads(out_b)


def test_run_from_config_file(capsys, tmp_path):
    config = {
        "problem": "deuteron-1",
        "algorithm": "qsr",
        "mode": "exact",
        "model_out": str(tmp_path / "m.json"),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, out = _run(capsys, ["run", "--config", str(path)])
    assert code == 0
    assert json.loads(out)["ledger"]["samples"] == 3


def test_config_rejects_unknown_keys(capsys, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"problem": "deuteron-1", "algorithm": "qsr", "wobble": 3}))
    code, out = _run(capsys, ["run", "--config", str(path)])
    assert code == 2
    doc = json.loads(out)
    assert doc["error"]["type"] == "config"
    assert "wobble" in doc["error"]["message"]


def test_config_dataclass_round_trip():
    config = RunConfig(problem="deuteron-2", algorithm="vqe", mode="shots", seed=3)
    clone = RunConfig.from_dict(config.to_dict())
    assert clone == config
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"problem": "deuteron-1"})
    with pytest.raises(ConfigError):
        RunConfig(problem="deuteron-1", algorithm="vqe", mode="shots", shots=0)


def test_shots_mode_defaults_shot_count():
    config = RunConfig(problem="deuteron-1", algorithm="qsr", mode="shots")
    assert config.shots == 10_000


def test_output_dir_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QSREG_OUTPUT_DIR", str(tmp_path / "outputs"))
    code, out = _run(
        capsys,
        ["run", "--problem", "deuteron-1", "--algorithm", "qsr",
         "--model-out", "m.json", "--out", "r.json"],
    )
    assert code == 0
    assert (tmp_path / "outputs" / "m.json").exists()
    assert (tmp_path / "outputs" / "r.json").exists()


# --- table1 ---

def test_table1_exact_mode(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QSREG_OUTPUT_DIR", str(tmp_path))
    out_csv = tmp_path / "table.csv"
    code, out = _run(capsys, ["table1", "--mode", "exact", "--seed", "1", "--out", str(out_csv)])
    assert code == 0
    with open(out_csv, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    by_key = {(r["n"], r["algorithm"]): r for r in rows}
    assert int(by_key[("1", "QSR")]["samples"]) == 3
    assert int(by_key[("1", "QSR")]["queries"]) == 1
    assert int(by_key[("2", "QSR")]["samples"]) == 25
    assert int(by_key[("2", "QSR")]["queries"]) == 1
    for row in rows:
        assert float(row["error_percent"]) < 1e-6
        assert int(row["samples"]) >= int(row["queries"])


# --- complexity ---

def test_complexity_threshold_against_bisection(capsys):
    code, out = _run(capsys, ["complexity", "threshold", "--m", "2", "--r", "4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["advantage"] is True

    ratio = lambda n: 2.0 * n * 2.0 ** (-n / 4.0) - 1.0
    n_star = 4.0 / math.log(2.0)

    def bisect(lo, hi):
        flo = ratio(lo)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if (ratio(mid) > 0) == (flo > 0):
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    hi = n_star
    while ratio(hi) > 0:
        hi *= 2
    assert doc["n_lower"] == pytest.approx(bisect(1e-9, n_star), abs=1e-9)
    assert doc["n_upper"] == pytest.approx(bisect(n_star, hi), abs=1e-9)
    assert doc["threshold"] == math.ceil(doc["n_upper"])


def test_complexity_subcritical_point(capsys):
    code, out = _run(capsys, ["complexity", "threshold", "--m", "0.1", "--r", "1"])
    assert code == 0
    assert json.loads(out)["advantage"] is False


def test_complexity_efficiency_report(capsys):
    code, out = _run(capsys, ["complexity", "efficiency", "--m", "2", "--p", "8", "--s", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["advantage"] is True
    assert doc["efficiency"] > 1.0


def test_complexity_efficiency_sweep_csv(capsys, tmp_path):
    out_csv = tmp_path / "eff.csv"
    code, _ = _run(
        capsys,
        ["complexity", "sweep", "--what", "efficiency", "--m", "2",
         "--p-range", "2:20:5", "--s-range", "2:5:4", "--out", str(out_csv)],
    )
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0].startswith("p/s,")
    assert len(lines) == 6  # header + 5 p rows
    cells = np.array([line.split(",")[1:] for line in lines[1:]], dtype=float)
    assert cells.shape == (5, 4)
    assert np.all(np.isfinite(cells[~np.isnan(cells)]))


def test_complexity_threshold_sweep_csv(capsys, tmp_path):
    out_csv = tmp_path / "thr.csv"
    code, _ = _run(
        capsys,
        ["complexity", "sweep", "--what", "threshold",
         "--m-range", "0.5:10:8", "--r-range", "1:8:6", "--out", str(out_csv)],
    )
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert len(lines) == 9


def test_complexity_requires_parameters(capsys):
    code, out = _run(capsys, ["complexity", "threshold", "--m", "2"])
    assert code == 2
    assert json.loads(out)["error"]["type"] == "config"


# --- landscape ---

def test_landscape_exact_grid(capsys, tmp_path):
    out_csv = tmp_path / "landscape.csv"
    code, _ = _run(
        capsys,
        ["landscape", "--problem", "deuteron-2", "--resolution", "41",
         "--mode", "exact", "--out", str(out_csv)],
    )
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "theta,eta,raw,model"
    assert len(lines) == 1 + 41 * 41
    data = np.array([line.split(",") for line in lines[1:]], dtype=float)
    assert np.max(np.abs(data[:, 2] - data[:, 3])) <= 1e-8


def test_landscape_shots_grid_tracks_noise(capsys, tmp_path, deuteron2):
    shots = 2000
    out_csv = tmp_path / "landscape.csv"
    code, _ = _run(
        capsys,
        ["landscape", "--problem", "deuteron-2", "--resolution", "7",
         "--mode", "shots", "--shots", str(shots), "--seed", "11",
         "--out", str(out_csv)],
    )
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    data = np.array([line.split(",") for line in lines[1:]], dtype=float)
    _, obs = deuteron2
    sigma = math.sqrt(sum(w * w for w, p in obs.terms if not p.is_identity) / shots)
    assert np.max(np.abs(data[:, 2] - data[:, 3])) < 8 * sigma


def test_landscape_rejects_too_many_parameters(capsys, monkeypatch):
    import qsreg.cli as cli_mod
    from qsreg.ansatz import Ansatz, deuteron_ansatz_2

    honest = deuteron_ansatz_2()
    wide = Ansatz("wide", 3, 3, (1, 1, 1), ("a", "b", "c"),
                  lambda t: honest.builder(t[:2]))
    observable = load_problem("deuteron-2")[1]
    monkeypatch.setattr(cli_mod, "load_problem", lambda name: (wide, observable))
    code, out = _run(capsys, ["landscape", "--problem", "deuteron-2"])
    assert code == 1
    assert "two parameters" in json.loads(out)["error"]["message"]


# --- verify-bandwidth ---

def test_verify_bandwidth_command(capsys):
    code, out = _run(capsys, ["verify-bandwidth", "--problem", "deuteron-1", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["axes"][0]["observed"] == 1


def test_verify_bandwidth_text_output(capsys):
    code, out = _run(capsys, ["verify-bandwidth", "--problem", "deuteron-2"])
    assert code == 0
    assert "PASS" in out
    assert "eta" in out


# --- entry point ---

def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "qsreg.cli", "complexity", "threshold", "--m", "2", "--r", "4"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["advantage"] is True
