import json

import numpy as np
import pytest

import rpq
from quantization import spectral
from utils.csv_report import read_csv


def run_cli(argv):
    with pytest.raises(SystemExit) as excinfo:
        rpq.main(argv)
    return excinfo.value.code


def test_spectrum_levels(tmp_path):
    assert run_cli(["--out", str(tmp_path), "spectrum", "--eta", "1", "--count", "5"]) == 0
    header, rows = read_csv(tmp_path / "spectrum.csv")
    assert header == ["n", "eigenvalue", "scheme", "eta"]
    np.testing.assert_allclose([r["eigenvalue"] for r in rows], [0.5, 1.5, 2.5, 3.5, 4.5], atol=1e-3)
    assert {r["scheme"] for r in rows} == {"schrodinger"}


def test_spectrum_refinement_report(tmp_path):
    assert run_cli(["spectrum", "--report", "refinement", "--out", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "refinement.csv")
    assert len(rows) == 3
    assert 1.9 <= rows[-1]["order_estimate"] <= 2.1


def test_modes_scan(tmp_path):
    assert run_cli(["--out", str(tmp_path), "modes", "scan", "--omega", "1", "--kmax", "3.2"]) == 0
    _, rows = read_csv(tmp_path / "mode_scan.csv")
    assert [r["k"] for r in rows if r["admissible"]] == [0, 1, 2, 3]


def test_modes_energy(tmp_path):
    argv = ["--out", str(tmp_path), "modes", "energy", "--scheme", "standard", "--omega", "2", "--nmax", "3"]
    assert run_cli(argv) == 0
    _, rows = read_csv(tmp_path / "energy_spectrum.csv")
    assert [r["energy"] for r in rows] == [1.0, 3.0, 5.0, 7.0]


def test_modes_solve_conserves_energy(tmp_path):
    assert run_cli(["--out", str(tmp_path), "modes", "solve", "--steps", "200"]) == 0
    _, rows = read_csv(tmp_path / "wave_energy.csv")
    energy = np.array([r["energy"] for r in rows])
    assert np.abs(energy - energy[0]).max() / energy[0] < 1e-4
    assert (tmp_path / "field_final.txt").exists()


def test_cfl_violation_exits_with_precondition_status(tmp_path, capsys):
    assert run_cli(["--out", str(tmp_path), "modes", "solve", "--cfl", "1.5", "--steps", "5"]) == 3
    assert "CRITICAL ERROR (modes)" in capsys.readouterr().err


def test_ladder_eq5(tmp_path):
    argv = ["--out", str(tmp_path), "ladder", "--m", "1", "--nmax", "3", "--convention", "eq5"]
    assert run_cli(argv) == 0
    _, rows = read_csv(tmp_path / "ladder.csv")
    assert [r["effective_mass_squared"] for r in rows] == [1.0, 3.0, 5.0, 7.0]
    assert all(r["residual"] == 0 for r in rows)
    assert (tmp_path / "masses.csv").exists()


def test_outputs_are_byte_identical_across_runs(tmp_path):
    for name in ("a", "b"):
        out = tmp_path / name
        assert run_cli(["--out", str(out), "--seed", "7", "paths", "--count", "50"]) == 0
        assert run_cli(["--out", str(out), "ladder"]) == 0
    for report in ("paths.csv", "path_0.txt", "ladder.csv"):
        assert (tmp_path / "a" / report).read_bytes() == (tmp_path / "b" / report).read_bytes()


def test_propagate_free_model(tmp_path, capsys):
    argv = ["--out", str(tmp_path), "propagate", "--model", "free", "--x-min", "-10", "--x-max", "10",
            "--points", "401", "--eps", "0.5", "0.25"]
    assert run_cli(argv) == 0
    _, rows = read_csv(tmp_path / "convergence.csv")
    assert [r["epsilon"] for r in rows] == [0.5, 0.25]
    assert "Variance eps 0.25" in capsys.readouterr().out


def test_maxwell_jacobi(tmp_path):
    argv = ["--out", str(tmp_path), "maxwell", "--identity", "jacobi", "--points", "8", "16"]
    assert run_cli(argv) == 0
    header, rows = read_csv(tmp_path / "maxwell_residuals.csv")
    assert header == ["identity", "N", "h", "residual"]
    assert all(r["residual"] <= 1e-12 for r in rows)


def test_maxwell_source_free(tmp_path):
    argv = ["--out", str(tmp_path), "maxwell", "--identity", "source-free", "--points", "16", "32"]
    assert run_cli(argv) == 0
    _, rows = read_csv(tmp_path / "maxwell_residuals.csv")
    assert rows[0]["residual"] > rows[1]["residual"] > 0


def test_usage_error_exits_2(tmp_path):
    assert run_cli(["--out", str(tmp_path), "spectrum", "--count", "many"]) == 2
    assert run_cli(["--out", str(tmp_path), "teleport"]) == 2


def test_precondition_exits_3(tmp_path, capsys):
    assert run_cli(["--out", str(tmp_path), "spectrum", "--eta", "-1"]) == 3
    assert "CRITICAL ERROR (spectral)" in capsys.readouterr().err


def test_numerical_failure_exits_4(tmp_path, monkeypatch, capsys):
    def complex_only(matrix):
        n = matrix.shape[0]
        return np.full(n, 1.0 + 1.0j), np.eye(n, dtype=complex)

    monkeypatch.setattr(spectral, "eig", complex_only)
    argv = ["--out", str(tmp_path), "spectrum", "--scheme", "kg", "--eta", "0.1", "--count", "2",
            "--x-min", "-3", "--x-max", "3", "--points", "21"]
    assert run_cli(argv) == 4
    assert "found=0" in capsys.readouterr().err


def test_config_document(tmp_path):
    doc = tmp_path / "run.json"
    doc.write_text(json.dumps({"command": "ladder", "parameters": {"nmax": 2}, "out": str(tmp_path / "o")}))
    assert run_cli(["--config", str(doc), "ladder"]) == 0
    _, rows = read_csv(tmp_path / "o" / "ladder.csv")
    assert len(rows) == 3

    doc.write_text(json.dumps({"command": "ladder", "verbose": True}))
    assert run_cli(["--config", str(doc), "ladder"]) == 3


def test_plot_ladder_and_empty_report(tmp_path):
    assert run_cli(["--out", str(tmp_path), "ladder"]) == 0
    assert run_cli(["--out", str(tmp_path), "plot", str(tmp_path / "ladder.csv"), "--kind", "stems"]) == 0
    assert (tmp_path / "ladder.svg").read_text().startswith("<?xml")

    empty = tmp_path / "empty_scan.csv"
    empty.write_text("n,k\n")
    assert run_cli(["--out", str(tmp_path), "plot", str(empty)]) == 0
    assert "no data" in (tmp_path / "empty_scan.svg").read_text()


def test_plot_malformed_csv_exits_3(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1\n")
    assert run_cli(["--out", str(tmp_path), "plot", str(bad)]) == 3


def test_subcommand_scripts_run_standalone(tmp_path):
    import build_ladder

    with pytest.raises(SystemExit) as excinfo:
        build_ladder.main(["--out", str(tmp_path), "--nmax", "1"])
    assert excinfo.value.code == 0
    assert (tmp_path / "ladder.csv").exists()
