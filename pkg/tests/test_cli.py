"""Tests for the command line verbs and exit codes."""

import json

import numpy as np

from elastodg import cli
from elastodg.exceptions import DivergenceError
from elastodg.output import format_csv
from elastodg.solver import Ricker


def test_check_prints_report(small_config_file, capsys):
    assert cli.main(["check", str(small_config_file)]) == cli.EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["mesh"]["elements"] == 8
    assert report["steps"] == 8


def test_run_writes_to_output_dir(small_config_file, temp_output_path, capsys):
    out = temp_output_path / "cli-out"
    code = cli.main(["--output-dir", str(out), "--threads", "2", "run", str(small_config_file)])
    assert code == cli.EXIT_OK
    assert (out / "manifest.json").exists()
    assert "8 steps" in capsys.readouterr().out


def test_configuration_error_exit_code(temp_output_path):
    path = temp_output_path / "bad.toml"
    path.write_text("[mesh]\nnx = 0\n", encoding="utf-8")
    assert cli.main(["check", str(path)]) == cli.EXIT_CONFIG
    assert cli.main(["run", str(temp_output_path / "missing.toml")]) == cli.EXIT_CONFIG


def test_mesh_error_exit_code(temp_output_path):
    path = temp_output_path / "folded.toml"
    path.write_text(
        "[mesh]\nnx = 1\nny = 1\nnz = 1\ndomain = [0, 1, 0, 1, 0, 1]\n"
        "[mesh.topography]\nkind = 'sinusoidal'\namplitude = 2.0\nwavelength = 1.0\n"
        "[material]\nrho = 1.0\ncp = 2.0\ncs = 1.0\n[time]\nt_end = 0.1\n",
        encoding="utf-8",
    )
    assert cli.main(["check", str(path)]) == cli.EXIT_MESH


def test_divergence_exit_code(mocker, small_config_file):
    mocker.patch(
        "elastodg.cli.run", side_effect=DivergenceError(5, 3, (0.1, 0.2, 0.3), 1e30)
    )
    assert cli.main(["run", str(small_config_file)]) == cli.EXIT_DIVERGENCE


def test_unexpected_error_exit_code(small_config_file, temp_output_path, caplog):
    occupied = temp_output_path / "occupied"
    occupied.write_text("not a directory", encoding="utf-8")
    code = cli.main(["--output-dir", str(occupied), "run", str(small_config_file)])
    assert code == cli.EXIT_FAILURE
    assert "Unexpected error" in caplog.text
    assert occupied.read_text(encoding="utf-8") == "not a directory"


def test_verify_verb(capsys):
    assert cli.main(["verify", "sbp"]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("PASS")
    assert cli.main(["verify", "nope"]) == cli.EXIT_FAILURE


def test_misfit_verb(temp_output_path, capsys):
    t = 0.005 * np.arange(2000)
    reference = Ricker(2.0, 3.0)(t)
    for name, scale in (("a.csv", 1.02), ("b.csv", 1.0)):
        rows = np.column_stack([t, scale * reference, reference])
        (temp_output_path / name).write_text(format_csv(("t", "v_x", "v_y"), rows))
    code = cli.main(
        ["misfit", str(temp_output_path / "a.csv"), str(temp_output_path / "b.csv"), "--band", "0.5,8"]
    )
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "class=A" in lines

    code = cli.main(
        [
            "misfit",
            str(temp_output_path / "a.csv"),
            str(temp_output_path / "b.csv"),
            "--band",
            "0.5,8",
            "--channel",
            "v_z",
        ]
    )
    assert code == cli.EXIT_CONFIG
