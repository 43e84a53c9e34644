"""Tests for the run orchestration and artifact output."""

import json

import numpy as np
import pytest

from elastodg.analysis import energy_monotone, read_seismogram_csv
from elastodg.exceptions import DivergenceError
from elastodg.runner import run
from elastodg.scenario import (
    RunConfig,
    build_scenario,
    merge_tables,
    parse_config,
    preset_table,
)
from elastodg.solver import AderIntegrator
from elastodg.verify.checks import energy_history

LOH1_RECEIVERS = ["r1", "r2", "r4", "r5", "r7", "r8"]


def loh1_desk(**overrides) -> RunConfig:
    table = merge_tables(
        preset_table("loh1-desk"),
        {"time": {"max_steps": 4}, "output": {"energy_every": 1}, **overrides},
    )
    return RunConfig.model_validate(table)


async def test_run_writes_artifacts(small_config_file, temp_output_path):
    out = temp_output_path / "out"
    result = await run(parse_config(small_config_file), output_dir=out)

    assert result.steps == 8
    assert result.t_final == pytest.approx(0.2, abs=1e-14)
    assert result.energy_monotone is None
    assert result.max_interface_residual <= 1e-12
    assert sorted(p.name for p in out.iterdir()) == ["energy.csv", "manifest.json", "r1.csv"]

    seismogram = read_seismogram_csv(out / "r1.csv")
    assert seismogram["t"].size == 9
    assert len(seismogram) == 10
    assert np.all(np.isfinite(seismogram["sigma_xx"]))
    assert np.max(np.abs(seismogram["sigma_xx"])) > 0

    energy = np.loadtxt(out / "energy.csv", delimiter=",", skiprows=1)
    assert energy.shape == (5, 2)
    assert energy[0, 1] == 0.0 and energy[-1, 1] > 0

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["steps"] == 8
    assert manifest["mesh"]["elements"] == 8
    assert manifest["config"]["sources"][0]["timefn"] == "ricker"
    assert manifest["files"] == ["energy.csv", "r1.csv"]


async def test_run_is_deterministic_across_threads(small_config_file, temp_output_path):
    config = parse_config(small_config_file)
    await run(config, output_dir=temp_output_path / "serial", threads=1)
    await run(config, output_dir=temp_output_path / "threaded", threads=3)
    serial = (temp_output_path / "serial" / "r1.csv").read_text()
    threaded = (temp_output_path / "threaded" / "r1.csv").read_text()
    assert serial == threaded


async def test_run_snapshots_and_step_cap(small_config_file, temp_output_path):
    config = parse_config(small_config_file)
    config = config.model_copy(
        update={
            "time": config.time.model_copy(update={"max_steps": 3}),
            "output": config.output.model_copy(update={"snapshot_every": 2}),
        }
    )
    result = await run(config, output_dir=temp_output_path)
    assert result.steps == 3
    names = sorted(p.name for p in temp_output_path.iterdir() if p.suffix == ".vtk")
    assert names == ["snapshot_000000.vtk", "snapshot_000001.vtk"]
    energy = np.loadtxt(temp_output_path / "energy.csv", delimiter=",", skiprows=1)
    assert energy[:, 0] == pytest.approx([0.0, 2 * result.dt, 3 * result.dt])


async def test_divergence_leaves_no_manifest(mocker, small_config_file, temp_output_path):
    mocker.patch.object(
        AderIntegrator, "astep", side_effect=DivergenceError(1, 0, (0.0, 0.0, 0.0), 1.0)
    )
    with pytest.raises(DivergenceError):
        await run(parse_config(small_config_file), output_dir=temp_output_path)
    assert not (temp_output_path / "manifest.json").exists()


async def test_loh1_desk_run_is_reproducible(temp_output_path):
    config = loh1_desk()
    first = await run(config, output_dir=temp_output_path / "first", threads=1)
    second = await run(config, output_dir=temp_output_path / "second", threads=2)

    assert first.steps == second.steps == 4
    assert first.max_interface_residual <= 1e-12
    assert second.max_interface_residual <= 1e-12
    for name in LOH1_RECEIVERS:
        a = (temp_output_path / "first" / f"{name}.csv").read_bytes()
        b = (temp_output_path / "second" / f"{name}.csv").read_bytes()
        assert a == b
        seismogram = read_seismogram_csv(temp_output_path / "first" / f"{name}.csv")
        assert all(np.all(np.isfinite(column)) for column in seismogram.values())
    energy = np.loadtxt(temp_output_path / "first" / "energy.csv", delimiter=",", skiprows=1)
    assert energy.shape == (5, 2)
    assert np.all(np.isfinite(energy))


def test_loh1_desk_energy_is_monotone_without_sources():
    scenario = build_scenario(loh1_desk(sources=[]))
    mesh = scenario.mesh
    assert mesh.num_elements == 729
    assert mesh.degree == 3
    assert np.unique(mesh.rho).size == 2
    trace = energy_history(mesh, steps=5, center=(1000.0, 2250.0, 2250.0), width=800.0)
    assert energy_monotone(trace)
    assert trace.energies[-1] > 0.0
