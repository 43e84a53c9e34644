"""Tests for atomic artifact writers."""

import json

import numpy as np
import pytest

from elastodg.output import OutputManager, format_csv, format_vtk


def test_format_csv_full_precision():
    text = format_csv(("t", "v_x"), np.array([[0.1, 1.0 / 3.0]]))
    header, row = text.splitlines()
    assert header == "t,v_x"
    assert float(row.split(",")[1]) == 1.0 / 3.0


def test_format_vtk_layout():
    points = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    values = np.arange(18.0).reshape(2, 9)
    lines = format_vtk(points, values, 0.5).splitlines()
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert "DATASET POLYDATA" in lines
    assert "POINTS 2 double" in lines
    assert "VERTICES 2 4" in lines
    assert "POINT_DATA 2" in lines
    assert sum(line.startswith("SCALARS") for line in lines) == 9
    i = lines.index("SCALARS sigma_yz double 1")
    assert lines[i + 2 : i + 4] == ["8", "17"]


async def test_writes_are_atomic(temp_output_path):
    manager = OutputManager(temp_output_path)
    await manager.write_energy([0.0, 0.1], [1.0, 0.5])
    await manager.write_manifest({"steps": 2})
    names = sorted(p.name for p in temp_output_path.iterdir())
    assert names == ["energy.csv", "manifest.json"]
    assert json.loads((temp_output_path / "manifest.json").read_text()) == {"steps": 2}
    assert [p.name for p in manager.written] == ["energy.csv", "manifest.json"]


async def test_failed_rename_leaves_nothing(mocker, temp_output_path):
    manager = OutputManager(temp_output_path)
    mocker.patch("aiofiles.os.replace", side_effect=OSError("disk full"))
    with pytest.raises(OSError):
        await manager.write_seismogram("r1", ("t", "v_x"), np.zeros((3, 2)))
    assert list(temp_output_path.iterdir()) == []
    assert manager.written == []
