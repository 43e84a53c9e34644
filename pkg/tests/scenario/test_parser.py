"""Tests for configuration parsing, presets and diagnostics."""

import json
from pathlib import Path

import pytest

from elastodg.exceptions import ConfigurationError
from elastodg.media import LayeredMedium, Material
from elastodg.scenario import (
    RunConfig,
    key_lines,
    merge_tables,
    parse_config,
    suggest_key,
)

MINIMAL = """
[mesh]
nx = 1
ny = 1
nz = 1
domain = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0]

[material]
rho = 1.0
cp = 2.0
cs = 1.0

[time]
t_end = 0.1
"""


def write(tmp_path: Path, text: str, name: str = "run.toml") -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_parse_small_config(small_config_file):
    config = parse_config(small_config_file)
    assert config.mesh.nx == 2
    assert config.discretization.order == 2
    assert config.discretization.nodes == "GLL"
    assert config.boundary.y_min == "absorbing"
    assert config.sources[0].timefn == "ricker"
    assert config.receivers[0].channels[0] == "v_x"
    assert isinstance(config.medium(), Material)


def test_key_lines():
    lines = key_lines(
        "[mesh]\nnx = 1\n\n[[receivers]]\nname = 'a'\n[[receivers]]\nname = 'b'  # second\n"
    )
    assert lines["mesh.nx"] == 2
    assert lines["receivers.0.name"] == 5
    assert lines["receivers.1"] == 6
    assert lines["receivers.1.name"] == 7


def test_suggest_key():
    assert suggest_key("materal.rho") == "material.rho"
    assert suggest_key("receivers.0.locaton") == "receivers.location"
    assert suggest_key("zzzz") is None


def test_unknown_key_gets_line_and_suggestion(tmp_path):
    text = MINIMAL.replace("[material]", "[materal]") + "\n[material]\nrho = 1.0\ncp = 2.0\ncs = 1.0\n"
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, text))
    line, message = exc.value.issues[0]
    assert line == 8
    assert "did you mean 'material.rho'" in message


def test_errors_are_aggregated(tmp_path):
    text = MINIMAL.replace("nx = 1", "nx = 0") + "cfl = 2.0\n"
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, text))
    issues = dict((msg.split(":")[0], line) for line, msg in exc.value.issues)
    assert issues["mesh.nx"] == 3
    assert issues["time.cfl"] == 15
    assert "line 3" in str(exc.value)


def test_invalid_boundary_and_material(tmp_path):
    text = MINIMAL.replace("cs = 1.0", "cs = 1.9") + "\n[boundary]\nx_min = 'sticky'\n"
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, text))
    assert len(exc.value.issues) == 2


def test_material_and_layers_are_exclusive(tmp_path):
    layers = "\n[[layers]]\ndepth_min = 0.0\ndepth_max = 1.0\nrho = 1.0\ncp = 2.0\ncs = 1.0\n"
    with pytest.raises(ConfigurationError):
        parse_config(write(tmp_path, MINIMAL + layers))
    config = parse_config(write(tmp_path, MINIMAL.split("[material]")[0] + "[time]\nt_end = 0.1\n" + layers))
    assert isinstance(config.medium(), LayeredMedium)


def test_toml_syntax_error_line(tmp_path):
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, "[mesh]\nnx = 1\nny = = 2\n"))
    assert exc.value.issues[0][0] == 3


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        parse_config(tmp_path / "nope.toml")


def test_topography_file_must_exist(tmp_path):
    text = MINIMAL.replace("[material]", "topography_file = 'hills.txt'\n\n[material]")
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, text))
    assert "hills.txt" in exc.value.issues[0][1]

    (tmp_path / "hills.txt").write_text("2 2 1.0\n0 0\n0 0\n", encoding="utf-8")
    config = parse_config(write(tmp_path, text))
    assert config.mesh.topography_file == (tmp_path / "hills.txt").resolve()


def test_preset_expansion(tmp_path):
    config = parse_config(write(tmp_path, 'preset = "loh1-desk"\n\n[time]\nt_end = 0.5\n'))
    assert config.time.t_end == 0.5
    assert config.time.cfl == 0.9
    assert config.mesh.nx == 9
    assert [r.name for r in config.receivers][:2] == ["r1", "r2"]
    assert isinstance(config.medium(), LayeredMedium)


def test_unknown_preset(tmp_path):
    with pytest.raises(ConfigurationError) as exc:
        parse_config(write(tmp_path, 'preset = "loh1desk"\n'))
    assert exc.value.issues[0] == (1, "unknown preset 'loh1desk'; did you mean 'loh1-desk'?")


def test_manifest_echo_round_trip(small_config_file, tmp_path):
    config = parse_config(small_config_file)
    manifest = {"config": config.model_dump(mode="json"), "steps": 3}
    path = write(tmp_path, json.dumps(manifest), "manifest.json")
    assert parse_config(path).model_dump() == config.model_dump()


def test_merge_tables():
    merged = merge_tables({"a": {"b": 1, "c": 2}, "d": [1]}, {"a": {"b": 3}, "d": [2]})
    assert merged == {"a": {"b": 3, "c": 2}, "d": [2]}


def test_duplicate_receivers_rejected():
    data = {
        "mesh": {"nx": 1, "ny": 1, "nz": 1, "domain": [0, 1, 0, 1, 0, 1]},
        "material": {"rho": 1.0, "cp": 2.0, "cs": 1.0},
        "time": {"t_end": 1.0},
        "receivers": [
            {"name": "a", "location": [0.5, 0.5, 0.5]},
            {"name": "a", "location": [0.2, 0.5, 0.5]},
        ],
    }
    with pytest.raises(ValueError):
        RunConfig.model_validate(data)
