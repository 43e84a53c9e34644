"""Tests for turning configurations into runnable scenarios."""

import pytest

from elastodg.exceptions import ConfigurationError
from elastodg.runner import check
from elastodg.scenario import (
    PRESETS,
    RunConfig,
    SourceBlock,
    build_scenario,
    build_time_function,
    parse_config,
    preset_table,
)
from elastodg.solver import GaussCosine, Ricker


def test_small_scenario(small_config_file):
    scenario = build_scenario(parse_config(small_config_file))
    assert scenario.mesh.num_elements == 8
    assert scenario.dt == pytest.approx(0.9 / 3 / 3 / 4)
    assert scenario.n_steps() == 8
    assert len(scenario.sources) == 1 and len(scenario.sites) == 1
    assert scenario.sites[0].element == 0


def test_default_onsets():
    ricker = build_time_function(SourceBlock(location=(0, 0, 0), type="force", force=(1, 0, 0), timefn="ricker", f0=2.0))
    assert isinstance(ricker, Ricker) and ricker.t0 == pytest.approx(0.6)
    gauss = build_time_function(
        SourceBlock(location=(0, 0, 0), type="force", force=(1, 0, 0), timefn="gauss_cosine", f0=3.0)
    )
    assert isinstance(gauss, GaussCosine) and gauss.t0 == pytest.approx(0.5)


def test_max_steps_caps_step_count(small_config_file):
    config = parse_config(small_config_file)
    capped = config.model_copy(update={"time": config.time.model_copy(update={"max_steps": 3})})
    assert build_scenario(capped).n_steps() == 3


def test_receiver_outside_mesh(small_config_file):
    data = parse_config(small_config_file).model_dump()
    data["receivers"][0]["location"] = (0.5, 1.5, 0.5)
    with pytest.raises(ConfigurationError):
        build_scenario(RunConfig.model_validate(data))


def test_apatite_preset_check():
    report = check(RunConfig.model_validate(preset_table("apatite-desk")))
    assert report["mesh"]["elements"] == 216
    assert report["mesh"]["materials"][0].startswith("orthotropic")
    assert report["sources"][0]["timefn"] == "GaussCosine"
    assert report["steps"] > 0


def test_topography_preset_check():
    report = check(RunConfig.model_validate(preset_table("topography-desk")))
    assert report["mesh"]["coordinate_gap"] <= 1e-9
    assert report["mesh"]["min_jacobian"] > 0
    assert [r["name"] for r in report["receivers"]] == ["summit", "flank"]


def test_all_presets_validate():
    for name in PRESETS:
        config = RunConfig.model_validate(preset_table(name))
        assert config.time.t_end > 0
