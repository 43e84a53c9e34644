"""Run configuration: schema, presets, parsing and scenario assembly."""

from .assemble import (
    Scenario,
    build_mesh_from_config,
    build_scenario,
    build_source,
    build_time_function,
)
from .parser import VALID_KEYS, key_lines, parse_config, suggest_key
from .presets import PRESETS, merge_tables, preset_table
from .schema import (
    BoundaryBlock,
    DiscretizationBlock,
    LayerBlock,
    MaterialBlock,
    MeshBlock,
    OutputBlock,
    ReceiverBlock,
    RunConfig,
    SourceBlock,
    TimeBlock,
    TopographyBlock,
)

__all__ = [
    "Scenario",
    "build_mesh_from_config",
    "build_scenario",
    "build_source",
    "build_time_function",
    "VALID_KEYS",
    "key_lines",
    "parse_config",
    "suggest_key",
    "PRESETS",
    "merge_tables",
    "preset_table",
    "BoundaryBlock",
    "DiscretizationBlock",
    "LayerBlock",
    "MaterialBlock",
    "MeshBlock",
    "OutputBlock",
    "ReceiverBlock",
    "RunConfig",
    "SourceBlock",
    "TimeBlock",
    "TopographyBlock",
]
