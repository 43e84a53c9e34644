"""Built-in desk-scale scenarios, expressed as raw configuration tables.

User keys are merged over these before validation.
"""

import copy
from typing import Any, Dict

from ..media.presets import LOH1_LAYER_THICKNESS

_LOH1_M0 = 1e18
_APATITE_F0 = 250e3

LOH1_DESK: Dict[str, Any] = {
    "mesh": {
        "nx": 9,
        "ny": 9,
        "nz": 9,
        "domain": [0.0, 9000.0, -2250.0, 6750.0, -2250.0, 6750.0],
        "depth_axis": "x",
    },
    "discretization": {"order": 3, "nodes": "GLL"},
    "layers": [
        {"depth_min": 0.0, "depth_max": LOH1_LAYER_THICKNESS, "rho": 2600.0, "cp": 4000.0, "cs": 2000.0},
        {"depth_min": LOH1_LAYER_THICKNESS, "depth_max": 9000.0, "rho": 2700.0, "cp": 6000.0, "cs": 3464.0},
    ],
    "boundary": {
        "x_min": "free_surface",
        "x_max": "absorbing",
        "y_min": "absorbing",
        "y_max": "absorbing",
        "z_min": "absorbing",
        "z_max": "absorbing",
    },
    "time": {"t_end": 2.0, "cfl": 0.9},
    "sources": [
        {
            "type": "moment",
            "location": [2000.0, 0.0, 0.0],
            "moment": [[0.0, 0.0, 0.0], [0.0, 0.0, _LOH1_M0], [0.0, _LOH1_M0, 0.0]],
            "timefn": "loh1",
            "T": 0.1,
        }
    ],
    "receivers": [
        {"name": "r1", "location": [0.0, 0.0, 693.0]},
        {"name": "r2", "location": [0.0, 0.0, 5542.0]},
        {"name": "r4", "location": [0.0, 490.0, 490.0]},
        {"name": "r5", "location": [0.0, 3919.0, 3919.0]},
        {"name": "r7", "location": [0.0, 577.0, 384.0]},
        {"name": "r8", "location": [0.0, 4612.0, 3075.0]},
    ],
    "output": {"energy_every": 10},
}

APATITE_DESK: Dict[str, Any] = {
    "mesh": {"nx": 6, "ny": 6, "nz": 6, "domain": [0.0, 0.2, 0.0, 0.2, 0.0, 0.2], "depth_axis": "z"},
    "discretization": {"order": 3, "nodes": "GLL"},
    "material": {
        "kind": "orthotropic",
        "rho": 3190.0,
        "c11": 167e9,
        "c12": 13.1e9,
        "c13": 66e9,
        "c22": 167e9,
        "c23": 66e9,
        "c33": 140e9,
        "c44": 66.3e9,
        "c55": 66.3e9,
        "c66": 0.5 * (167e9 - 13.1e9),
    },
    "boundary": {
        "x_min": "absorbing",
        "x_max": "absorbing",
        "y_min": "absorbing",
        "y_max": "absorbing",
        "z_min": "free_surface",
        "z_max": "absorbing",
    },
    "time": {"t_end": 50e-6, "cfl": 0.9},
    "sources": [
        {
            "type": "force",
            "location": [0.1, 0.1, 0.1],
            "force": [1.0, 0.0, 0.0],
            "timefn": "gauss_cosine",
            "f0": _APATITE_F0,
            "t0": 3.0 / (2.0 * _APATITE_F0) + 5e-6,
        }
    ],
    "receivers": [{"name": "r1", "location": [0.1, 0.1, 0.15]}],
    "output": {"energy_every": 10},
}

TOPOGRAPHY_DESK: Dict[str, Any] = {
    "mesh": {
        "nx": 8,
        "ny": 8,
        "nz": 8,
        "domain": [0.0, 8000.0, 0.0, 8000.0, 0.0, 8000.0],
        "depth_axis": "y",
        "topography": {"kind": "gaussian_hill", "height": 400.0, "width": 2000.0, "center": [4000.0, 4000.0]},
    },
    "discretization": {"order": 3, "nodes": "GLL"},
    "material": {"kind": "isotropic", "rho": 2670.0, "cp": 6000.0, "cs": 3464.0},
    "boundary": {
        "x_min": "absorbing",
        "x_max": "absorbing",
        "y_min": "free_surface",
        "y_max": "absorbing",
        "z_min": "absorbing",
        "z_max": "absorbing",
    },
    "time": {"t_end": 3.0, "cfl": 0.9},
    "sources": [
        {
            "type": "moment",
            "location": [4000.0, 2000.0, 4000.0],
            "moment": [[1e15, 0.0, 0.0], [0.0, 1e15, 0.0], [0.0, 0.0, 1e15]],
            "timefn": "ricker",
            "f0": 2.0,
            "t0": 0.6,
        }
    ],
    "receivers": [
        {"name": "summit", "location": [4000.0, -350.0, 4000.0]},
        {"name": "flank", "location": [6000.0, -100.0, 6000.0]},
    ],
    "output": {"energy_every": 10},
}

PRESETS: Dict[str, Dict[str, Any]] = {
    "loh1-desk": LOH1_DESK,
    "apatite-desk": APATITE_DESK,
    "topography-desk": TOPOGRAPHY_DESK,
}


def preset_table(name: str) -> Dict[str, Any]:
    """Deep copy of a preset table; KeyError for unknown names."""
    return copy.deepcopy(PRESETS[name])


def merge_tables(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dict merge; lists and scalars in ``override`` replace ``base``."""
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = merge_tables(out[key], value)
        else:
            out[key] = value
    return out
