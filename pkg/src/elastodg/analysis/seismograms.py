"""Reading seismogram CSV files back into arrays."""

from pathlib import Path
from typing import Dict, Union

import numpy as np

from ..exceptions import ConfigurationError


def read_seismogram_csv(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """Columns of a seismogram file keyed by header name ("t" first)."""
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Seismogram file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip().split(",")
    if not header or header[0] != "t":
        raise ConfigurationError(
            f"Malformed seismogram file {path}", [(1, "header must start with 't'")]
        )
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise ConfigurationError(f"Malformed seismogram file {path}: {e}")
    if data.shape[1] != len(header):
        raise ConfigurationError(
            f"Seismogram file {path} has {data.shape[1]} columns, header names {len(header)}"
        )
    return {name: data[:, i] for i, name in enumerate(header)}


def sample_interval(times: np.ndarray) -> float:
    """Uniform sample interval of a time column."""
    steps = np.diff(times)
    if steps.size == 0 or not np.allclose(steps, steps[0], rtol=1e-6, atol=0.0):
        raise ConfigurationError("Seismogram samples must be uniformly spaced")
    return float(steps[0])
