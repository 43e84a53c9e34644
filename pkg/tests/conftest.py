"""Shared test fixtures for the elastodg test suite."""

import pytest
import tempfile
from pathlib import Path

from elastodg.mesh import build_box_mesh, sinusoidal_surface
from elastodg.solver import SpatialOperator
from elastodg.spectral import build_quadrature, build_sbp

LOH1_TOML = """
[mesh]
nx = 2
ny = 2
nz = 2
domain = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0]

[discretization]
order = 2

[material]
kind = "isotropic"
rho = 1.0
cp = 2.0
cs = 1.0

[time]
t_end = 0.2

[[sources]]
type = "moment"
location = [0.5, 0.5, 0.5]
moment = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
timefn = "ricker"
f0 = 4.0

[[receivers]]
name = "r1"
location = [0.25, 0.5, 0.5]

[output]
energy_every = 2
"""


@pytest.fixture
def temp_output_path():
    """Create a temporary directory for run outputs during tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def sbp3():
    """Degree-3 GLL operator."""
    return build_sbp(build_quadrature("GLL", 3))


@pytest.fixture
def unit_mesh():
    """Single affine element on the unit cube with the unit medium."""
    return build_box_mesh((1, 1, 1), degree=3)


@pytest.fixture
def curved_mesh():
    """2x2x2 mesh with a gently curved top surface."""
    return build_box_mesh((2, 2, 2), degree=3, topography=sinusoidal_surface(0.04, 1.0))


@pytest.fixture
def curved_operator(curved_mesh):
    return SpatialOperator(curved_mesh)


@pytest.fixture
def small_config_file(temp_output_path):
    """A tiny moment-source scenario written to disk."""
    path = temp_output_path / "small.toml"
    path.write_text(LOH1_TOML, encoding="utf-8")
    return path
