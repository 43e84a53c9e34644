"""Tests for energy bookkeeping, error norms and plane waves."""

import numpy as np
import pytest

from elastodg.analysis import (
    EnergyTrace,
    PlaneWave,
    convergence_rate,
    discrete_energy,
    energy_monotone,
    error_norms,
)
from elastodg.exceptions import ConfigurationError
from elastodg.media.presets import APATITE, UNIT_MEDIUM
from elastodg.mesh import build_box_mesh


def test_discrete_energy_of_uniform_velocity():
    mesh = build_box_mesh((2, 1, 1), degree=2, domain=(0.0, 2.0, 0.0, 1.0, 0.0, 1.0))
    Q = np.zeros((2, 3, 3, 3, 9))
    Q[..., 1] = 3.0
    assert discrete_energy(Q, mesh) == pytest.approx(0.5 * 1.0 * 9.0 * 2.0)


def test_energy_trace_monotonicity():
    trace = EnergyTrace()
    for t, e in [(0.0, 1.0), (0.1, 0.9), (0.2, 0.9)]:
        trace.append(t, e)
    assert energy_monotone(trace)
    assert trace.max_increase() == 0.0
    trace.append(0.3, 0.95)
    assert not energy_monotone(trace)
    assert trace.max_increase() == pytest.approx(0.05)
    assert trace.as_array().shape == (4, 2)


def test_plane_wave_speeds():
    assert PlaneWave(UNIT_MEDIUM, (1.0, 0.0, 0.0)).speed == pytest.approx(2.0)
    s = PlaneWave(UNIT_MEDIUM, (0.0, 1.0, 0.0), kind="s", polarization=(1.0, 1.0, 0.0))
    assert s.speed == pytest.approx(1.0)
    assert s.period == pytest.approx(1.0)
    Q = s(np.array([[0.0, 0.25, 0.0]]), 0.0)
    assert Q[0, :3] == pytest.approx([1.0, 0.0, 0.0])


def test_plane_wave_rejects_bad_input():
    with pytest.raises(ConfigurationError):
        PlaneWave(APATITE, (1.0, 0.0, 0.0))
    with pytest.raises(ConfigurationError):
        PlaneWave(UNIT_MEDIUM, (1.0, 0.0, 0.0), kind="s", polarization=(2.0, 0.0, 0.0))


def test_error_norms_vanish_for_exact_state():
    mesh = build_box_mesh((1, 1, 1), degree=3)
    wave = PlaneWave(UNIT_MEDIUM, (0.0, 0.0, 1.0))
    Q = wave(mesh.geometry.node_coords, 0.1)
    assert error_norms(Q, wave, mesh, 0.1) == (0.0, 0.0)
    l2, linf = error_norms(Q + 1.0, wave, mesh, 0.1)
    assert l2 == pytest.approx(3.0)
    assert linf == pytest.approx(1.0)


def test_convergence_rate():
    hs = [0.4, 0.2, 0.1]
    assert convergence_rate(hs, [3 * h**4 for h in hs]) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        convergence_rate([0.1], [1.0])
