"""Tests for source-time functions, point sources and receivers."""

import numpy as np
import pytest
from scipy import integrate

from elastodg.exceptions import ConfigurationError
from elastodg.mesh import build_box_mesh
from elastodg.solver import (
    LOH1,
    ForceSource,
    GaussCosine,
    MomentSource,
    Receiver,
    Ricker,
    SeismogramBuffer,
    inject_source,
    integrate_time_function,
    locate_receiver,
    sample_receiver,
)


@pytest.fixture
def box():
    return build_box_mesh((2, 2, 2), degree=3)


def test_loh1_releases_unit_moment():
    g = LOH1(0.1)
    assert integrate_time_function(g, 0.0, 2.0) == pytest.approx(1.0, abs=1e-7)
    assert g(-1.0) == 0.0
    assert integrate_time_function(g, -1.0, 0.0) == 0.0


@pytest.mark.parametrize("g", [LOH1(0.1), GaussCosine(5.0, 0.3), Ricker(4.0, 0.3)])
def test_antiderivatives_match_quadrature(g):
    exact, _ = integrate.quad(g, 0.05, 0.45, limit=200)
    assert integrate_time_function(g, 0.05, 0.45) == pytest.approx(exact, abs=1e-10)


def test_ricker_has_zero_mean():
    assert integrate_time_function(Ricker(2.0, 1.0), -5.0, 7.0) == pytest.approx(0.0, abs=1e-12)


def test_time_function_validation():
    with pytest.raises(ConfigurationError):
        Ricker(0.0, 1.0)
    with pytest.raises(ConfigurationError):
        LOH1(-0.1)


def test_moment_forcing_voigt_order():
    M = np.array([[1.0, 4.0, 5.0], [4.0, 2.0, 6.0], [5.0, 6.0, 3.0]])
    f = MomentSource(M, (0.5, 0.5, 0.5), LOH1()).forcing(2.0)
    assert f == pytest.approx([0, 0, 0, 1, 2, 3, 4, 5, 6])


def test_moment_must_be_symmetric():
    M = np.array([[1.0, 4.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
    with pytest.raises(ConfigurationError, match="symmetric"):
        MomentSource(M, (0.5, 0.5, 0.5), LOH1())
    MomentSource(np.zeros((3, 3)), (0.5, 0.5, 0.5), LOH1())


def test_force_source_injects_exact_momentum(box):
    source = ForceSource((2.0, 0.0, -1.0), (0.3, 0.7, 0.2), LOH1(0.1))
    stencil = inject_source(source, box)
    assert stencil.element == 2
    Q = np.zeros((box.num_elements, 4, 4, 4, 9))
    stencil.inject(Q, 0.0, 0.05)
    amount = integrate_time_function(source.timefn, 0.0, 0.05)
    w = box.quadrature_weights[2]
    assert np.sum(w * Q[2, ..., 0]) == pytest.approx(2.0 * amount, rel=1e-12)
    assert np.sum(w * Q[2, ..., 2]) == pytest.approx(-amount, rel=1e-12)
    assert np.count_nonzero(Q[:2]) == 0


def test_source_outside_mesh(box):
    with pytest.raises(ConfigurationError):
        inject_source(ForceSource((1.0, 0.0, 0.0), (2.0, 0.5, 0.5), LOH1()), box)
    with pytest.raises(ConfigurationError):
        MomentSource(np.eye(2), (0.5, 0.5, 0.5), LOH1())


def test_receiver_samples_polynomial_field(box):
    coords = box.geometry.node_coords
    Q = np.zeros(coords.shape[:-1] + (9,))
    Q[..., 0] = coords[..., 0] ** 2 + coords[..., 1]
    Q[..., 8] = coords[..., 2]
    site = locate_receiver(Receiver("r", (0.8, 0.3, 0.6)), box)
    sample = sample_receiver(Q, box, site)
    assert sample[0] == pytest.approx(0.64 + 0.3, abs=1e-12)
    assert sample[8] == pytest.approx(0.6, abs=1e-12)


def test_seismogram_buffer_interval_and_channels(box):
    receiver = Receiver("r", (0.5, 0.5, 0.5), channels=("v_y", "sigma_xy"), interval=2)
    buf = SeismogramBuffer(locate_receiver(receiver, box))
    Q = np.ones((box.num_elements, 4, 4, 4, 9))
    for step in range(5):
        buf.record(step, 0.1 * step, Q * step, box)
    data = buf.as_array()
    assert buf.header == ("t", "v_y", "sigma_xy")
    assert data.shape == (3, 3)
    assert data[:, 0] == pytest.approx([0.0, 0.2, 0.4])
    assert data[:, 1] == pytest.approx([0.0, 2.0, 4.0])


def test_receiver_validation(box):
    with pytest.raises(ConfigurationError):
        Receiver("r", (0.5, 0.5, 0.5), channels=("pressure",))
    with pytest.raises(ConfigurationError):
        Receiver("r", (0.5, 0.5, 0.5), interval=0)
    with pytest.raises(ConfigurationError):
        locate_receiver(Receiver("r", (0.5, -0.5, 0.5)), box)
