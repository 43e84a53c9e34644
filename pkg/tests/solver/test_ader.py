"""Tests for the ADER predictor/corrector and the stateful integrator."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from elastodg.analysis import PlaneWave, convergence_rate, energy_monotone, error_norms
from elastodg.exceptions import DivergenceError
from elastodg.media.presets import UNIT_MEDIUM
from elastodg.mesh import DOMAIN_FACES, build_box_mesh
from elastodg.solver import (
    AderIntegrator,
    SpatialOperator,
    ader_predictor,
    ader_step,
    ader_time_average,
    ader_update,
    cfl_timestep,
)
from elastodg.verify.checks import ENERGY_SETUPS, energy_history, energy_mesh, gaussian_pulse

PERIODIC = {name: "periodic" for name in DOMAIN_FACES}


def test_cfl_timestep_unit_cube(unit_mesh):
    assert cfl_timestep(unit_mesh) == pytest.approx(0.0375, rel=1e-12)
    assert cfl_timestep(unit_mesh, cfl=0.45) == pytest.approx(0.01875, rel=1e-12)


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_ader_matches_truncated_taylor(degree):
    rng = np.random.default_rng(degree)
    A = rng.normal(size=(6, 6))
    q0 = rng.normal(size=6)
    dt = 0.05
    zero = lambda q: np.zeros_like(q)
    q1 = ader_update(q0, lambda q: A @ q, zero, dt, degree)
    taylor = sum(
        np.linalg.matrix_power(dt * A, m) @ q0 / math.factorial(m) for m in range(degree + 2)
    )
    assert np.allclose(q1, taylor, rtol=1e-13, atol=1e-14)


def test_ader_error_order_against_exponential():
    rng = np.random.default_rng(2)
    A = rng.normal(size=(5, 5))
    q0 = rng.normal(size=5)
    degree = 3
    errors = []
    for dt in (0.02, 0.01):
        q1 = ader_update(q0, lambda q: A @ q, lambda q: np.zeros_like(q), dt, degree)
        errors.append(np.linalg.norm(q1 - expm(dt * A) @ q0))
    assert np.log2(errors[0] / errors[1]) == pytest.approx(degree + 2, abs=0.3)


def test_flux_part_is_applied_once():
    A, B = np.diag([1.0, 2.0]), np.array([[0.0, 1.0], [-1.0, 0.0]])
    q0, dt = np.array([1.0, -1.0]), 0.1
    ws = ader_predictor(q0, lambda q: A @ q, dt, 2)
    integral = ader_time_average(ws)
    q1 = ader_update(q0, lambda q: A @ q, lambda q: B @ q, dt, 2)
    assert np.allclose(q1, q0 + (A + B) @ integral)


def _plane_wave_error(n: int, degree: int, t_end: float = 0.25) -> float:
    mesh = build_box_mesh((n, 1, 1), degree=degree, boundaries=PERIODIC)
    wave = PlaneWave(UNIT_MEDIUM, direction=(1.0, 0.0, 0.0))
    op = SpatialOperator(mesh)
    integrator = AderIntegrator(op, cfl_timestep(mesh), Q0=wave(mesh.geometry.node_coords, 0.0))
    integrator.run(t_end)
    assert integrator.t == pytest.approx(t_end, abs=1e-14)
    l2, _ = error_norms(integrator.Q, wave, mesh, integrator.t)
    return l2


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_plane_wave_convergence(degree):
    levels = (2, 4, 8)
    errors = [_plane_wave_error(n, degree) for n in levels]
    assert convergence_rate([1 / n for n in levels], errors) >= degree + 0.5


def test_plane_wave_improves_with_degree():
    assert _plane_wave_error(4, 4) < _plane_wave_error(4, 2)


def test_integrator_matches_global_step(curved_mesh):
    op = SpatialOperator(curved_mesh)
    Q0 = gaussian_pulse(curved_mesh.geometry.node_coords, (0.5, 0.5, 0.5), 0.3)
    dt = cfl_timestep(curved_mesh)
    integrator = AderIntegrator(op, dt, block=3, Q0=Q0)
    integrator.step()
    assert np.allclose(integrator.Q, ader_step(Q0, op, dt), rtol=1e-12, atol=1e-14)
    assert integrator.steps == 1 and integrator.t == dt


async def test_threaded_steps_are_bitwise_identical(curved_mesh):
    op = SpatialOperator(curved_mesh)
    Q0 = gaussian_pulse(curved_mesh.geometry.node_coords, (0.5, 0.5, 0.5), 0.3)
    dt = cfl_timestep(curved_mesh)
    serial = AderIntegrator(op, dt, block=3, threads=1, Q0=Q0)
    threaded = AderIntegrator(op, dt, block=3, threads=4, Q0=Q0)
    for _ in range(3):
        serial.step()
        await threaded.astep()
    assert np.array_equal(serial.Q, threaded.Q)


@pytest.mark.parametrize("setup", list(ENERGY_SETUPS))
def test_energy_never_grows(setup):
    mesh = energy_mesh(setup)
    assert len({m.describe() for m in mesh.materials}) == 2
    trace = energy_history(mesh, 1000)
    assert len(trace.energies) == 1001
    assert energy_monotone(trace, 1e-12)
    E = np.asarray(trace.energies)
    assert np.all(E[1:] <= E[:-1] * (1.0 + 1e-12))
    if setup == "absorbing":
        assert E[-1] < E[0]


def test_next_dt_lands_on_end_time(unit_mesh):
    integrator = AderIntegrator(SpatialOperator(unit_mesh), 0.04)
    integrator.run(0.1)
    assert integrator.steps == 3
    assert integrator.t == pytest.approx(0.1, abs=1e-15)
    assert integrator.next_dt(0.1) is None


def test_max_steps_and_callback(unit_mesh):
    seen = []
    integrator = AderIntegrator(SpatialOperator(unit_mesh), 0.01)
    integrator.run(1.0, max_steps=4, callback=lambda it: seen.append(it.steps))
    assert seen == [1, 2, 3, 4]


def test_divergence_reports_element(curved_mesh):
    op = SpatialOperator(curved_mesh)
    Q0 = op.zeros()
    Q0[0, 1, 1, 1, 0] = np.inf
    integrator = AderIntegrator(op, cfl_timestep(curved_mesh), Q0=Q0)
    with pytest.raises(DivergenceError) as exc:
        integrator.step()
    assert exc.value.step == 1
    assert exc.value.element == 0


def test_invalid_time_step(unit_mesh):
    with pytest.raises(ValueError):
        AderIntegrator(SpatialOperator(unit_mesh), 0.0)
