"""ADER time integration: element-local Taylor predictor and one-shot corrector."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import anyio
import anyio.to_thread
import numpy as np

from ..exceptions import DivergenceError, MeshError
from ..mesh import Mesh
from .operator import SpatialOperator
from .sources import SourceStencil

logger = logging.getLogger("elastodg")

LinearMap = Callable[[np.ndarray], np.ndarray]


def cfl_timestep(mesh: Mesh, degree: Optional[int] = None, cfl: float = 0.9) -> float:
    """dt = (cfl/3) h / c_max with h = 1/(P+1) in reference units.

    c_max is the largest |grad xi| c_p(grad xi / |grad xi|) over all nodes and
    reference directions.
    """
    degree = mesh.degree if degree is None else degree
    if not cfl > 0:
        raise ValueError(f"CFL number must be positive, got {cfl}")
    geo = mesh.geometry
    grad = geo.metric / geo.jac[..., None, None]
    size = np.linalg.norm(grad, axis=-1)
    if np.any(~(size > 0.0)) or np.any(~np.isfinite(size)):
        raise MeshError("Degenerate metric terms; cannot bound the wavespeed")
    unit = grad / size[..., None]
    c_p = mesh.wavespeeds[:, 0, :]
    speed = np.sqrt(np.einsum("e...c,ec->e...", unit**2, c_p**2))
    c_max = float(np.max(size * speed))
    return cfl / 3.0 * (1.0 / (degree + 1)) / c_max


@dataclass
class AderWorkspace:
    """Time-derivative coefficients D^m Q0, m = 0..P."""

    coefficients: List[np.ndarray]
    dt: float

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def ader_predictor(Q0: np.ndarray, D: LinearMap, dt: float, degree: int) -> AderWorkspace:
    coefficients = [Q0]
    for _ in range(degree):
        coefficients.append(D(coefficients[-1]))
    return AderWorkspace(coefficients=coefficients, dt=dt)


def ader_time_average(ws: AderWorkspace, dt: Optional[float] = None) -> np.ndarray:
    """Time integral over the step: sum_m dt^(m+1)/(m+1)! D^m Q0."""
    dt = ws.dt if dt is None else dt
    out = np.zeros_like(ws.coefficients[0])
    for m, coeff in enumerate(ws.coefficients):
        out += dt ** (m + 1) / math.factorial(m + 1) * coeff
    return out


def ader_update(
    Q0: np.ndarray, D: LinearMap, F: LinearMap, dt: float, degree: int
) -> np.ndarray:
    """One ADER step for dQ/dt = (D + F) Q with F evaluated once."""
    integral = ader_time_average(ader_predictor(Q0, D, dt, degree), dt)
    return Q0 + D(integral) + F(integral)


def _check_finite(Q1: np.ndarray, Q0: np.ndarray, mesh: Mesh, step: int):
    if np.all(np.isfinite(Q1)):
        return
    bad = ~np.isfinite(Q1.reshape(Q1.shape[0], -1)).all(axis=1)
    element = int(np.nonzero(bad)[0][0])
    location = mesh.barycenters()[element]
    magnitude = float(np.max(np.abs(Q0)))
    logger.error(f"State diverged at step {step} in element {element}")
    raise DivergenceError(step, element, location, magnitude)


def ader_step(
    Q0: np.ndarray,
    operator: SpatialOperator,
    dt: float,
    sources: Sequence[SourceStencil] = (),
    t: float = 0.0,
    step: int = 0,
) -> np.ndarray:
    """Q1 = Q0 + D I + F I + source integrals, I the time-integrated predictor."""
    integral = ader_time_average(
        ader_predictor(Q0, operator.volume, dt, operator.mesh.degree), dt
    )
    Q1 = Q0 + operator.rhs(integral)
    for source in sources:
        source.inject(Q1, t, t + dt)
    _check_finite(Q1, Q0, operator.mesh, step)
    return Q1


class AderIntegrator:
    """Stateful ADER stepper over fixed element chunks.

    ``step`` runs the chunk kernels in order; ``astep`` dispatches them to
    worker threads. Chunks write disjoint slices, so both give identical states.
    """

    def __init__(
        self,
        operator: SpatialOperator,
        dt: float,
        sources: Sequence[SourceStencil] = (),
        block: int = 64,
        threads: int = 1,
        Q0: Optional[np.ndarray] = None,
        t0: float = 0.0,
    ):
        if not dt > 0:
            raise ValueError(f"Time step must be positive, got {dt}")
        self.operator = operator
        self.mesh = operator.mesh
        self.degree = operator.mesh.degree
        self.dt = dt
        self.sources = list(sources)
        self.chunks = operator.chunks(block)
        self.threads = max(1, threads)
        self.Q = operator.zeros() if Q0 is None else np.array(Q0, dtype=np.float64)
        self.t = t0
        self.steps = 0

    def _predict_chunk(self, Q0: np.ndarray, out: np.ndarray, sl: slice, dt: float):
        D = lambda block: self.operator.block_volume(block, sl)
        out[sl] = ader_time_average(ader_predictor(Q0[sl], D, dt, self.degree), dt)

    def _correct_chunk(
        self, Q0: np.ndarray, integral: np.ndarray, flux: np.ndarray, out: np.ndarray, sl: slice
    ):
        bracket = self.operator.volume_bracket(integral, sl)
        out[sl] = Q0[sl] + self.operator.apply_mass(bracket + flux[sl], sl)

    def _finish(self, Q0: np.ndarray, Q1: np.ndarray, dt: float) -> np.ndarray:
        for source in self.sources:
            source.inject(Q1, self.t, self.t + dt)
        _check_finite(Q1, Q0, self.mesh, self.steps + 1)
        self.Q = Q1
        self.t += dt
        self.steps += 1
        return Q1

    def step(self, dt: Optional[float] = None) -> np.ndarray:
        dt = self.dt if dt is None else dt
        Q0 = self.Q
        integral = np.empty_like(Q0)
        for sl in self.chunks:
            self._predict_chunk(Q0, integral, sl, dt)
        flux = self.operator.flux_bracket(integral)
        Q1 = np.empty_like(Q0)
        for sl in self.chunks:
            self._correct_chunk(Q0, integral, flux, Q1, sl)
        return self._finish(Q0, Q1, dt)

    async def astep(self, dt: Optional[float] = None) -> np.ndarray:
        dt = self.dt if dt is None else dt
        limiter = anyio.CapacityLimiter(self.threads)
        Q0 = self.Q
        integral = np.empty_like(Q0)

        async with anyio.create_task_group() as tg:
            for sl in self.chunks:
                tg.start_soon(self._in_thread, limiter, self._predict_chunk, Q0, integral, sl, dt)
        flux = await anyio.to_thread.run_sync(
            self.operator.flux_bracket, integral, limiter=limiter
        )
        Q1 = np.empty_like(Q0)
        async with anyio.create_task_group() as tg:
            for sl in self.chunks:
                tg.start_soon(
                    self._in_thread, limiter, self._correct_chunk, Q0, integral, flux, Q1, sl
                )
        return self._finish(Q0, Q1, dt)

    @staticmethod
    async def _in_thread(limiter, fn, *args):
        await anyio.to_thread.run_sync(fn, *args, limiter=limiter)

    def next_dt(self, t_end: float) -> Optional[float]:
        """Step size that lands exactly on t_end, or None once it is reached."""
        remaining = t_end - self.t
        if remaining <= 1e-12 * self.dt:
            return None
        return min(self.dt, remaining)

    def run(
        self,
        t_end: float,
        max_steps: Optional[int] = None,
        callback: Optional[Callable[["AderIntegrator"], None]] = None,
    ) -> np.ndarray:
        """Step until t_end (or max_steps), calling ``callback`` after each step."""
        while max_steps is None or self.steps < max_steps:
            dt = self.next_dt(t_end)
            if dt is None:
                break
            self.step(dt)
            if callback is not None:
                callback(self)
        return self.Q
