"""Run orchestration: time loop, recording and artifact output."""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .analysis import EnergyTrace, discrete_energy, energy_monotone
from .config import Settings
from .output import OutputManager
from .scenario import RunConfig, Scenario, build_scenario
from .solver import AderIntegrator, SeismogramBuffer

logger = logging.getLogger("elastodg")


@dataclass
class RunResult:
    directory: Path
    steps: int
    t_final: float
    dt: float
    energy_monotone: Optional[bool]
    max_interface_residual: float
    wall_time: float
    files: List[Path] = field(default_factory=list)


def check(config: RunConfig, scenario: Optional[Scenario] = None) -> Dict[str, Any]:
    """Mesh, time-step and placement report without solving."""
    scenario = scenario or build_scenario(config)
    mesh = scenario.mesh
    report: Dict[str, Any] = {
        "mesh": {**mesh.stats(), **mesh.watertightness_report()},
        "dt": scenario.dt,
        "steps": scenario.n_steps(),
        "t_end": config.time.t_end,
        "sources": [
            {"element": s.element, "timefn": type(s.timefn).__name__} for s in scenario.sources
        ],
        "receivers": [
            {"name": p.receiver.name, "element": p.element} for p in scenario.sites
        ],
    }
    return report


def _output_directory(config: RunConfig, output_dir: Optional[Path]) -> Path:
    if output_dir is not None:
        return Path(output_dir)
    if config.output.directory is not None:
        return Path(config.output.directory)
    return Settings().OUTPUT_ROOT


async def run(
    config: RunConfig,
    output_dir: Optional[Path] = None,
    threads: Optional[int] = None,
) -> RunResult:
    """Solve a scenario and write seismograms, energy, snapshots and manifest.

    Raises:
        DivergenceError: the state became non-finite
    """
    settings = Settings()
    started = time.perf_counter()
    scenario = build_scenario(config)
    mesh, op = scenario.mesh, scenario.operator
    out = OutputManager(_output_directory(config, output_dir))
    threads = threads or settings.threads
    integrator = AderIntegrator(
        op, scenario.dt, scenario.sources, block=settings.ELEMENT_BLOCK, threads=threads
    )

    energy_every = config.output.energy_every or settings.ENERGY_EVERY
    snapshot_every = config.output.snapshot_every
    buffers = [SeismogramBuffer(site) for site in scenario.sites]
    energy = EnergyTrace()
    max_residual = 0.0
    snapshots = 0

    async def record(final: bool = False):
        nonlocal max_residual, snapshots
        step, t, Q = integrator.steps, integrator.t, integrator.Q
        for buf in buffers:
            buf.record(step, t, Q, mesh)
        if step % energy_every == 0 or final:
            energy.append(t, discrete_energy(Q, mesh))
            max_residual = max(max_residual, op.interface_work_residual(Q))
            logger.info(f"step {step:6d}  t={t:.6e}  E={energy.energies[-1]:.6e}")
        if snapshot_every and (step % snapshot_every == 0):
            await out.write_snapshot(snapshots, mesh.geometry.node_coords, Q, t)
            snapshots += 1

    logger.info(
        f"Running {scenario.n_steps()} steps of dt={scenario.dt:.6e} on {threads} thread(s)"
    )
    await record()
    cap = config.time.max_steps
    while cap is None or integrator.steps < cap:
        dt = integrator.next_dt(config.time.t_end)
        if dt is None:
            break
        await integrator.astep(dt)
        done = integrator.next_dt(config.time.t_end) is None or integrator.steps == cap
        await record(final=done)

    for buf in buffers:
        await out.write_seismogram(buf.name, buf.header, buf.as_array())
    await out.write_energy(energy.times, energy.energies)
    # decay holds only without sources
    monotone = energy_monotone(energy) if not scenario.sources else None
    wall = time.perf_counter() - started
    manifest = {
        "config": config.model_dump(mode="json"),
        "version": settings.APP_VERSION,
        "mesh": {**mesh.stats(), **mesh.watertightness_report()},
        "dt": scenario.dt,
        "steps": integrator.steps,
        "t_final": integrator.t,
        "threads": threads,
        "wall_time_s": wall,
        "energy_monotone": monotone,
        "max_interface_work_residual": max_residual,
        "files": sorted(p.name for p in out.written),
    }
    await out.write_manifest(manifest)
    if monotone is False:
        logger.warning(f"Energy grew by up to {energy.max_increase():.3e} between samples")
    logger.info(f"Finished {integrator.steps} steps in {wall:.1f} s -> {out.directory}")
    return RunResult(
        directory=out.directory,
        steps=integrator.steps,
        t_final=integrator.t,
        dt=scenario.dt,
        energy_monotone=monotone,
        max_interface_residual=max_residual,
        wall_time=wall,
        files=list(out.written),
    )
