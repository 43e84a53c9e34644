"""Turn a validated RunConfig into mesh, operator, sources and receivers."""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..mesh import (
    AXIS_INDEX,
    GridSpec,
    Mesh,
    build_mesh,
    load_topography,
    synthetic_topography,
)
from ..solver import (
    LOH1,
    ForceSource,
    GaussCosine,
    MomentSource,
    Receiver,
    ReceiverSite,
    Ricker,
    SourceStencil,
    SpatialOperator,
    cfl_timestep,
    inject_source,
    locate_receiver,
)
from ..spectral import build_quadrature, build_sbp
from .schema import RunConfig, SourceBlock

logger = logging.getLogger("elastodg")


@dataclass(eq=False)
class Scenario:
    config: RunConfig
    mesh: Mesh
    operator: SpatialOperator
    dt: float
    sources: List[SourceStencil]
    sites: List[ReceiverSite]

    def n_steps(self) -> int:
        """Steps needed to reach t_end, capped by max_steps."""
        steps = int(np.ceil(self.config.time.t_end / self.dt - 1e-12))
        cap = self.config.time.max_steps
        return min(steps, cap) if cap is not None else steps


def _horizontal_axes(depth_axis: str):
    d = AXIS_INDEX[depth_axis]
    return tuple(c for c in range(3) if c != d)


def _topography(config: RunConfig):
    mesh = config.mesh
    u, w = _horizontal_axes(mesh.depth_axis)
    bounds = np.asarray(mesh.domain).reshape(3, 2)
    if mesh.topography_file is not None:
        surface = load_topography(mesh.topography_file)
        return surface.anchored((bounds[u, 0], bounds[w, 0]))
    topo = mesh.topography
    if topo is None:
        return None
    if topo.kind == "gaussian_hill":
        center = topo.center or (bounds[u].mean(), bounds[w].mean())
        return synthetic_topography(
            "gaussian_hill", height=topo.height, width=topo.width, center=tuple(center)
        )
    return synthetic_topography(
        "sinusoidal", amplitude=topo.amplitude, wavelength=topo.wavelength
    )


def build_time_function(block: SourceBlock):
    if block.timefn == "loh1":
        return LOH1(block.T)
    if block.timefn == "gauss_cosine":
        t0 = block.t0 if block.t0 is not None else 3.0 / (2.0 * block.f0)
        return GaussCosine(block.f0, t0)
    t0 = block.t0 if block.t0 is not None else 1.2 / block.f0
    return Ricker(block.f0, t0)


def build_source(block: SourceBlock):
    timefn = build_time_function(block)
    if block.type == "moment":
        return MomentSource(np.asarray(block.moment), np.asarray(block.location), timefn)
    return ForceSource(np.asarray(block.force), np.asarray(block.location), timefn)


def build_mesh_from_config(config: RunConfig) -> Mesh:
    m = config.mesh
    rule = build_quadrature(config.discretization.nodes, config.discretization.order)
    grid = GridSpec(shape=(m.nx, m.ny, m.nz), domain=tuple(m.domain), depth_axis=m.depth_axis)
    return build_mesh(
        grid,
        build_sbp(rule),
        config.medium(),
        boundaries=config.boundary.model_dump(),
        topography=_topography(config),
    )


def build_scenario(config: RunConfig, mesh: Optional[Mesh] = None) -> Scenario:
    """Assemble everything a run needs; no time stepping happens here."""
    mesh = mesh or build_mesh_from_config(config)
    dt = cfl_timestep(mesh, cfl=config.time.cfl)
    sources = [inject_source(build_source(block), mesh) for block in config.sources]
    sites = [
        locate_receiver(
            Receiver(
                name=r.name,
                location=tuple(r.location),
                channels=tuple(r.channels),
                interval=r.interval,
            ),
            mesh,
        )
        for r in config.receivers
    ]
    logger.info(
        f"Scenario ready: {mesh.num_elements} elements, dt={dt:.6e}, "
        f"{len(sources)} source(s), {len(sites)} receiver(s)"
    )
    return Scenario(
        config=config,
        mesh=mesh,
        operator=SpatialOperator(mesh),
        dt=dt,
        sources=sources,
        sites=sites,
    )
