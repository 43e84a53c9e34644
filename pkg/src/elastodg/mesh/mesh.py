"""Structured hexahedral meshes with conforming connectivity."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import ConfigurationError, ContractViolation, MeshError
from ..flux import BoundarySpec, Side
from ..media import Material, MaterialFunction, homogeneous
from ..spectral import SbpOperator1D, face_trace, reference_nodes_3d
from .geometry import (
    AXIS_INDEX,
    ElementGeometry,
    SurfaceFunction,
    build_geometry,
    deform_depth,
)

logger = logging.getLogger("elastodg")

DOMAIN_FACES = ("x_min", "x_max", "y_min", "y_max", "z_min", "z_max")
PERIODIC = "periodic"


@dataclass(frozen=True)
class GridSpec:
    """nx * ny * nz hexahedra over domain (x0, x1, y0, y1, z0, z1)."""

    shape: Tuple[int, int, int]
    domain: Tuple[float, float, float, float, float, float]
    depth_axis: str = "y"

    def __post_init__(self):
        if len(self.shape) != 3 or any(int(n) < 1 for n in self.shape):
            raise ConfigurationError(f"Grid shape must be three positive ints: {self.shape}")
        lo, hi = np.asarray(self.domain, dtype=float).reshape(3, 2).T
        if np.any(hi <= lo):
            raise ConfigurationError(f"Domain bounds must increase: {self.domain}")
        if self.depth_axis not in AXIS_INDEX:
            raise ConfigurationError(f"Unknown depth axis {self.depth_axis!r}")

    @property
    def num_elements(self) -> int:
        nx, ny, nz = self.shape
        return nx * ny * nz

    @property
    def bounds(self) -> np.ndarray:
        return np.asarray(self.domain, dtype=float).reshape(3, 2)

    @property
    def diameter(self) -> float:
        b = self.bounds
        return float(np.linalg.norm(b[:, 1] - b[:, 0]))


@dataclass(frozen=True)
class BoundaryFace:
    element: int
    face: int
    spec: BoundarySpec


@dataclass(frozen=True)
class InternalFace:
    element: int
    face: int
    neighbor: int
    neighbor_face: int
    periodic: bool = False


@dataclass(frozen=True, eq=False)
class InterfaceSet:
    """All internal faces normal to one reference axis, minus side owning the frame."""

    axis: int
    minus: np.ndarray
    plus: np.ndarray
    periodic: np.ndarray


@dataclass(frozen=True, eq=False)
class BoundarySet:
    """All element faces lying on one domain face."""

    axis: int
    side: Side
    name: str
    elements: np.ndarray
    spec: BoundarySpec


def _boundary_specs(boundaries: Dict[str, Union[str, BoundarySpec]]):
    specs: Dict[str, Optional[BoundarySpec]] = {}
    for i, name in enumerate(DOMAIN_FACES):
        value = boundaries.get(name, "absorbing")
        side = Side(i % 2)
        if isinstance(value, BoundarySpec):
            specs[name] = value.with_side(side)
        elif value == PERIODIC:
            specs[name] = None
        else:
            specs[name] = BoundarySpec.parse(value, side)
    unknown = set(boundaries) - set(DOMAIN_FACES)
    if unknown:
        raise ConfigurationError(f"Unknown domain faces {sorted(unknown)}")
    periodic = []
    for axis in range(3):
        lo, hi = DOMAIN_FACES[2 * axis], DOMAIN_FACES[2 * axis + 1]
        if (specs[lo] is None) != (specs[hi] is None):
            raise ConfigurationError(
                f"Periodic faces must be paired: {lo} and {hi} both periodic or neither"
            )
        periodic.append(specs[lo] is None)
    return specs, tuple(periodic)


class Mesh:
    """Structured grid of curvilinear hexahedra with per-element materials.

    Element ids are e = i + nx*(j + ny*k); reference axes q, r, s follow the
    grid indices i, j, k.
    """

    def __init__(
        self,
        grid: GridSpec,
        sbp: SbpOperator1D,
        geometry: ElementGeometry,
        materials: Sequence[Material],
        boundaries: Dict[str, Union[str, BoundarySpec]],
    ):
        self.grid = grid
        self.sbp = sbp
        self.geometry = geometry
        self.materials: List[Material] = list(materials)
        self.boundary_specs, self.periodic = _boundary_specs(boundaries)
        if len(self.materials) != grid.num_elements:
            raise ContractViolation("One material per element is required")

        self.rho = np.array([m.rho for m in self.materials])
        self.stiffness = np.stack([m.stiffness for m in self.materials])
        self.compliance = np.stack([m.compliance for m in self.materials])
        self.wavespeeds = np.stack([m.wavespeeds.as_array() for m in self.materials])
        self.interfaces, self.boundaries = self._classify_faces()

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.grid.shape

    @property
    def num_elements(self) -> int:
        return self.grid.num_elements

    @property
    def degree(self) -> int:
        return self.sbp.degree

    def element_index(self, i: int, j: int, k: int) -> int:
        nx, ny, _ = self.shape
        return i + nx * (j + ny * k)

    def element_ijk(self, e: int) -> Tuple[int, int, int]:
        nx, ny, _ = self.shape
        return e % nx, (e // nx) % ny, e // (nx * ny)

    def _grid_ids(self) -> np.ndarray:
        nx, ny, nz = self.shape
        return np.arange(self.num_elements).reshape(nz, ny, nx)

    def _classify_faces(self) -> Tuple[List[InterfaceSet], List[BoundarySet]]:
        ids = self._grid_ids()
        interfaces, boundaries = [], []
        for axis in range(3):
            array_axis = 2 - axis
            count = ids.shape[array_axis]
            lower = np.take(ids, range(count - 1), axis=array_axis).ravel()
            upper = np.take(ids, range(1, count), axis=array_axis).ravel()
            periodic = np.zeros(lower.size, dtype=bool)
            if self.periodic[axis]:
                last = np.take(ids, [count - 1], axis=array_axis).ravel()
                first = np.take(ids, [0], axis=array_axis).ravel()
                lower = np.concatenate([lower, last])
                upper = np.concatenate([upper, first])
                periodic = np.concatenate([periodic, np.ones(last.size, dtype=bool)])
            else:
                for side in (Side.LOWER, Side.UPPER):
                    name = DOMAIN_FACES[2 * axis + side]
                    index = 0 if side == Side.LOWER else count - 1
                    elements = np.take(ids, [index], axis=array_axis).ravel()
                    boundaries.append(
                        BoundarySet(
                            axis=axis,
                            side=side,
                            name=name,
                            elements=np.sort(elements),
                            spec=self.boundary_specs[name],
                        )
                    )
            order = np.argsort(lower, kind="stable")
            interfaces.append(
                InterfaceSet(axis, lower[order], upper[order], periodic[order])
            )
        return interfaces, boundaries

    @cached_property
    def connectivity(self) -> Dict[Tuple[int, int], Union[BoundaryFace, InternalFace]]:
        """Classification of every (element, face) pair, each exactly once."""
        table: Dict[Tuple[int, int], Union[BoundaryFace, InternalFace]] = {}
        for iset in self.interfaces:
            up, low = 2 * iset.axis + 1, 2 * iset.axis
            for m, p, per in zip(iset.minus, iset.plus, iset.periodic):
                table[(int(m), up)] = InternalFace(int(m), up, int(p), low, bool(per))
                table[(int(p), low)] = InternalFace(int(p), low, int(m), up, bool(per))
        for bset in self.boundaries:
            face = 2 * bset.axis + bset.side
            for e in bset.elements:
                table[(int(e), face)] = BoundaryFace(int(e), face, bset.spec)
        return table

    def face_kind(self, element: int, face: int) -> Union[BoundaryFace, InternalFace]:
        try:
            return self.connectivity[(element, face)]
        except KeyError:
            raise ContractViolation(f"Face {face} of element {element} is unclassified")

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """J h_i h_j h_k per node, shaped (E, n, n, n)."""
        w = self.sbp.weights
        w3 = w[:, None, None] * w[None, :, None] * w[None, None, :]
        return self.geometry.jac * w3

    @cached_property
    def spacing(self) -> np.ndarray:
        """Physical extent of each element along each reference axis, (E, 3)."""
        coords = self.geometry.node_coords
        out = np.empty((self.num_elements, 3))
        for axis in range(3):
            lo, hi = (
                face_trace(coords, axis, side, self.sbp, trailing=1)
                .reshape(self.num_elements, -1, 3)
                .mean(axis=1)
                for side in (0, 1)
            )
            out[:, axis] = np.linalg.norm(hi - lo, axis=-1)
        if np.any(out <= 0.0):
            bad = int(np.nonzero(np.any(out <= 0.0, axis=1))[0][0])
            raise MeshError("Non-positive element spacing", element=bad)
        return out

    def in_bounds(self, point, rtol: float = 1e-9) -> bool:
        """Whether a point lies in the bounding box of all element nodes."""
        flat = self.geometry.node_coords.reshape(-1, 3)
        tol = rtol * self.grid.diameter
        point = np.asarray(point, dtype=np.float64)
        return bool(
            np.all(point >= flat.min(axis=0) - tol) and np.all(point <= flat.max(axis=0) + tol)
        )

    def barycenters(self) -> np.ndarray:
        return self.geometry.node_coords.reshape(self.num_elements, -1, 3).mean(axis=1)

    def watertightness_report(self) -> Dict[str, float]:
        """Largest coordinate and normal mismatch across non-periodic interfaces."""
        coords = self.geometry.node_coords
        gap, normal_gap = 0.0, 0.0
        for iset in self.interfaces:
            keep = ~iset.periodic
            if not np.any(keep):
                continue
            m, p = iset.minus[keep], iset.plus[keep]
            axis = iset.axis
            xm = face_trace(coords[m], axis, 1, self.sbp, trailing=1)
            xp = face_trace(coords[p], axis, 0, self.sbp, trailing=1)
            gap = max(gap, float(np.max(np.abs(xm - xp))))
            nm = self.geometry.faces[2 * axis + 1].normal[m]
            np_ = self.geometry.faces[2 * axis].normal[p]
            normal_gap = max(normal_gap, float(np.max(np.abs(nm - np_))))
        return {"coordinate_gap": gap, "normal_gap": normal_gap}

    def stats(self) -> Dict[str, object]:
        jac = self.geometry.jac
        return {
            "shape": list(self.shape),
            "elements": self.num_elements,
            "degree": self.degree,
            "nodes": self.sbp.rule.kind.value,
            "nodes_per_element": self.sbp.size**3,
            "min_jacobian": float(np.min(jac)),
            "max_jacobian": float(np.max(jac)),
            "min_spacing": float(np.min(self.spacing)),
            "periodic": list(self.periodic),
            "materials": sorted({m.describe() for m in self.materials}),
        }


def build_mesh(
    grid: GridSpec,
    sbp: SbpOperator1D,
    material: Union[Material, MaterialFunction],
    boundaries: Optional[Dict[str, Union[str, BoundarySpec]]] = None,
    topography: Optional[SurfaceFunction] = None,
) -> Mesh:
    """Build a structured mesh; the topography deforms the top of the depth axis.

    Args:
        grid: Element counts, domain bounds and depth axis
        sbp: Nodal operator fixing the polynomial degree and node family
        material: A single material or a function of the element barycenter
        boundaries: Condition per domain face (free_surface, absorbing,
            clamped, gamma:a,b,c, periodic, or a BoundarySpec); absorbing if absent
        topography: Elevation over the two horizontal axes

    Returns:
        Mesh: Geometry, connectivity and per-element materials
    """
    material_fn = homogeneous(material) if isinstance(material, Material) else material
    nx, ny, nz = grid.shape
    bounds = grid.bounds
    edges = [np.linspace(bounds[a, 0], bounds[a, 1], n + 1) for a, n in enumerate(grid.shape)]

    K, J, I = np.meshgrid(np.arange(nz), np.arange(ny), np.arange(nx), indexing="ij")
    I, J, K = I.ravel(), J.ravel(), K.ravel()
    lo = np.stack([edges[0][I], edges[1][J], edges[2][K]], axis=-1)
    hi = np.stack([edges[0][I + 1], edges[1][J + 1], edges[2][K + 1]], axis=-1)

    ref = reference_nodes_3d(sbp)
    coords = lo[:, None, None, None, :] + ref[None] * (hi - lo)[:, None, None, None, :]
    d = AXIS_INDEX[grid.depth_axis]
    coords = deform_depth(coords, topography, tuple(bounds[d]), grid.depth_axis)

    try:
        geometry = build_geometry(coords, sbp)
    except MeshError as e:
        logger.error(f"Mesh construction failed: {e}")
        raise

    centers = coords.reshape(coords.shape[0], -1, 3).mean(axis=1)
    materials = [material_fn(c) for c in centers]
    mesh = Mesh(grid, sbp, geometry, materials, boundaries or {})
    logger.info(
        f"Built {nx}x{ny}x{nz} mesh, P={sbp.degree} {sbp.rule.kind.value}, "
        f"min J {mesh.stats()['min_jacobian']:.3e}"
    )
    return mesh


NEWTON_ITERATIONS = 50
NEWTON_TOL = 1e-12
INSIDE_TOL = 1e-9


def _map_point(coords: np.ndarray, sbp: SbpOperator1D, xi: np.ndarray):
    """Physical position and Jacobian dx/dxi of one element at reference xi."""
    lq, lr, ls = (sbp.basis(c) for c in xi)
    dq, dr, ds = (sbp.basis_derivative(c) for c in xi)
    x = np.einsum("srqc,s,r,q->c", coords, ls, lr, lq)
    jac = np.stack(
        [
            np.einsum("srqc,s,r,q->c", coords, ls, lr, dq),
            np.einsum("srqc,s,r,q->c", coords, ls, dr, lq),
            np.einsum("srqc,s,r,q->c", coords, ds, lr, lq),
        ],
        axis=-1,
    )
    return x, jac


def invert_mapping(
    coords: np.ndarray, sbp: SbpOperator1D, point: np.ndarray
) -> Tuple[np.ndarray, bool]:
    """Damped Newton solve of x(xi) = point for one element.

    Returns the reference coordinates and whether they converged.
    """
    xi = np.full(3, 0.5)
    x, jac = _map_point(coords, sbp, xi)
    residual = np.linalg.norm(x - point)
    for _ in range(NEWTON_ITERATIONS):
        try:
            delta = np.linalg.solve(jac, point - x)
        except np.linalg.LinAlgError:
            return xi, False
        step = 1.0
        while True:
            trial = np.clip(xi + step * delta, -0.5, 1.5)
            x_new, jac_new = _map_point(coords, sbp, trial)
            r_new = np.linalg.norm(x_new - point)
            if r_new <= residual or step < 1.0 / 64:
                break
            step *= 0.5
        moved = np.linalg.norm(trial - xi)
        xi, x, jac, residual = trial, x_new, jac_new, r_new
        if moved < NEWTON_TOL:
            return xi, True
    return xi, moved < 1e-8


def locate_point(mesh: Mesh, point) -> Tuple[int, np.ndarray]:
    """Find the owning element and reference coordinates of a physical point.

    Candidates are tested in ascending element order, so a point on a shared
    face belongs to the lowest-indexed element containing it.

    Raises:
        MeshError: the point is outside every element
    """
    point = np.asarray(point, dtype=np.float64)
    coords = mesh.geometry.node_coords
    flat = coords.reshape(mesh.num_elements, -1, 3)
    pad = 1e-6 * mesh.grid.diameter + 1e-9 * np.max(mesh.spacing, axis=1)[:, None]
    lo, hi = flat.min(axis=1) - pad, flat.max(axis=1) + pad
    candidates = np.nonzero(np.all((point >= lo) & (point <= hi), axis=1))[0]
    for e in candidates:
        xi, converged = invert_mapping(coords[e], mesh.sbp, point)
        if converged and np.all(xi >= -INSIDE_TOL) and np.all(xi <= 1 + INSIDE_TOL):
            return int(e), np.clip(xi, 0.0, 1.0)
    raise MeshError(f"Point {tuple(point.tolist())} lies outside the mesh")


def build_box_mesh(
    shape: Tuple[int, int, int] = (1, 1, 1),
    degree: int = 3,
    nodes: str = "GLL",
    material: Union[Material, MaterialFunction, None] = None,
    domain: Tuple[float, ...] = (0.0, 1.0, 0.0, 1.0, 0.0, 1.0),
    boundaries: Optional[Dict[str, Union[str, BoundarySpec]]] = None,
    topography: Optional[SurfaceFunction] = None,
    depth_axis: str = "y",
) -> Mesh:
    """Shortcut for small structured meshes in a unit medium."""
    from ..media.presets import UNIT_MEDIUM
    from ..spectral import build_quadrature, build_sbp

    sbp = build_sbp(build_quadrature(nodes, degree))
    grid = GridSpec(shape=tuple(shape), domain=tuple(domain), depth_axis=depth_axis)
    return build_mesh(grid, sbp, material or UNIT_MEDIUM, boundaries, topography)
