"""Element mappings, discrete metric terms and face frames.

``metric[..., xi, c]`` holds the contravariant term J * d(xi)/d(x_c) with xi in
(q, r, s) and c in (x, y, z). Faces are numbered 2*axis + side, so the order is
q0, q1, r0, r1, s0, s1.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ContractViolation, MeshError
from ..spectral import (
    SbpOperator1D,
    apply_derivative_3d,
    face_trace,
    reference_nodes_3d,
)

logger = logging.getLogger("elastodg")

FACE_IDS = tuple(range(6))
AXIS_INDEX = {"x": 0, "y": 1, "z": 2}
PARALLEL_LIMIT = 0.99

# cyclic (xi, a, b) and (n, m, l) index triples of the curl form
_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))

SurfaceFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def face_axis(face: int) -> int:
    return face // 2


def face_side(face: int) -> int:
    return face % 2


@dataclass(frozen=True, eq=False)
class FaceGeometry:
    """Per face node: unit normal n, surface scale J|grad xi| and rotation R."""

    normal: np.ndarray
    surface_scale: np.ndarray
    rotation: np.ndarray

    def __getitem__(self, index) -> "FaceGeometry":
        return FaceGeometry(
            self.normal[index], self.surface_scale[index], self.rotation[index]
        )


@dataclass(frozen=True, eq=False)
class ElementGeometry:
    """Nodal coordinates, Jacobian, metric terms and face data.

    Arrays may carry a leading element axis; indexing returns one element.
    """

    node_coords: np.ndarray
    jac: np.ndarray
    metric: np.ndarray
    faces: Tuple[FaceGeometry, ...]

    def __getitem__(self, index) -> "ElementGeometry":
        return ElementGeometry(
            node_coords=self.node_coords[index],
            jac=self.jac[index],
            metric=self.metric[index],
            faces=tuple(face[index] for face in self.faces),
        )

    @property
    def batched(self) -> bool:
        return self.jac.ndim == 4


def face_rotation_basis(n: np.ndarray, m0: Optional[np.ndarray] = None) -> np.ndarray:
    """Right-handed orthonormal frames with rows (n, m, l).

    m is m0 made orthogonal to n by Gram-Schmidt and l = n x m. When m0 is
    nearly parallel to n the alternate direction e_z (or e_x) is used instead.
    """
    n = np.asarray(n, dtype=np.float64)
    if m0 is None:
        m0 = np.array([0.0, 1.0, 0.0])
    m0 = np.broadcast_to(np.asarray(m0, dtype=np.float64), n.shape)
    alternate = np.where(
        np.abs(n[..., 2:3]) > PARALLEL_LIMIT,
        np.array([1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, 1.0]),
    )
    parallel = np.abs(np.sum(n * m0, axis=-1, keepdims=True)) > PARALLEL_LIMIT
    m0 = np.where(parallel, alternate, m0)
    m = m0 - np.sum(n * m0, axis=-1, keepdims=True) * n
    m = m / np.linalg.norm(m, axis=-1, keepdims=True)
    l = np.cross(n, m)
    return np.stack([n, m, l], axis=-2)


def _first_bad_element(mask: np.ndarray) -> Optional[int]:
    if mask.ndim <= 3:
        return None
    bad = np.nonzero(np.any(mask.reshape(mask.shape[0], -1), axis=1))[0]
    return int(bad[0]) if bad.size else None


def compute_metrics(
    node_coords: np.ndarray, sbp: SbpOperator1D
) -> Tuple[np.ndarray, np.ndarray]:
    """Jacobian and conservative curl-form metric terms from nodal coordinates."""
    if node_coords.shape[-1] != 3:
        raise ContractViolation("node_coords must end with a coordinate axis of 3")
    X = [node_coords[..., c] for c in range(3)]
    dX = [[apply_derivative_3d(X[c], a, sbp) for c in range(3)] for a in range(3)]

    (xq, yq, zq), (xr, yr, zr), (xs, ys, zs) = dX
    jac = xq * (yr * zs - zr * ys) - yq * (xr * zs - zr * xs) + zq * (xr * ys - yr * xs)

    metric = np.empty(node_coords.shape[:-1] + (3, 3))
    for xi, a, b in _CYCLIC:
        for n, m, l in _CYCLIC:
            metric[..., xi, n] = apply_derivative_3d(
                X[m] * dX[b][l], a, sbp
            ) - apply_derivative_3d(X[m] * dX[a][l], b, sbp)

    folded = ~(jac > 0.0)
    if np.any(folded):
        raise MeshError(
            f"Non-positive Jacobian (min J = {np.nanmin(jac):.3e})",
            element=_first_bad_element(folded),
        )
    return jac, metric


def compute_face_geometry(
    metric: np.ndarray, sbp: SbpOperator1D
) -> Tuple[FaceGeometry, ...]:
    """Normals, surface scales and rotations on all six faces."""
    faces = []
    for face in FACE_IDS:
        axis, side = face_axis(face), face_side(face)
        scaled = face_trace(metric[..., axis, :], axis, side, sbp, trailing=1)
        scale = np.linalg.norm(scaled, axis=-1)
        if np.any(~(scale > 0.0)):
            raise MeshError(f"Degenerate face {face}: zero surface scaling")
        normal = scaled / scale[..., None]
        faces.append(FaceGeometry(normal, scale, face_rotation_basis(normal)))
    return tuple(faces)


def metric_identity_residual(geometry: ElementGeometry, sbp: SbpOperator1D) -> float:
    """Max over nodes of |sum_xi D_xi(J xi_c)| for c = x, y, z."""
    residual = sum(
        apply_derivative_3d(geometry.metric[..., xi, :], xi, sbp, trailing=1)
        for xi in range(3)
    )
    return float(np.max(np.abs(residual)))


def _as_box(box) -> np.ndarray:
    box = np.asarray(box, dtype=np.float64).reshape(3, 2)
    if np.any(box[:, 1] <= box[:, 0]):
        raise MeshError(f"Degenerate cell box {box.tolist()}")
    return box


def deform_depth(
    coords: np.ndarray,
    surface: Optional[SurfaceFunction],
    depth_span: Tuple[float, float],
    depth_axis: str = "y",
) -> np.ndarray:
    """Shear coordinates along the depth axis so the top follows the surface.

    The depth axis increases downwards; the top (smallest depth) plane moves by
    ``-surface(u, w)`` and the bottom plane stays flat. (u, w) are the two
    remaining axes in x, y, z order.
    """
    if surface is None:
        return coords
    d = AXIS_INDEX[depth_axis]
    u, w = (c for c in range(3) if c != d)
    top, bottom = depth_span
    depth = coords[..., d]
    blend = 1.0 - (depth - top) / (bottom - top)
    out = coords.copy()
    out[..., d] = depth - blend * surface(coords[..., u], coords[..., w])
    return out


def build_geometry(node_coords: np.ndarray, sbp: SbpOperator1D) -> ElementGeometry:
    jac, metric = compute_metrics(node_coords, sbp)
    return ElementGeometry(
        node_coords=node_coords,
        jac=jac,
        metric=metric,
        faces=compute_face_geometry(metric, sbp),
    )


def build_mapping(
    box: Sequence[float],
    sbp: SbpOperator1D,
    top_surface: Optional[SurfaceFunction] = None,
    depth_span: Optional[Tuple[float, float]] = None,
    depth_axis: str = "y",
) -> ElementGeometry:
    """Map the reference cube onto a cell box, optionally under a curved top.

    Args:
        box: (x0, x1, y0, y1, z0, z1)
        sbp: Operator providing the tensor nodes
        top_surface: Elevation above the top plane as a function of the two
            horizontal coordinates
        depth_span: (top, bottom) of the sheared column; defaults to the box
        depth_axis: Axis along which depth increases

    Returns:
        ElementGeometry: Nodal mapping with metrics and face frames
    """
    box = _as_box(box)
    ref = reference_nodes_3d(sbp)
    coords = box[:, 0] + ref * (box[:, 1] - box[:, 0])
    if depth_span is None:
        depth_span = tuple(box[AXIS_INDEX[depth_axis]])
    coords = deform_depth(coords, top_surface, depth_span, depth_axis)
    return build_geometry(coords, sbp)
