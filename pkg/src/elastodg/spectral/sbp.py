"""Summation-by-parts derivative operators and their tensor-product application.

Nodal arrays for one element are shaped ``(n, n, n)`` with array axes ``(s, r, q)``,
so the q index varies fastest when flattened. Reference axes are addressed as
0 = q, 1 = r, 2 = s. Functions accept extra leading batch axes and a fixed number
of ``trailing`` component axes.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import ContractViolation
from .quadrature import QuadratureRule, lagrange_basis, lagrange_basis_derivative

logger = logging.getLogger("elastodg")

AXIS_NAMES = ("q", "r", "s")
LOWER, UPPER = 0, 1


@dataclass(frozen=True, eq=False)
class SbpOperator1D:
    """Collocated derivative D = H^-1 A with boundary projections e0, e1."""

    rule: QuadratureRule
    D: np.ndarray
    weights: np.ndarray
    e0: np.ndarray
    e1: np.ndarray

    @property
    def H(self) -> np.ndarray:
        return np.diag(self.weights)

    @property
    def size(self) -> int:
        return self.rule.size

    @property
    def degree(self) -> int:
        return self.rule.degree

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes

    def boundary_vector(self, side: int) -> np.ndarray:
        return self.e1 if side == UPPER else self.e0

    def sbp_residual(self) -> float:
        """Max-norm of HD + (HD)^T - (e1 e1^T - e0 e0^T)."""
        Q = self.weights[:, None] * self.D
        B = np.outer(self.e1, self.e1) - np.outer(self.e0, self.e0)
        return float(np.max(np.abs(Q + Q.T - B)))

    def basis(self, x) -> np.ndarray:
        return lagrange_basis(self.rule, x)

    def basis_derivative(self, x) -> np.ndarray:
        return lagrange_basis_derivative(self.rule, x, self.D)


def _derivative_matrix(rule: QuadratureRule) -> np.ndarray:
    x = rule.nodes
    bw = rule.barycentric_weights
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (bw[None, :] / bw[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -np.sum(D, axis=1))
    return D


def build_sbp(rule: QuadratureRule) -> SbpOperator1D:
    """Build D_ij = L_j'(x_i) and the endpoint evaluation vectors for a rule."""
    if rule.degree > 12:
        logger.warning(
            f"Derivative operator for P={rule.degree} may be poorly conditioned"
        )
    D = _derivative_matrix(rule)
    e0 = lagrange_basis(rule, 0.0)
    e1 = lagrange_basis(rule, 1.0)
    for arr in (D, e0, e1):
        arr.setflags(write=False)
    return SbpOperator1D(rule=rule, D=D, weights=rule.weights, e0=e0, e1=e1)


def _node_axis(field: np.ndarray, axis: int, trailing: int, n: int) -> int:
    if axis not in (0, 1, 2):
        raise ContractViolation(f"Reference axis must be 0, 1 or 2, got {axis}")
    if field.ndim < 3 + trailing:
        raise ContractViolation(
            f"Expected at least {3 + trailing} dimensions, got shape {field.shape}"
        )
    spatial = field.shape[field.ndim - 3 - trailing : field.ndim - trailing]
    if spatial != (n, n, n):
        raise ContractViolation(
            f"Nodal block {spatial} does not match operator size {n}"
        )
    return field.ndim - 1 - axis - trailing


def apply_derivative_3d(
    field: np.ndarray, axis: int, sbp: SbpOperator1D, trailing: int = 0
) -> np.ndarray:
    """Apply D along one reference axis, leaving the others untouched."""
    ax = _node_axis(field, axis, trailing, sbp.size)
    out = np.tensordot(sbp.D, field, axes=([1], [ax]))
    return np.moveaxis(out, 0, ax)


def face_trace(
    field: np.ndarray, axis: int, side: int, sbp: SbpOperator1D, trailing: int = 0
) -> np.ndarray:
    """Restrict a nodal field to the face xi=side of the given axis.

    The face axis is removed; the two tangential node axes keep their order.
    """
    ax = _node_axis(field, axis, trailing, sbp.size)
    return np.tensordot(field, sbp.boundary_vector(side), axes=([ax], [0]))


def lift_face(
    values: np.ndarray, axis: int, side: int, sbp: SbpOperator1D, trailing: int = 0
) -> np.ndarray:
    """Spread face values into the volume with H^-1 e(side) along ``axis``."""
    coeff = sbp.boundary_vector(side) / sbp.weights
    ax = values.ndim - axis - trailing
    shape = [1] * (values.ndim + 1)
    shape[ax] = sbp.size
    return np.expand_dims(values, ax) * coeff.reshape(shape)


def quadrature_weights_3d(sbp: SbpOperator1D) -> np.ndarray:
    """Tensor weights h_i h_j h_k as an (n, n, n) array."""
    w = sbp.weights
    return w[:, None, None] * w[None, :, None] * w[None, None, :]


def reference_nodes_3d(sbp: SbpOperator1D) -> np.ndarray:
    """Reference coordinates (q, r, s) of all nodes, shaped (n, n, n, 3)."""
    x = sbp.nodes
    S, R, Qc = np.meshgrid(x, x, x, indexing="ij")
    return np.stack([Qc, R, S], axis=-1)


def interpolate_3d(
    field: np.ndarray, point, sbp: SbpOperator1D, trailing: int = 1
) -> np.ndarray:
    """Tensor-product Lagrange interpolation of a nodal field at (q, r, s)."""
    lq, lr, ls = (sbp.basis(c) for c in point)
    _node_axis(field, 0, trailing, sbp.size)
    out = np.tensordot(field, lq, axes=([field.ndim - 1 - trailing], [0]))
    out = np.tensordot(out, lr, axes=([out.ndim - 1 - trailing], [0]))
    return np.tensordot(out, ls, axes=([out.ndim - 1 - trailing], [0]))
