"""One-dimensional nodal spectral operators and tensor-product helpers."""

from .quadrature import (
    NodeKind,
    QuadratureRule,
    build_quadrature,
    lagrange_basis,
    lagrange_basis_derivative,
)
from .sbp import (
    LOWER,
    UPPER,
    SbpOperator1D,
    apply_derivative_3d,
    build_sbp,
    face_trace,
    interpolate_3d,
    lift_face,
    quadrature_weights_3d,
    reference_nodes_3d,
)

__all__ = [
    "NodeKind",
    "QuadratureRule",
    "build_quadrature",
    "lagrange_basis",
    "lagrange_basis_derivative",
    "LOWER",
    "UPPER",
    "SbpOperator1D",
    "apply_derivative_3d",
    "build_sbp",
    "face_trace",
    "interpolate_3d",
    "lift_face",
    "quadrature_weights_3d",
    "reference_nodes_3d",
]
