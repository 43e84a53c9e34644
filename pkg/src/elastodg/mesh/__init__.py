"""Curvilinear hexahedral meshes: geometry, topography and connectivity."""

from .geometry import (
    AXIS_INDEX,
    FACE_IDS,
    ElementGeometry,
    FaceGeometry,
    build_geometry,
    build_mapping,
    compute_face_geometry,
    compute_metrics,
    deform_depth,
    face_axis,
    face_rotation_basis,
    face_side,
    metric_identity_residual,
)
from .mesh import (
    DOMAIN_FACES,
    BoundaryFace,
    BoundarySet,
    GridSpec,
    InterfaceSet,
    InternalFace,
    Mesh,
    build_box_mesh,
    build_mesh,
    invert_mapping,
    locate_point,
)
from .topography import (
    TopographySurface,
    gaussian_hill,
    ingest_topography,
    load_topography,
    max_slope,
    sinusoidal_surface,
    synthetic_topography,
)

__all__ = [
    "AXIS_INDEX",
    "FACE_IDS",
    "ElementGeometry",
    "FaceGeometry",
    "build_geometry",
    "build_mapping",
    "compute_face_geometry",
    "compute_metrics",
    "deform_depth",
    "face_axis",
    "face_rotation_basis",
    "face_side",
    "metric_identity_residual",
    "DOMAIN_FACES",
    "BoundaryFace",
    "BoundarySet",
    "GridSpec",
    "InterfaceSet",
    "InternalFace",
    "Mesh",
    "build_box_mesh",
    "build_mesh",
    "invert_mapping",
    "locate_point",
    "TopographySurface",
    "gaussian_hill",
    "ingest_topography",
    "load_topography",
    "max_slope",
    "sinusoidal_surface",
    "synthetic_topography",
]
