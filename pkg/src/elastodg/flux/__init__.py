"""Hat-variable Riemann solvers and flux fluctuations."""

from .riemann import (
    NAMED_GAMMAS,
    BoundarySpec,
    FaceTrace,
    HatState,
    Side,
    assemble_fluctuation_vector,
    boundary_hat,
    characteristics,
    dissipation,
    face_energy_terms,
    fluctuations,
    flux_vector,
    hat_work,
    interface_hat,
    reflected_hat,
    rotate_to_global,
    rotate_to_local,
    traction,
)

__all__ = [
    "NAMED_GAMMAS",
    "BoundarySpec",
    "FaceTrace",
    "HatState",
    "Side",
    "assemble_fluctuation_vector",
    "boundary_hat",
    "characteristics",
    "dissipation",
    "face_energy_terms",
    "fluctuations",
    "flux_vector",
    "hat_work",
    "interface_hat",
    "reflected_hat",
    "rotate_to_global",
    "rotate_to_local",
    "traction",
]
