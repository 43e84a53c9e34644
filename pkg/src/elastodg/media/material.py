"""Material parameterization for linear elastic media.

Stress vectors use the single Voigt ordering (σxx, σyy, σzz, σxy, σxz, σyz). With
that ordering c44 couples σxy, c55 couples σxz and c66 couples σyz.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Tuple

import numpy as np
from scipy import linalg

from ..exceptions import ConfigurationError, ContractViolation

logger = logging.getLogger("elastodg")

ORTHOTROPIC_KEYS = ("c11", "c12", "c13", "c22", "c23", "c33", "c44", "c55", "c66")
_COUPLED = np.zeros((6, 6), dtype=bool)
_COUPLED[:3, :3] = True
_COUPLED[3, 3] = _COUPLED[4, 4] = _COUPLED[5, 5] = True


class MaterialKind(str, Enum):
    ISOTROPIC = "isotropic"
    ORTHOTROPIC = "orthotropic"


@dataclass(frozen=True, eq=False)
class Material:
    """Density and 6x6 stiffness of a homogeneous elastic medium."""

    rho: float
    stiffness: np.ndarray
    kind: MaterialKind
    parameters: Dict[str, float] = field(default_factory=dict)

    @cached_property
    def cholesky(self) -> Tuple[np.ndarray, bool]:
        return linalg.cho_factor(self.stiffness)

    @cached_property
    def compliance(self) -> np.ndarray:
        """S = C^-1 from the Cholesky factorization."""
        return linalg.cho_solve(self.cholesky, np.eye(6))

    @cached_property
    def wavespeeds(self) -> "WavespeedSet":
        return axis_wavespeeds(self)

    def describe(self) -> str:
        params = ", ".join(f"{k}={v:.6g}" for k, v in self.parameters.items())
        return f"{self.kind.value}(rho={self.rho:.6g}, {params})"


@dataclass(frozen=True)
class WavespeedSet:
    """P, SH and SV speeds along the x, y and z axes, in m/s."""

    rho: float
    c_p: Tuple[float, float, float]
    c_sh: Tuple[float, float, float]
    c_sv: Tuple[float, float, float]

    @property
    def max_speed(self) -> float:
        return float(max(self.c_p + self.c_sh + self.c_sv))

    def as_array(self) -> np.ndarray:
        """Rows (p, sh, sv), columns (x, y, z)."""
        return np.array([self.c_p, self.c_sh, self.c_sv], dtype=np.float64)

    def impedances(self, speeds: np.ndarray) -> np.ndarray:
        return self.rho * speeds


def _validated(rho: float, C: np.ndarray, kind: MaterialKind, params) -> Material:
    if not np.isfinite(rho) or rho <= 0:
        raise ConfigurationError(f"Density must be positive, got rho={rho}")
    C = np.array(C, dtype=np.float64)
    if C.shape != (6, 6) or not np.all(np.isfinite(C)):
        raise ConfigurationError("Stiffness must be a finite 6x6 matrix")
    if not np.allclose(C, C.T, rtol=0.0, atol=1e-12 * np.max(np.abs(C))):
        raise ConfigurationError("Stiffness matrix must be symmetric")
    if np.any(C[~_COUPLED] != 0.0):
        raise ConfigurationError(
            "Only orthotropic stiffness is supported; off-pattern entries must be zero"
        )
    try:
        np.linalg.cholesky(C)
    except np.linalg.LinAlgError:
        raise ConfigurationError("Stiffness matrix must be positive definite")
    C.setflags(write=False)
    return Material(rho=float(rho), stiffness=C, kind=kind, parameters=dict(params))


def isotropic(rho: float, lam: float, mu: float) -> Material:
    """Isotropic medium from Lamé parameters (mu > 0, lam > -mu)."""
    if mu <= 0:
        raise ConfigurationError(f"Shear modulus must satisfy mu > 0, got mu={mu}")
    if lam <= -mu:
        raise ConfigurationError(
            f"Lamé parameters must satisfy lambda > -mu, got lambda={lam}, mu={mu}"
        )
    C = np.zeros((6, 6))
    C[:3, :3] = lam
    C[[0, 1, 2], [0, 1, 2]] = lam + 2 * mu
    C[[3, 4, 5], [3, 4, 5]] = mu
    return _validated(rho, C, MaterialKind.ISOTROPIC, {"lambda": lam, "mu": mu})


def isotropic_from_speeds(rho: float, c_p: float, c_s: float) -> Material:
    """Isotropic medium from density and P/S speeds."""
    if rho <= 0 or c_p <= 0 or c_s <= 0:
        raise ConfigurationError(
            f"rho, c_p and c_s must be positive, got ({rho}, {c_p}, {c_s})"
        )
    if c_p <= c_s * np.sqrt(4.0 / 3.0):
        raise ConfigurationError(
            f"Inadmissible speeds: c_p > sqrt(4/3)*c_s violated (c_p={c_p}, c_s={c_s})"
        )
    mu = rho * c_s**2
    lam = rho * c_p**2 - 2.0 * rho * c_s**2
    return isotropic(rho, lam, mu)


def orthotropic(rho: float, **coefficients: float) -> Material:
    """Orthotropic medium from the nine independent stiffness constants."""
    missing = [k for k in ORTHOTROPIC_KEYS if k not in coefficients]
    extra = [k for k in coefficients if k not in ORTHOTROPIC_KEYS]
    if missing or extra:
        raise ConfigurationError(
            f"Orthotropic stiffness needs {', '.join(ORTHOTROPIC_KEYS)}"
            f" (missing: {missing}, unknown: {extra})"
        )
    c = coefficients
    C = np.array(
        [
            [c["c11"], c["c12"], c["c13"], 0, 0, 0],
            [c["c12"], c["c22"], c["c23"], 0, 0, 0],
            [c["c13"], c["c23"], c["c33"], 0, 0, 0],
            [0, 0, 0, c["c44"], 0, 0],
            [0, 0, 0, 0, c["c55"], 0],
            [0, 0, 0, 0, 0, c["c66"]],
        ],
        dtype=np.float64,
    )
    return _validated(rho, C, MaterialKind.ORTHOTROPIC, c)


def axis_wavespeeds(material: Material) -> WavespeedSet:
    """Axis-aligned P, SH and SV speeds of an orthotropic (or isotropic) medium."""
    C, rho = material.stiffness, material.rho
    c11, c22, c33 = C[0, 0], C[1, 1], C[2, 2]
    c44, c55, c66 = C[3, 3], C[4, 4], C[5, 5]
    speed = lambda c: float(np.sqrt(c / rho))
    return WavespeedSet(
        rho=rho,
        c_p=(speed(c11), speed(c22), speed(c33)),
        c_sh=(speed(c44), speed(c66), speed(c55)),
        c_sv=(speed(c55), speed(c44), speed(c66)),
    )


def effective_normal_speeds(ws: WavespeedSet, n: np.ndarray) -> np.ndarray:
    """Effective (c_n, c_m, c_l) for unit normals n, shaped n.shape."""
    n = np.asarray(n, dtype=np.float64)
    norm = np.linalg.norm(n, axis=-1)
    if np.any(np.abs(norm - 1.0) > 1e-12):
        raise ContractViolation("effective_normal_speeds requires unit normals")
    return np.sqrt((n**2) @ (ws.as_array() ** 2).T)


def impedances(material: Material, n: np.ndarray) -> np.ndarray:
    """Impedances (Z_n, Z_m, Z_l) = rho * effective speeds."""
    return material.rho * effective_normal_speeds(material.wavespeeds, n)


def energy_density(material: Material, v: np.ndarray, sigma: np.ndarray):
    """Kinetic plus strain energy density 0.5(rho|v|^2 + sigma^T S sigma)."""
    kinetic = material.rho * np.sum(v * v, axis=-1)
    strain = np.einsum("...i,ij,...j->...", sigma, material.compliance, sigma)
    return 0.5 * (kinetic + strain)


def block_p(material: Material) -> np.ndarray:
    """P = blockdiag(rho^-1 I3, C)."""
    P = np.zeros((9, 9))
    P[:3, :3] = np.eye(3) / material.rho
    P[3:, 3:] = material.stiffness
    return P


def block_p_inverse(material: Material) -> np.ndarray:
    """P^-1 = blockdiag(rho I3, S)."""
    Pinv = np.zeros((9, 9))
    Pinv[:3, :3] = np.eye(3) * material.rho
    Pinv[3:, 3:] = material.compliance
    return Pinv
