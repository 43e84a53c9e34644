"""Physics-based flux core: hat-variables and flux fluctuations.

Everything here is closed-form and vectorized over leading axes; the last axis
holds the three local directions (n, m, l) or Cartesian components. No
eigendecomposition of the coefficient matrices is formed anywhere.
"""

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Tuple

import numpy as np

from ..exceptions import ConfigurationError


class Side(IntEnum):
    LOWER = 0
    UPPER = 1


NAMED_GAMMAS = {
    "free_surface": (1.0, 1.0, 1.0),
    "absorbing": (0.0, 0.0, 0.0),
    "clamped": (-1.0, -1.0, -1.0),
}
_GAMMA_RE = re.compile(r"^gamma:\s*(.+)$")


@dataclass(frozen=True)
class BoundarySpec:
    """Reflection coefficients per local direction; |gamma| <= 1."""

    gamma: Tuple[float, float, float]
    side: Side = Side.LOWER

    def __post_init__(self):
        gamma = tuple(float(g) for g in self.gamma)
        if len(gamma) != 3:
            raise ConfigurationError(f"gamma needs three values, got {self.gamma}")
        if any(not np.isfinite(g) or abs(g) > 1.0 for g in gamma):
            raise ConfigurationError(
                f"Boundary reflection coefficients must satisfy |gamma| <= 1, got {gamma}"
            )
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "side", Side(self.side))

    @classmethod
    def parse(cls, text: str, side: Side = Side.LOWER) -> "BoundarySpec":
        """Parse free_surface | absorbing | clamped | gamma:<a>,<b>,<c>."""
        text = text.strip()
        if text in NAMED_GAMMAS:
            return cls(NAMED_GAMMAS[text], side)
        match = _GAMMA_RE.match(text)
        if not match:
            raise ConfigurationError(
                f"Unknown boundary condition {text!r}; expected free_surface, "
                "absorbing, clamped or gamma:<a>,<b>,<c>"
            )
        try:
            values = tuple(float(v) for v in re.split(r"[,\s]+", match.group(1).strip()))
        except ValueError:
            raise ConfigurationError(f"Cannot parse gamma values in {text!r}")
        return cls(values, side)

    def with_side(self, side: Side) -> "BoundarySpec":
        return BoundarySpec(self.gamma, side)


@dataclass(frozen=True, eq=False)
class FaceTrace:
    """Velocity and traction on face nodes, with the local frame and impedances."""

    v: np.ndarray
    T: np.ndarray
    rotation: np.ndarray
    Z: np.ndarray

    @property
    def v_local(self) -> np.ndarray:
        return rotate_to_local(self.rotation, self.v)

    @property
    def T_local(self) -> np.ndarray:
        return rotate_to_local(self.rotation, self.T)


@dataclass(frozen=True, eq=False)
class HatState:
    """Hat velocity and traction in the local (n, m, l) frame."""

    v_hat: np.ndarray
    T_hat: np.ndarray


def rotate_to_local(R: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...j->...i", R, vec)


def rotate_to_global(R: np.ndarray, local: np.ndarray) -> np.ndarray:
    return np.einsum("...ji,...j->...i", R, local)


def traction(sigma: np.ndarray, n: np.ndarray) -> np.ndarray:
    """T = sigma n for Voigt-ordered stress (xx, yy, zz, xy, xz, yz)."""
    sxx, syy, szz, sxy, sxz, syz = (sigma[..., i] for i in range(6))
    nx, ny, nz = n[..., 0], n[..., 1], n[..., 2]
    return np.stack(
        [
            sxx * nx + sxy * ny + sxz * nz,
            sxy * nx + syy * ny + syz * nz,
            sxz * nx + syz * ny + szz * nz,
        ],
        axis=-1,
    )


def characteristics(v, T, Z) -> Tuple[np.ndarray, np.ndarray]:
    """Return (p, q) with q = (Zv + T)/2 and p = (Zv - T)/2."""
    Zv = Z * v
    return 0.5 * (Zv - T), 0.5 * (Zv + T)


def _check_impedances(*Zs):
    for Z in Zs:
        if np.any(~(np.asarray(Z) > 0.0)):
            raise ConfigurationError("Impedances must be positive")


def boundary_hat(trace: FaceTrace, spec: BoundarySpec) -> HatState:
    """Hat-variables on an external face, preserving the outgoing characteristic."""
    return reflected_hat(trace, np.asarray(spec.gamma), spec.side)


def reflected_hat(trace: FaceTrace, gamma: np.ndarray, side: Side) -> HatState:
    """Boundary hat-variables with gamma broadcast against the local trace."""
    gamma = np.asarray(gamma, dtype=np.float64)
    if np.any(~(np.abs(gamma) <= 1.0)):
        raise ConfigurationError("Boundary reflection coefficients must satisfy |gamma| <= 1")
    Z = trace.Z
    p, q = characteristics(trace.v_local, trace.T_local, Z)
    if side == Side.LOWER:
        return HatState(v_hat=(1.0 + gamma) * q / Z, T_hat=(1.0 - gamma) * q)
    return HatState(v_hat=(1.0 + gamma) * p / Z, T_hat=-(1.0 - gamma) * p)


def interface_hat(minus: FaceTrace, plus: FaceTrace) -> Tuple[HatState, HatState]:
    """Hat-variables on an internal face for the (minus, plus) pair.

    The minus element owns the face at its xi=1 side and the plus element at its
    xi=0 side; both traces must be expressed in the same local frame. The hat
    traction is shared and the hat velocities agree (no slip, no opening).
    """
    Zm, Zp = minus.Z, plus.Z
    _check_impedances(Zm, Zp)
    p_minus, _ = characteristics(minus.v_local, minus.T_local, Zm)
    _, q_plus = characteristics(plus.v_local, plus.T_local, Zp)
    alpha = Zp * Zm / (Zp + Zm)
    phi = alpha * (2.0 * q_plus / Zp - 2.0 * p_minus / Zm)
    v_minus = (2.0 * p_minus + phi) / Zm
    v_plus = (2.0 * q_plus - phi) / Zp
    return HatState(v_minus, phi), HatState(v_plus, phi)


def fluctuations(
    trace: FaceTrace, hat: HatState, side: Side
) -> Tuple[np.ndarray, np.ndarray]:
    """Local fluctuations (G, G~) with G~ = G / Z taken in the local frame."""
    Z = trace.Z
    dv = trace.v_local - hat.v_hat
    dT = trace.T_local - hat.T_hat
    if side == Side.UPPER:
        G = 0.5 * Z * dv + 0.5 * dT
    else:
        G = 0.5 * Z * dv - 0.5 * dT
    return G, G / Z


def assemble_fluctuation_vector(
    G: np.ndarray, G_tilde: np.ndarray, n: np.ndarray, side: Side
) -> np.ndarray:
    """FL (xi=0) or FR (xi=1) from Cartesian G, G~ and the face normal."""
    sign = 1.0 if side == Side.UPPER else -1.0
    gx, gy, gz = G_tilde[..., 0], G_tilde[..., 1], G_tilde[..., 2]
    nx, ny, nz = n[..., 0], n[..., 1], n[..., 2]
    stress = np.stack(
        [
            nx * gx,
            ny * gy,
            nz * gz,
            ny * gx + nx * gy,
            nz * gx + nx * gz,
            nz * gy + ny * gz,
        ],
        axis=-1,
    )
    return np.concatenate([G, sign * stress], axis=-1)


def flux_vector(trace: FaceTrace, hat: HatState, normal: np.ndarray, side: Side):
    """Fluctuations rotated back to Cartesian and assembled into FL or FR."""
    G, G_tilde = fluctuations(trace, hat, side)
    R = trace.rotation
    return assemble_fluctuation_vector(
        rotate_to_global(R, G), rotate_to_global(R, G_tilde), normal, side
    )


def hat_work(hat: HatState) -> np.ndarray:
    """T^ . v^ per face node."""
    return np.sum(hat.T_hat * hat.v_hat, axis=-1)


def dissipation(trace: FaceTrace, hat: HatState, side: Side) -> np.ndarray:
    """-sum_eta G_eta^2 / Z_eta per face node (never positive)."""
    G, G_tilde = fluctuations(trace, hat, side)
    return -np.sum(G * G_tilde, axis=-1)


def face_energy_terms(
    trace: FaceTrace, hat: HatState, side: Side
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodewise hat work T^ . v^ and dissipation -sum G^2/Z on one face side."""
    return hat_work(hat), dissipation(trace, hat, side)
