"""Analytic plane waves in homogeneous isotropic media."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exceptions import ConfigurationError
from ..media import Material, MaterialKind


@dataclass(frozen=True, eq=False)
class PlaneWave:
    """v = A d sin(2 pi (k.x - c t) / L) travelling along the unit vector k.

    ``kind="p"`` polarizes along k; ``kind="s"`` along ``polarization``, which
    must be orthogonal to k.
    """

    material: Material
    direction: Sequence[float]
    wavelength: float = 1.0
    amplitude: float = 1.0
    kind: str = "p"
    polarization: Sequence[float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if self.material.kind != MaterialKind.ISOTROPIC:
            raise ConfigurationError("Plane-wave solutions need an isotropic medium")
        k = np.asarray(self.direction, dtype=float)
        k = k / np.linalg.norm(k)
        if self.kind == "p":
            d = k
        elif self.kind == "s":
            d = np.asarray(self.polarization, dtype=float)
            d = d - np.dot(d, k) * k
            if np.linalg.norm(d) < 1e-12:
                raise ConfigurationError("S-wave polarization is parallel to k")
            d = d / np.linalg.norm(d)
        else:
            raise ConfigurationError(f"Plane-wave kind must be 'p' or 's', got {self.kind!r}")
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "_d", d)

    @property
    def speed(self) -> float:
        p = self.material.parameters
        modulus = p["lambda"] + 2 * p["mu"] if self.kind == "p" else p["mu"]
        return float(np.sqrt(modulus / self.material.rho))

    @property
    def period(self) -> float:
        return self.wavelength / self.speed

    def _strain(self) -> np.ndarray:
        (kx, ky, kz), (dx, dy, dz) = self._k, self._d
        return np.array(
            [kx * dx, ky * dy, kz * dz, kx * dy + ky * dx, kx * dz + kz * dx, ky * dz + kz * dy]
        )

    def __call__(self, x: np.ndarray, t: float) -> np.ndarray:
        """Nine-component state at points x (..., 3) and time t."""
        c = self.speed
        phase = np.sin(2 * np.pi * (x @ self._k - c * t) / self.wavelength)
        stress = -(self.amplitude / c) * (self.material.stiffness @ self._strain())
        out = np.empty(x.shape[:-1] + (9,))
        out[..., :3] = self.amplitude * phase[..., None] * self._d
        out[..., 3:] = phase[..., None] * stress
        return out
