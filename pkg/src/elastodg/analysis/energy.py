"""Discrete energy and its history."""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..mesh import Mesh


def discrete_energy(Q: np.ndarray, mesh: Mesh) -> float:
    """Sum over nodes of 0.5 (rho |v|^2 + sigma^T S sigma) J h_i h_j h_k."""
    v, sigma = Q[..., :3], Q[..., 3:]
    kinetic = mesh.rho[:, None, None, None] * np.sum(v * v, axis=-1)
    S = mesh.compliance[:, None, None, None]
    strain = np.einsum("...i,...ij,...j->...", sigma, S, sigma)
    return float(0.5 * np.sum(mesh.quadrature_weights * (kinetic + strain)))


@dataclass
class EnergyTrace:
    times: List[float] = field(default_factory=list)
    energies: List[float] = field(default_factory=list)

    def append(self, t: float, energy: float) -> None:
        self.times.append(float(t))
        self.energies.append(float(energy))

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.times, self.energies]) if self.times else np.empty((0, 2))

    def max_increase(self) -> float:
        """Largest step-to-step growth, 0 for a non-increasing trace."""
        if len(self.energies) < 2:
            return 0.0
        return float(max(0.0, np.max(np.diff(self.energies))))


def energy_monotone(trace: EnergyTrace, tol: float = 1e-12) -> bool:
    """True when every sample satisfies E(t_k+1) <= E(t_k) (1 + tol)."""
    if len(trace.energies) < 2:
        return True
    E = np.asarray(trace.energies)
    return bool(np.all(E[1:] <= E[:-1] * (1.0 + tol)))
