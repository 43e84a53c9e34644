"""Error norms against analytic solutions and observed convergence rates."""

from typing import Callable, Sequence, Tuple

import numpy as np

from ..mesh import Mesh

ExactSolution = Callable[[np.ndarray, float], np.ndarray]


def error_norms(
    Q: np.ndarray, exact_fn: ExactSolution, mesh: Mesh, t: float
) -> Tuple[float, float]:
    """Quadrature L2 norm and nodal max norm of Q - exact(x, t)."""
    err = Q - exact_fn(mesh.geometry.node_coords, t)
    sq = np.sum(err * err, axis=-1)
    l2 = float(np.sqrt(np.sum(mesh.quadrature_weights * sq)))
    linf = float(np.max(np.abs(err)))
    return l2, linf


def convergence_rate(hs: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(h)."""
    hs, errors = np.asarray(hs, dtype=float), np.asarray(errors, dtype=float)
    if hs.size < 2 or hs.size != errors.size:
        raise ValueError("Need at least two (h, error) pairs of equal length")
    if np.any(hs <= 0) or np.any(errors <= 0):
        raise ValueError("Mesh sizes and errors must be positive")
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)
