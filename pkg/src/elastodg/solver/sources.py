"""Point sources and their source-time functions.

Each time function carries an exact antiderivative so a step can add the
integral of the forcing over [t, t + dt] without quadrature.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy import special

from ..exceptions import ConfigurationError
from ..mesh import Mesh, locate_point
from ..spectral import quadrature_weights_3d

logger = logging.getLogger("elastodg")


@dataclass(frozen=True)
class LOH1:
    """g(t) = t/T^2 exp(-t/T), a smoothed step in moment rate."""

    T: float = 0.1

    def __post_init__(self):
        if not self.T > 0:
            raise ConfigurationError(f"LOH1 rise time must be positive, got T={self.T}")

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        return np.where(t > 0, t / self.T**2 * np.exp(-t / self.T), 0.0)

    def antiderivative(self, t):
        t = np.asarray(t, dtype=np.float64)
        s = t / self.T
        return np.where(t > 0, 1.0 - np.exp(-s) * (1.0 + s), 0.0)


@dataclass(frozen=True)
class GaussCosine:
    """g(t) = exp(-2 f0^2 (t - t0)^2) cos(2 pi f0 (t - t0))."""

    f0: float
    t0: float

    def __post_init__(self):
        if not self.f0 > 0:
            raise ConfigurationError(f"Central frequency must be positive, got {self.f0}")

    @property
    def _a(self) -> float:
        return 2.0 * self.f0**2

    @property
    def _omega(self) -> float:
        return 2.0 * np.pi * self.f0

    def __call__(self, t):
        u = np.asarray(t, dtype=np.float64) - self.t0
        return np.exp(-self._a * u**2) * np.cos(self._omega * u)

    def antiderivative(self, t):
        u = np.asarray(t, dtype=np.float64) - self.t0
        a, w = self._a, self._omega
        root = np.sqrt(a)
        z = root * u - 1j * w / (2.0 * root)
        value = np.sqrt(np.pi) / (2.0 * root) * np.exp(-(w**2) / (4.0 * a)) * (1.0 + special.erf(z))
        return np.real(value)


@dataclass(frozen=True)
class Ricker:
    """g(t) = (1 - 2 pi^2 f0^2 tau^2) exp(-pi^2 f0^2 tau^2), tau = t - t0."""

    f0: float
    t0: float

    def __post_init__(self):
        if not self.f0 > 0:
            raise ConfigurationError(f"Central frequency must be positive, got {self.f0}")

    def __call__(self, t):
        tau = np.asarray(t, dtype=np.float64) - self.t0
        arg = (np.pi * self.f0 * tau) ** 2
        return (1.0 - 2.0 * arg) * np.exp(-arg)

    def antiderivative(self, t):
        tau = np.asarray(t, dtype=np.float64) - self.t0
        return tau * np.exp(-((np.pi * self.f0 * tau) ** 2))


TimeFunction = Union[LOH1, GaussCosine, Ricker]


def eval_time_function(timefn: TimeFunction, t) -> np.ndarray:
    return timefn(t)


def integrate_time_function(timefn: TimeFunction, a: float, b: float) -> float:
    """Exact integral of g over [a, b]."""
    return float(timefn.antiderivative(b) - timefn.antiderivative(a))


def _location(location: Sequence[float]) -> np.ndarray:
    point = np.asarray(location, dtype=np.float64)
    if point.shape != (3,) or not np.all(np.isfinite(point)):
        raise ConfigurationError(f"Source location must be three finite numbers: {location}")
    return point


@dataclass(frozen=True, eq=False)
class MomentSource:
    """Moment tensor M (N m) at a point, released with time function g."""

    moment: np.ndarray
    location: np.ndarray
    timefn: TimeFunction

    def __post_init__(self):
        M = np.asarray(self.moment, dtype=np.float64)
        if M.shape != (3, 3) or not np.all(np.isfinite(M)):
            raise ConfigurationError("Moment tensor must be a finite 3x3 matrix")
        if not np.allclose(M, M.T, rtol=0.0, atol=1e-12 * np.max(np.abs(M))):
            raise ConfigurationError("Moment tensor must be symmetric")
        object.__setattr__(self, "moment", M)
        object.__setattr__(self, "location", _location(self.location))

    def forcing(self, rho: float) -> np.ndarray:
        """Nine-component forcing vector; the stress rows take Voigt-ordered M."""
        M = self.moment
        out = np.zeros(9)
        out[3:6] = np.diag(M)
        out[6:9] = M[0, 1], M[0, 2], M[1, 2]
        return out


@dataclass(frozen=True, eq=False)
class ForceSource:
    """Body force f (N) at a point, released with time function g."""

    force: np.ndarray
    location: np.ndarray
    timefn: TimeFunction

    def __post_init__(self):
        f = np.asarray(self.force, dtype=np.float64)
        if f.shape != (3,) or not np.all(np.isfinite(f)):
            raise ConfigurationError("Force must be three finite numbers")
        object.__setattr__(self, "force", f)
        object.__setattr__(self, "location", _location(self.location))

    def forcing(self, rho: float) -> np.ndarray:
        out = np.zeros(9)
        out[:3] = self.force / rho
        return out


Source = Union[MomentSource, ForceSource]


@dataclass(frozen=True, eq=False)
class SourceStencil:
    """Discrete point source: nodal weights in one element times a forcing vector."""

    element: int
    weights: np.ndarray
    forcing: np.ndarray
    timefn: TimeFunction

    def inject(self, Q: np.ndarray, t0: float, t1: float) -> None:
        """Add the forcing integrated exactly over [t0, t1] to Q in place."""
        amount = integrate_time_function(self.timefn, t0, t1)
        if amount != 0.0:
            Q[self.element] += (amount * self.weights)[..., None] * self.forcing


def inject_source(source: Source, mesh: Mesh) -> SourceStencil:
    """Project a point source onto the nodes of its owning element.

    Raises:
        ConfigurationError: the location is outside the mesh
        MeshError: the preimage search failed
    """
    if not mesh.in_bounds(source.location):
        raise ConfigurationError(
            f"Source location {tuple(source.location.tolist())} is outside the mesh"
        )
    element, ref = locate_point(mesh, source.location)
    sbp = mesh.sbp
    lq, lr, ls = (sbp.basis(c) for c in ref)
    basis = ls[:, None, None] * lr[None, :, None] * lq[None, None, :]
    weights = basis / (quadrature_weights_3d(sbp) * mesh.geometry.jac[element])
    logger.debug(
        f"{type(source).__name__} at {source.location.tolist()} -> element {element}, "
        f"reference point {np.round(ref, 6).tolist()}"
    )
    return SourceStencil(
        element=element,
        weights=weights,
        forcing=source.forcing(float(mesh.rho[element])),
        timefn=source.timefn,
    )
