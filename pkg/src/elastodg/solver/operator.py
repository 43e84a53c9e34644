"""Semi-discrete spatial operator: split-form volume terms and penalty fluxes.

The bracketed spatial terms of an element are

    sum_xi [D_xi F_xi(Q) + B_xi(D_xi v)] - sum_faces H^-1 e(side) [J|grad xi| F_face]

and the rate follows by dividing velocity rows by J rho and applying C / J to the
stress rows. All state arrays end in the nine components
(vx, vy, vz, sxx, syy, szz, sxy, sxz, syz).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..exceptions import ContractViolation
from ..flux import (
    FaceTrace,
    HatState,
    Side,
    boundary_hat,
    face_energy_terms,
    flux_vector,
    interface_hat,
    traction,
)
from ..media import Material, impedances
from ..mesh import ElementGeometry, Mesh, face_axis, face_side
from ..spectral import (
    SbpOperator1D,
    apply_derivative_3d,
    face_trace,
    lift_face,
    quadrature_weights_3d,
)

logger = logging.getLogger("elastodg")

NUM_FIELDS = 9
VELOCITY = slice(0, 3)
STRESS = slice(3, 9)


def symmetric_gradient(m: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Voigt vector (mx gx, my gy, mz gz, my gx + mx gy, mz gx + mx gz, mz gy + my gz)."""
    mx, my, mz = m[..., 0], m[..., 1], m[..., 2]
    gx, gy, gz = g[..., 0], g[..., 1], g[..., 2]
    return np.stack(
        [mx * gx, my * gy, mz * gz, my * gx + mx * gy, mz * gx + mx * gz, mz * gy + my * gz],
        axis=-1,
    )


def conservative_flux(Q: np.ndarray, metric: np.ndarray, xi: int) -> np.ndarray:
    """F_xi(Q): the stress acting on the metric row J grad(xi), in the velocity rows."""
    out = np.zeros_like(Q)
    out[..., VELOCITY] = traction(Q[..., STRESS], metric[..., xi, :])
    return out


def ncp_flux(grad_v: np.ndarray, metric: np.ndarray, xi: int) -> np.ndarray:
    """B_xi(D_xi v): symmetrized product of the metric row with a velocity derivative."""
    out = np.zeros(grad_v.shape[:-1] + (NUM_FIELDS,), dtype=grad_v.dtype)
    out[..., STRESS] = symmetric_gradient(metric[..., xi, :], grad_v)
    return out


def volume_bracket(Q: np.ndarray, metric: np.ndarray, sbp: SbpOperator1D) -> np.ndarray:
    """Element-local split-form volume terms, before the mass scaling."""
    out = np.zeros_like(Q)
    for xi in range(3):
        out += apply_derivative_3d(conservative_flux(Q, metric, xi), xi, sbp, trailing=1)
        dv = apply_derivative_3d(Q[..., VELOCITY], xi, sbp, trailing=1)
        out += ncp_flux(dv, metric, xi)
    return out


def apply_mass(
    bracket: np.ndarray, jac: np.ndarray, rho, stiffness: np.ndarray
) -> np.ndarray:
    """Solve J blockdiag(rho^-1 I, C)^-1 dQ/dt = bracket for dQ/dt.

    ``rho`` broadcasts against ``jac``; ``stiffness`` broadcasts against
    ``jac.shape + (6, 6)``.
    """
    out = np.empty_like(bracket)
    out[..., VELOCITY] = bracket[..., VELOCITY] / (jac * rho)[..., None]
    stress = np.einsum("...ij,...j->...i", stiffness, bracket[..., STRESS])
    out[..., STRESS] = stress / jac[..., None]
    return out


def make_face_trace(
    face_state: np.ndarray, normal: np.ndarray, rotation: np.ndarray, Z: np.ndarray
) -> FaceTrace:
    return FaceTrace(
        v=face_state[..., VELOCITY],
        T=traction(face_state[..., STRESS], normal),
        rotation=rotation,
        Z=Z,
    )


def extract_face_trace(
    Q: np.ndarray,
    geometry: ElementGeometry,
    face: int,
    material: Material,
    sbp: SbpOperator1D,
) -> FaceTrace:
    """Velocity, traction, frame and impedances on one face of one element."""
    if face not in range(6):
        raise ContractViolation(f"Face id must be in 0..5, got {face}")
    state = face_trace(Q, face_axis(face), face_side(face), sbp, trailing=1)
    fg = geometry.faces[face]
    return make_face_trace(state, fg.normal, fg.rotation, impedances(material, fg.normal))


def lifted_flux(
    trace: FaceTrace,
    hat: HatState,
    normal: np.ndarray,
    scale: np.ndarray,
    face: int,
    sbp: SbpOperator1D,
) -> np.ndarray:
    """H^-1 e(side) applied to the scaled fluctuation vector of one face."""
    side = Side(face_side(face))
    F = scale[..., None] * flux_vector(trace, hat, normal, side)
    return lift_face(F, face_axis(face), side, sbp, trailing=1)


def element_rhs(
    Q: np.ndarray,
    geometry: ElementGeometry,
    material: Material,
    face_hats: Mapping[int, HatState],
    sbp: SbpOperator1D,
) -> np.ndarray:
    """dQ/dt of a single element given published hat-variables on all six faces."""
    missing = [f for f in range(6) if f not in face_hats]
    if missing:
        raise ContractViolation(f"No hat-variables published for faces {missing}")
    bracket = volume_bracket(Q, geometry.metric, sbp)
    for face in range(6):
        trace = extract_face_trace(Q, geometry, face, material, sbp)
        fg = geometry.faces[face]
        bracket -= lifted_flux(
            trace, face_hats[face], fg.normal, fg.surface_scale, face, sbp
        )
    return apply_mass(bracket, geometry.jac, material.rho, material.stiffness)


@dataclass(frozen=True)
class EnergyBudget:
    """Terms of the discrete energy rate.

    ``rate`` equals ``boundary + interface + dissipation`` up to roundoff on
    Lobatto nodes.
    """

    rate: float
    boundary: float
    interface: float
    dissipation: float

    @property
    def residual(self) -> float:
        return self.rate - (self.boundary + self.interface + self.dissipation)


@dataclass(frozen=True, eq=False)
class _FaceData:
    """Frame, surface scale and impedances on a face set."""

    normal: np.ndarray
    scale: np.ndarray
    rotation: np.ndarray
    Z: np.ndarray
    Z_plus: Optional[np.ndarray] = None


def _face_impedances(rho: np.ndarray, speeds: np.ndarray, normal: np.ndarray):
    """rho * effective speeds for per-element speed tables (k, 3, 3)."""
    sq = np.einsum("k...c,kwc->k...w", normal**2, speeds**2)
    return rho.reshape((-1,) + (1,) * (normal.ndim - 1)) * np.sqrt(sq)


class SpatialOperator:
    """Global semi-discrete operator on a mesh.

    Element work can be restricted to a slice of elements so the same kernels
    drive serial loops and threaded chunks.
    """

    def __init__(self, mesh: Mesh):
        self.mesh = mesh
        self.sbp = mesh.sbp
        geo = mesh.geometry
        self._jac = geo.jac
        self._metric = geo.metric
        self._rho = mesh.rho[:, None, None, None]
        self._stiffness = mesh.stiffness[:, None, None, None]
        self._weights3 = quadrature_weights_3d(self.sbp)
        w = self.sbp.weights
        self._weights2 = w[:, None] * w[None, :]

        self._interfaces: List[_FaceData] = []
        for iset in mesh.interfaces:
            fg = geo.faces[2 * iset.axis + 1][iset.minus]
            self._interfaces.append(
                _FaceData(
                    normal=fg.normal,
                    scale=fg.surface_scale,
                    rotation=fg.rotation,
                    Z=_face_impedances(
                        mesh.rho[iset.minus], mesh.wavespeeds[iset.minus], fg.normal
                    ),
                    Z_plus=_face_impedances(
                        mesh.rho[iset.plus], mesh.wavespeeds[iset.plus], fg.normal
                    ),
                )
            )
        self._boundaries: List[_FaceData] = []
        for bset in mesh.boundaries:
            fg = geo.faces[2 * bset.axis + bset.side][bset.elements]
            self._boundaries.append(
                _FaceData(
                    normal=fg.normal,
                    scale=fg.surface_scale,
                    rotation=fg.rotation,
                    Z=_face_impedances(
                        mesh.rho[bset.elements], mesh.wavespeeds[bset.elements], fg.normal
                    ),
                )
            )

    @property
    def num_elements(self) -> int:
        return self.mesh.num_elements

    def chunks(self, block: int) -> List[slice]:
        """Fixed-size element slices, independent of the worker count."""
        if block < 1:
            raise ContractViolation(f"Element block must be positive, got {block}")
        E = self.num_elements
        return [slice(s, min(s + block, E)) for s in range(0, E, block)]

    def _check_state(self, Q: np.ndarray):
        n = self.sbp.size
        expected = (self.num_elements, n, n, n, NUM_FIELDS)
        if Q.shape != expected:
            raise ContractViolation(f"State shape {Q.shape} != {expected}")

    def zeros(self) -> np.ndarray:
        n = self.sbp.size
        return np.zeros((self.num_elements, n, n, n, NUM_FIELDS))

    # element-local kernels

    def volume_bracket(self, Q: np.ndarray, elements: slice = slice(None)):
        return volume_bracket(Q[elements], self._metric[elements], self.sbp)

    def apply_mass(self, bracket: np.ndarray, elements: slice = slice(None)):
        return apply_mass(
            bracket, self._jac[elements], self._rho[elements], self._stiffness[elements]
        )

    def volume(self, Q: np.ndarray, elements: slice = slice(None)) -> np.ndarray:
        """Element-local operator D: volume terms only, mass applied."""
        return self.apply_mass(self.volume_bracket(Q, elements), elements)

    def block_volume(self, block: np.ndarray, elements: slice) -> np.ndarray:
        """D applied to a state already restricted to ``elements``."""
        bracket = volume_bracket(block, self._metric[elements], self.sbp)
        return self.apply_mass(bracket, elements)

    # face phase

    def _traces(self, Q: np.ndarray) -> List[np.ndarray]:
        return [
            face_trace(Q, face_axis(f), face_side(f), self.sbp, trailing=1)
            for f in range(6)
        ]

    def _interface_pairs(self, traces: List[np.ndarray]):
        for iset, data in zip(self.mesh.interfaces, self._interfaces):
            minus = make_face_trace(
                traces[2 * iset.axis + 1][iset.minus], data.normal, data.rotation, data.Z
            )
            plus = make_face_trace(
                traces[2 * iset.axis][iset.plus], data.normal, data.rotation, data.Z_plus
            )
            hat_minus, hat_plus = interface_hat(minus, plus)
            yield iset, data, (minus, hat_minus), (plus, hat_plus)

    def _boundary_faces(self, traces: List[np.ndarray]):
        for bset, data in zip(self.mesh.boundaries, self._boundaries):
            face = 2 * bset.axis + bset.side
            trace = make_face_trace(
                traces[face][bset.elements], data.normal, data.rotation, data.Z
            )
            yield bset, data, trace, boundary_hat(trace, bset.spec)

    def face_hats(self, Q: np.ndarray) -> Dict[Tuple[str, object], object]:
        """Hat-variables per face set: ("interface", axis) -> (minus, plus) pairs
        and ("boundary", name) -> HatState."""
        self._check_state(Q)
        traces = self._traces(Q)
        hats: Dict[Tuple[str, object], object] = {}
        for iset, _, (_, hm), (_, hp) in self._interface_pairs(traces):
            hats[("interface", iset.axis)] = (hm, hp)
        for bset, _, _, hat in self._boundary_faces(traces):
            hats[("boundary", bset.name)] = hat
        return hats

    def flux_bracket(self, Q: np.ndarray, boundaries: bool = True) -> np.ndarray:
        """Lifted penalty terms of all faces, before the mass scaling."""
        self._check_state(Q)
        traces = self._traces(Q)
        out = np.zeros_like(Q)
        for iset, data, (minus, hm), (plus, hp) in self._interface_pairs(traces):
            up, low = 2 * iset.axis + 1, 2 * iset.axis
            out[iset.minus] -= lifted_flux(minus, hm, data.normal, data.scale, up, self.sbp)
            out[iset.plus] -= lifted_flux(plus, hp, data.normal, data.scale, low, self.sbp)
        if boundaries:
            for bset, data, trace, hat in self._boundary_faces(traces):
                face = 2 * bset.axis + bset.side
                out[bset.elements] -= lifted_flux(
                    trace, hat, data.normal, data.scale, face, self.sbp
                )
        return out

    def flux(self, Q: np.ndarray) -> np.ndarray:
        """Face phase F: penalty terms with the mass applied."""
        return self.apply_mass(self.flux_bracket(Q))

    def rhs(self, Q: np.ndarray) -> np.ndarray:
        self._check_state(Q)
        return self.apply_mass(self.volume_bracket(Q) + self.flux_bracket(Q))

    # energy accounting

    def energy_rate_budget(self, Q: np.ndarray) -> EnergyBudget:
        """Discrete energy rate and its boundary, interface and dissipation parts."""
        self._check_state(Q)
        bracket = self.volume_bracket(Q) + self.flux_bracket(Q)
        rate = float(np.sum(self._weights3[..., None] * Q * bracket))

        traces = self._traces(Q)
        w2 = self._weights2
        boundary = interface = diss = 0.0
        for _, data, (minus, hm), (plus, hp) in self._interface_pairs(traces):
            work_m, diss_m = face_energy_terms(minus, hm, Side.UPPER)
            work_p, diss_p = face_energy_terms(plus, hp, Side.LOWER)
            interface += float(np.sum(data.scale * w2 * (work_m - work_p)))
            diss += float(np.sum(data.scale * w2 * (diss_m + diss_p)))
        for bset, data, trace, hat in self._boundary_faces(traces):
            work, d = face_energy_terms(trace, hat, bset.side)
            sign = 1.0 if bset.side == Side.UPPER else -1.0
            boundary += sign * float(np.sum(data.scale * w2 * work))
            diss += float(np.sum(data.scale * w2 * d))
        return EnergyBudget(rate=rate, boundary=boundary, interface=interface, dissipation=diss)

    def interface_work_residual(self, Q: np.ndarray) -> float:
        """Max |T^ . (v^+ - v^-)| over interface nodes, relative to the work scale.

        The scale is sum |T^| (|v-| + |v+| + |T-| / Z- + |T+| / Z+) over the local
        components; nodes where it vanishes contribute zero.
        """
        self._check_state(Q)
        worst = 0.0
        for _, _, (minus, hm), (plus, hp) in self._interface_pairs(self._traces(Q)):
            jump = np.abs(np.sum(hm.T_hat * (hp.v_hat - hm.v_hat), axis=-1))
            size = (
                np.abs(minus.v_local)
                + np.abs(plus.v_local)
                + np.abs(minus.T_local) / minus.Z
                + np.abs(plus.T_local) / plus.Z
            )
            scale = np.sum(np.abs(hm.T_hat) * size, axis=-1)
            ratio = np.divide(jump, scale, out=np.zeros_like(jump), where=scale > 0.0)
            if ratio.size:
                worst = max(worst, float(np.max(ratio)))
        return worst
