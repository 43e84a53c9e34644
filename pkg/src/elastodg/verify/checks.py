"""Property checks: SBP, Riemann identities, anti-symmetry, free-stream, energy."""

from typing import Dict, Tuple

import numpy as np

from ..analysis import EnergyTrace, discrete_energy, energy_monotone
from ..flux import (
    FaceTrace,
    Side,
    characteristics,
    interface_hat,
    reflected_hat,
    rotate_to_global,
)
from ..media import isotropic_from_speeds
from ..media.presets import UNIT_MEDIUM
from ..mesh import Mesh, build_box_mesh, build_mapping, sinusoidal_surface
from ..solver import AderIntegrator, SpatialOperator, cfl_timestep, conservative_flux, ncp_flux
from ..spectral import (
    NodeKind,
    apply_derivative_3d,
    build_quadrature,
    build_sbp,
    quadrature_weights_3d,
)
from .registry import CheckResult, VerifyCheck

SBP_TOL = 1e-12
RIEMANN_TOL = 1e-12
CONSISTENCY_TOL = 1e-13
ANTISYMMETRY_TOL = 1e-11
FREE_STREAM_TOL = 1e-11
ENERGY_TOL = 1e-12
SEED = 20240531

# n -> -n with m kept, so the frame stays right-handed
FLIPPED_FRAME = np.diag([-1.0, 1.0, -1.0])

STIFF_MEDIUM = isotropic_from_speeds(2.0, 3.0, 1.5)

ENERGY_SETUPS: Dict[str, Dict[str, str]] = {
    "free_surface": {
        name: "free_surface" for name in ("x_min", "x_max", "y_min", "y_max", "z_min", "z_max")
    },
    "absorbing": {
        name: "absorbing" for name in ("x_min", "x_max", "y_min", "y_max", "z_min", "z_max")
    },
    "mixed_interface": {
        "x_min": "absorbing",
        "x_max": "absorbing",
        "y_min": "clamped",
        "y_max": "free_surface",
        "z_min": "gamma:0.5,-0.5,0.25",
        "z_max": "absorbing",
    },
}


def check_sbp() -> CheckResult:
    worst = 0.0
    for kind in NodeKind:
        for degree in range(1, 9):
            sbp = build_sbp(build_quadrature(kind, degree))
            worst = max(worst, sbp.sbp_residual())
    return CheckResult("sbp", worst <= SBP_TOL, f"max residual {worst:.2e} for P=1..8, GLL and GL")


def random_traces(rng: np.random.Generator, count: int) -> FaceTrace:
    """Random local-frame traces with identity rotation and positive impedances."""
    R = np.broadcast_to(np.eye(3), (count, 3, 3))
    return FaceTrace(
        v=rng.normal(size=(count, 3)),
        T=rng.normal(size=(count, 3)),
        rotation=R,
        Z=rng.uniform(0.1, 10.0, size=(count, 3)),
    )


def random_gammas(rng: np.random.Generator, count: int) -> np.ndarray:
    """Reflection coefficients per trace; the first rows hit -1, 0 and 1 exactly."""
    gamma = rng.uniform(-1.0, 1.0, size=(count, 3))
    gamma[:3] = np.array([-1.0, 0.0, 1.0])[:, None]
    mixed = max(count // 10, 1)
    gamma[3 : 3 + mixed] = rng.choice([-1.0, 0.0, 1.0], size=(mixed, 3))
    return gamma


def _relative(defect: np.ndarray, *scales: np.ndarray) -> float:
    scale = 1.0 + sum(np.abs(s) for s in scales)
    return float(np.max(np.abs(defect) / scale))


def boundary_identity_defects(
    trace: FaceTrace, gamma: np.ndarray, side: Side
) -> Tuple[float, int]:
    """Outgoing characteristic defect and count of hat-work sign violations."""
    hat = reflected_hat(trace, gamma, side)
    p, q = characteristics(trace.v_local, trace.T_local, trace.Z)
    p_hat, q_hat = characteristics(hat.v_hat, hat.T_hat, trace.Z)
    if side == Side.LOWER:
        defect = _relative(q_hat - q, q)
    else:
        defect = _relative(p_hat - p, p)
    work = np.sum(hat.T_hat * hat.v_hat, axis=-1)
    outward = -work if side == Side.LOWER else work
    violations = int(np.sum(outward > 1e-12 * (1.0 + np.abs(work))))
    return defect, violations


def interface_identity_defect(minus: FaceTrace, plus: FaceTrace) -> float:
    """No-slip, preserved outgoing characteristics and the hat-work identities."""
    hm, hp = interface_hat(minus, plus)
    p_minus, _ = characteristics(minus.v_local, minus.T_local, minus.Z)
    _, q_plus = characteristics(plus.v_local, plus.T_local, plus.Z)
    pm_hat, qm_hat = characteristics(hm.v_hat, hm.T_hat, minus.Z)
    pp_hat, qp_hat = characteristics(hp.v_hat, hp.T_hat, plus.Z)
    work_plus = plus.Z * hp.T_hat * hp.v_hat
    work_minus = -minus.Z * hm.T_hat * hm.v_hat
    return max(
        _relative(pm_hat - p_minus, p_minus),
        _relative(qp_hat - q_plus, q_plus),
        _relative(hm.v_hat - hp.v_hat, hm.v_hat, hp.v_hat),
        _relative(work_plus - (q_plus**2 - pp_hat**2), q_plus**2, pp_hat**2),
        _relative(work_minus - (p_minus**2 - qm_hat**2), p_minus**2, qm_hat**2),
    )


def interface_consistency_defect(minus: FaceTrace, plus_impedance: np.ndarray) -> float:
    """Continuous data across any impedance contrast must come back unchanged."""
    plus = FaceTrace(v=minus.v, T=minus.T, rotation=minus.rotation, Z=plus_impedance)
    hm, hp = interface_hat(minus, plus)
    v, T = minus.v_local, minus.T_local
    Zmin = np.minimum(minus.Z, plus_impedance)
    scale = np.abs(T) / Zmin
    return max(
        _relative(hm.T_hat - T, T, Zmin * v),
        _relative(hm.v_hat - v, v, scale),
        _relative(hp.v_hat - v, v, scale),
    )


def interface_swap_defect(minus: FaceTrace, plus: FaceTrace) -> float:
    """Exchanging the two sides and flipping the normal gives the same physical hats.

    Traces start in the identity frame. The traction on the flipped normal is
    the negated traction, so the hat traction flips sign and the hat
    velocities trade places.
    """
    hm, hp = interface_hat(minus, plus)
    R = np.broadcast_to(FLIPPED_FRAME, minus.rotation.shape)
    swapped_minus = FaceTrace(v=plus.v, T=-plus.T, rotation=R, Z=plus.Z)
    swapped_plus = FaceTrace(v=minus.v, T=-minus.T, rotation=R, Z=minus.Z)
    sm, sp = interface_hat(swapped_minus, swapped_plus)
    return max(
        _relative(rotate_to_global(R, sm.T_hat) + hm.T_hat, hm.T_hat),
        _relative(rotate_to_global(R, sm.v_hat) - hp.v_hat, hp.v_hat),
        _relative(rotate_to_global(R, sp.v_hat) - hm.v_hat, hm.v_hat),
    )


def check_riemann(draws: int = 10_000) -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst, sign_violations = 0.0, 0
    for side in (Side.LOWER, Side.UPPER):
        defect, violations = boundary_identity_defects(
            random_traces(rng, draws), random_gammas(rng, draws), side
        )
        worst = max(worst, defect)
        sign_violations += violations

    minus, plus = random_traces(rng, draws), random_traces(rng, draws)
    worst = max(worst, interface_identity_defect(minus, plus), interface_swap_defect(minus, plus))
    consistency = interface_consistency_defect(
        minus, rng.uniform(0.1, 10.0, size=(draws, 3))
    )
    passed = worst <= RIEMANN_TOL and consistency <= CONSISTENCY_TOL and sign_violations == 0
    return CheckResult(
        "riemann",
        passed,
        f"{draws} draws per case, max identity defect {worst:.2e}, "
        f"consistency defect {consistency:.2e}, {sign_violations} hat-work sign violations",
    )


def curved_geometry(degree: int, amplitude: float = 0.08):
    sbp = build_sbp(build_quadrature("GLL", degree))
    surface = sinusoidal_surface(amplitude, 1.0)
    return sbp, build_mapping((0.0, 1.0, 0.0, 1.0, 0.0, 1.0), sbp, top_surface=surface)


def check_antisymmetry() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for degree in range(2, 7):
        sbp, geo = curved_geometry(degree)
        n = sbp.size
        Q = rng.normal(size=(n, n, n, 9))
        w = quadrature_weights_3d(sbp)[..., None]
        for xi in range(3):
            DQ = apply_derivative_3d(Q, xi, sbp, trailing=1)
            lhs = np.sum(w * Q * ncp_flux(DQ[..., :3], geo.metric, xi))
            rhs = np.sum(w * DQ * conservative_flux(Q, geo.metric, xi))
            scale = np.sum(w * np.abs(Q)) * np.max(np.abs(DQ)) + 1.0
            worst = max(worst, abs(lhs - rhs) / scale)
    return CheckResult("antisymmetry", worst <= ANTISYMMETRY_TOL, f"max relative defect {worst:.2e} for P=2..6")


def check_free_stream() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for degree in (3, 4, 5):
        mesh = build_box_mesh(
            (3, 3, 3), degree=degree, topography=sinusoidal_surface(0.05, 1.0)
        )
        op = SpatialOperator(mesh)
        Q = np.broadcast_to(rng.normal(size=9), (mesh.num_elements,) + (degree + 1,) * 3 + (9,)).copy()
        bracket = op.volume_bracket(Q) + op.flux_bracket(Q, boundaries=False)
        scale = np.max(np.abs(mesh.geometry.metric)) * np.max(np.abs(Q))
        worst = max(worst, float(np.max(np.abs(bracket))) / scale)
    return CheckResult(
        "free_stream", worst <= FREE_STREAM_TOL, f"max relative bracket {worst:.2e} for P=3..5"
    )


def gaussian_pulse(coords: np.ndarray, center, width: float) -> np.ndarray:
    """Smooth velocity pulse polarized along (1, 1, 0)."""
    r2 = np.sum((coords - np.asarray(center)) ** 2, axis=-1)
    Q = np.zeros(coords.shape[:-1] + (9,))
    Q[..., 0] = Q[..., 1] = np.exp(-r2 / width**2)
    return Q


def two_layer_medium(point: np.ndarray):
    """Unit medium above y = 0.5, a stiffer and denser one below."""
    return UNIT_MEDIUM if point[1] >= 0.5 else STIFF_MEDIUM


def energy_mesh(setup: str, degree: int = 3) -> Mesh:
    """Curved 2x2x2 two-layer mesh with one of the named boundary setups."""
    return build_box_mesh(
        (2, 2, 2),
        degree=degree,
        material=two_layer_medium,
        boundaries=ENERGY_SETUPS[setup],
        topography=sinusoidal_surface(0.04, 1.0),
    )


def energy_history(
    mesh: Mesh,
    steps: int,
    cfl: float = 0.9,
    center=(0.5, 0.5, 0.5),
    width: float = 0.2,
) -> EnergyTrace:
    """Energy after every step of a source-free Gaussian pulse."""
    Q0 = gaussian_pulse(mesh.geometry.node_coords, center, width)
    integrator = AderIntegrator(SpatialOperator(mesh), cfl_timestep(mesh, cfl=cfl), Q0=Q0)
    trace = EnergyTrace()
    trace.append(0.0, discrete_energy(Q0, mesh))
    for _ in range(steps):
        integrator.step()
        trace.append(integrator.t, discrete_energy(integrator.Q, mesh))
    return trace


def check_energy(steps: int = 1000) -> CheckResult:
    passed = True
    details = []
    for setup in ENERGY_SETUPS:
        mesh = energy_mesh(setup)
        trace = energy_history(mesh, steps)
        ok = energy_monotone(trace, ENERGY_TOL)
        if setup == "absorbing":
            ok = ok and trace.energies[-1] < trace.energies[0]
        passed = passed and ok
        details.append(
            f"{setup} E {trace.energies[0]:.3e} -> {trace.energies[-1]:.3e}"
            f" (max growth {trace.max_increase():.1e})"
        )

    mesh = energy_mesh("mixed_interface")
    Q0 = gaussian_pulse(mesh.geometry.node_coords, (0.5, 0.5, 0.5), 0.2)
    budget = SpatialOperator(mesh).energy_rate_budget(Q0)
    relative = abs(budget.residual) / max(abs(budget.dissipation), discrete_energy(Q0, mesh))
    passed = passed and relative <= 1e-10 and budget.dissipation <= 0.0
    details.append(f"rate identity defect {relative:.2e}")
    return CheckResult("energy", passed, f"{steps} steps; " + "; ".join(details))


CHECKS: Dict[str, VerifyCheck] = {
    "sbp": VerifyCheck("sbp", "SBP identity for GLL and GL, P=1..8", check_sbp),
    "riemann": VerifyCheck("riemann", "Hat-variable identities on random data", check_riemann),
    "antisymmetry": VerifyCheck("antisymmetry", "Discrete anti-symmetric split", check_antisymmetry),
    "free_stream": VerifyCheck("free_stream", "Constant states on a curved mesh", check_free_stream),
    "energy": VerifyCheck(
        "energy", "Energy decay with free, absorbing and mixed boundaries", check_energy
    ),
}
