"""Gauss quadrature rules and nodal Lagrange bases on the unit interval."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ..exceptions import ConfigurationError

logger = logging.getLogger("elastodg")

MAX_DEGREE = 15
NEWTON_TOL = 1e-15
NEWTON_MAX_ITER = 100


class NodeKind(str, Enum):
    """Supported quadrature node families. GLR is not supported."""

    GLL = "GLL"
    GL = "GL"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Quadrature rule on [0, 1] with strictly increasing nodes."""

    kind: NodeKind
    degree: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.degree + 1

    @property
    def exactness(self) -> int:
        """Highest polynomial degree integrated exactly."""
        if self.kind is NodeKind.GLL:
            return 2 * self.degree - 1
        return 2 * self.degree + 1

    @property
    def barycentric_weights(self) -> np.ndarray:
        x = self.nodes
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        return 1.0 / np.prod(diff, axis=1)


def legendre_with_derivatives(
    degree: int, x: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate P_N, P_N' and P_N'' on [-1, 1] by three-term recurrences."""
    x = np.asarray(x, dtype=np.float64)
    p_prev, p = np.ones_like(x), x.copy()
    dp_prev, dp = np.zeros_like(x), np.ones_like(x)
    ddp_prev, ddp = np.zeros_like(x), np.zeros_like(x)
    if degree == 0:
        return p_prev, dp_prev, ddp_prev
    for k in range(1, degree):
        p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        dp_next = dp_prev + (2 * k + 1) * p
        ddp_next = ddp_prev + (2 * k + 1) * dp
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        ddp_prev, ddp = ddp, ddp_next
    return p, dp, ddp


def _newton(f, x0: np.ndarray) -> np.ndarray:
    x = x0.copy()
    for _ in range(NEWTON_MAX_ITER):
        value, slope = f(x)
        dx = value / slope
        x -= dx
        if np.max(np.abs(dx)) < NEWTON_TOL:
            break
    return x


def _gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1)
    guess = np.cos(np.pi * (k - 0.25) / (n + 0.5))

    def f(x):
        p, dp, _ = legendre_with_derivatives(n, x)
        return p, dp

    x = _newton(f, guess)
    _, dp, _ = legendre_with_derivatives(n, x)
    w = 2.0 / ((1.0 - x**2) * dp**2)
    return x, w


def _gauss_lobatto(n: int) -> Tuple[np.ndarray, np.ndarray]:
    degree = n - 1
    interior = np.array([], dtype=np.float64)
    if degree > 1:
        k = np.arange(1, degree)
        guess = np.cos(np.pi * k / degree)

        def f(x):
            _, dp, ddp = legendre_with_derivatives(degree, x)
            return dp, ddp

        interior = _newton(f, guess)
    x = np.concatenate(([1.0], interior, [-1.0]))
    p, _, _ = legendre_with_derivatives(degree, x)
    w = 2.0 / (degree * (degree + 1) * p**2)
    return x, w


def build_quadrature(kind, degree: int) -> QuadratureRule:
    """Build a GLL or GL rule with degree+1 nodes mapped to [0, 1].

    Args:
        kind: "GLL" or "GL" (or a NodeKind)
        degree: Polynomial degree P, 1 <= P <= 15

    Returns:
        QuadratureRule: nodes ascending, weights summing to one
    """
    try:
        kind = NodeKind(kind)
    except ValueError:
        raise ConfigurationError(
            f"Unsupported node kind {kind!r}; expected one of GLL, GL"
        )
    if not 1 <= degree <= MAX_DEGREE:
        raise ConfigurationError(
            f"Unsupported polynomial degree {degree}; expected 1 <= P <= {MAX_DEGREE}"
        )

    if kind is NodeKind.GLL:
        x, w = _gauss_lobatto(degree + 1)
    else:
        x, w = _gauss_legendre(degree + 1)

    order = np.argsort(x)
    x, w = x[order], w[order]
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    if kind is NodeKind.GLL:
        nodes[0], nodes[-1] = 0.0, 1.0
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(kind=kind, degree=degree, nodes=nodes, weights=weights)


def lagrange_basis(rule: QuadratureRule, x) -> np.ndarray:
    """Evaluate all nodal Lagrange polynomials at points x.

    Returns an array of shape x.shape + (P+1,). Points that coincide with a node
    give the exact cardinal vector.
    """
    x = np.asarray(x, dtype=np.float64)
    nodes = rule.nodes
    bw = rule.barycentric_weights
    diff = x[..., None] - nodes
    exact = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = bw / diff
        values = terms / np.sum(terms, axis=-1, keepdims=True)
    hit = np.any(exact, axis=-1)
    if np.any(hit):
        values = np.where(hit[..., None], exact.astype(np.float64), values)
    return values


def lagrange_basis_derivative(rule: QuadratureRule, x, derivative: np.ndarray):
    """Evaluate L_j'(x) for all j, given the nodal derivative matrix.

    L_j' has degree P - 1, so it is reproduced exactly by its nodal interpolant.
    """
    return lagrange_basis(rule, x) @ derivative
