"""Gauss rules for the symmetric Jacobi weight (1 - v^2)^a on [-1, 1].

Every integral over [0, 1] in this package has an even integrand, so it is
evaluated as half of the symmetric full-range rule (:func:`integrate_half`).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln

from ._common import ConvergenceError, DomainError, NonFiniteError, ParameterError

__all__ = [
    "QuadratureRule",
    "gauss_chebyshev_rule",
    "gauss_jacobi_rule",
    "gauss_legendre_rule",
    "weight_mass",
    "integrate",
    "integrate_half",
    "mehler_map",
    "oscillation_nodes",
]

NEWTON_TOL = 1e-14
NEWTON_MAXITER = 100


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights integrating against (1 - v^2)^weight_exponent."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponent: float

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ParameterError("nodes and weights must be nonempty 1-d arrays of equal length")
        if np.any(np.diff(nodes) <= 0) or np.any(np.abs(nodes) >= 1):
            raise ParameterError("nodes must be strictly increasing inside (-1, 1)")
        if np.any(weights <= 0):
            raise ParameterError("weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size


def weight_mass(a: float) -> float:
    """Integral of (1 - v^2)^a over [-1, 1], i.e. B(1/2, a + 1)."""
    return math.exp(betaln(0.5, a + 1.0))


def oscillation_nodes(frequency: int) -> int:
    """Default node count max(64, 4 k + 32) for an integrand oscillating like degree k."""
    return max(64, 4 * int(frequency) + 32)


@functools.lru_cache(maxsize=256)
def gauss_chebyshev_rule(n: int) -> QuadratureRule:
    """Closed-form Gauss rule for (1 - v^2)^(-1/2)."""
    if n < 1:
        raise ParameterError("n must be positive")
    k = np.arange(n, 0, -1)
    nodes = np.cos((2 * k - 1) * np.pi / (2 * n))
    # cos is not exactly odd in floating point; symmetrise so folding stays exact
    nodes = 0.5 * (nodes - nodes[::-1])
    return QuadratureRule(nodes, np.full(n, np.pi / n), -0.5)


def _recurrence(n: int, a: float) -> np.ndarray:
    """Monic recurrence coefficients beta_1 .. beta_{n-1} for (1 - v^2)^a."""
    k = np.arange(1, n, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        beta = k * (k + 2 * a) / ((2 * k + 2 * a + 1) * (2 * k + 2 * a - 1))
    if n > 1:
        # general formula is 0/0 at k=1 when a = -1/2
        beta[0] = 1.0 / (2 * a + 3)
    return beta


def _orthonormal_table(x: np.ndarray, sqrt_beta: np.ndarray, n: int):
    """q_0..q_n (orthonormal up to the mass) and q_n' at x."""
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    dq_prev = np.zeros_like(x)
    dq = np.zeros_like(x)
    sumsq = np.zeros_like(x)
    for k in range(n):
        sumsq += q * q
        b_next = sqrt_beta[k]
        b_here = sqrt_beta[k - 1] if k > 0 else 0.0
        q_next = (x * q - b_here * q_prev) / b_next
        dq_next = (q + x * dq - b_here * dq_prev) / b_next
        q_prev, q = q, q_next
        dq_prev, dq = dq, dq_next
    return q, dq, sumsq


@functools.lru_cache(maxsize=256)
def gauss_jacobi_rule(n: int, a: float) -> QuadratureRule:
    """Gauss rule for (1 - v^2)^a by Golub-Welsch with Newton polishing.

    The Jacobi matrix eigenvalues give starting nodes; Newton steps on the
    orthonormal recurrence drive them to 1e-14 and the weights come from
    the Christoffel numbers mass / sum_k q_k(x)^2.
    """
    if n < 1:
        raise ParameterError("n must be positive")
    if not a > -1:
        raise ParameterError(f"weight exponent must exceed -1, got {a}")
    a = float(a)
    mass = weight_mass(a)
    if n == 1:
        return QuadratureRule(np.zeros(1), np.array([mass]), a)
    beta = _recurrence(n + 1, a)
    sqrt_beta = np.sqrt(beta)
    x = eigh_tridiagonal(np.zeros(n), sqrt_beta[: n - 1], eigvals_only=True)
    for _ in range(NEWTON_MAXITER):
        q, dq, _ = _orthonormal_table(x, sqrt_beta, n)
        step = q / dq
        x = x - step
        if np.max(np.abs(step)) < NEWTON_TOL:
            break
    else:
        raise ConvergenceError(f"Gauss-Jacobi nodes (n={n}, a={a}) did not converge")
    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    _, _, sumsq = _orthonormal_table(x, sqrt_beta, n)
    weights = mass / sumsq
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(x, weights, a)


def gauss_legendre_rule(n: int) -> QuadratureRule:
    return gauss_jacobi_rule(n, 0.0)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]):
    """Sum w_i f(v_i); ``f`` is called once on the whole node array."""
    values = np.asarray(f(rule.nodes))
    if values.shape[-1:] != rule.nodes.shape:
        # constant integrands come back as scalars
        values = np.broadcast_to(values[..., None], values.shape + rule.nodes.shape)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("integrand is not finite at every quadrature node")
    return values @ rule.weights


def integrate_half(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]):
    """Integral over [0, 1] against the rule's weight, for even ``f``."""
    return 0.5 * integrate(rule, f)


def mehler_map(theta: float, g: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    """Transform a Dirichlet-Mehler integrand to the Chebyshev weight.

    With u(v) = arccos(v cos theta),

        int_theta^{pi/2} g(u) / sqrt(cos^2 theta - cos^2 u) du
            = int_0^1 h(v) (1 - v^2)^(-1/2) dv,   h(v) = g(u(v)) / sin u(v).

    The returned ``h`` accepts v in [-1, 1]; folding onto [0, 1] is only valid
    when it is even.
    """
    if not 0.0 < theta < 0.5 * np.pi:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    ct = math.cos(theta)

    def h(v):
        c = np.asarray(v, dtype=float) * ct
        s = np.sqrt((1.0 - c) * (1.0 + c))
        # arccos loses digits near |c| = 1; use arcsin of the sine there
        u = np.where(np.abs(c) > 0.7, np.where(c > 0, np.arcsin(s), np.pi - np.arcsin(s)), np.arccos(c))
        return np.asarray(g(u)) / s

    return h
