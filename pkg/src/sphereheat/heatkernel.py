"""Heat kernel of the magnetic Laplacian on the Riemann sphere.

The operator with magnetic strength nu (monopole charge 2 nu) has
eigenvalues nu + l(l + 2nu + 1) of multiplicity 2l + 2nu + 1.  The heat
kernel is evaluated two ways: as the spectral series over reproducing
kernels and as a single theta-function integral over [d, pi/2], where d is
the half geodesic angle between the two points.

Sign conventions: the heat equation is d/dt E + Delta_nu E = 0, so every
term carries exp(-lambda t), including the overall exp(-nu t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from ._common import DomainError, NonFiniteError, ParameterError, TruncationError
from .hypergeom import TerminatingF21, f21_terminating
from .orthopoly import jacobi_all
from .quadrature import gauss_chebyshev_rule, gauss_legendre_rule, integrate_half, mehler_map, oscillation_nodes

__all__ = [
    "SpherePoint",
    "HeatConfig",
    "SpectralLevel",
    "eigenvalue",
    "degeneracy",
    "spectral_levels",
    "distance",
    "kernel_K",
    "heat_series",
    "heat_integral",
    "theta2nu",
    "theta2nu_du",
    "truncation_order",
    "sphere_integrate",
    "heat_series_grid",
    "MIN_TIME",
]

#: below this the series needs ~t^-1/2 terms and the integrand oscillates too fast; refuse
MIN_TIME = 1e-3

#: d closer than this to pi/2 makes the cos^-2nu(d) prefactor and the interval degenerate
DEGENERATE_GAP = 1e-9


@dataclass(frozen=True)
class SpherePoint:
    """Stereographic coordinate z, or the point at infinity."""

    coordinate: complex | None = None
    at_infinity: bool = False

    def __post_init__(self):
        if (self.coordinate is None) == (not self.at_infinity):
            raise ParameterError("a SpherePoint is either finite or at infinity, not both or neither")
        if self.coordinate is not None:
            z = complex(self.coordinate)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ParameterError("finite coordinate must be finite")
            object.__setattr__(self, "coordinate", z)

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None, True)


def _point(p) -> SpherePoint:
    return p if isinstance(p, SpherePoint) else SpherePoint(complex(p))


@dataclass(frozen=True)
class HeatConfig:
    """Magnetic strength, time and spectral truncation policy.

    ``paper_sign=True`` flips the overall factor to exp(+nu t), a
    sign-inconsistent variant kept for comparison.
    """

    nu: int
    time: float
    epsilon: float = 1e-12
    max_terms: int = 100_000
    paper_sign: bool = False

    def __post_init__(self):
        if isinstance(self.nu, bool) or int(self.nu) != self.nu or self.nu < 0:
            raise ParameterError(f"nu must be a nonnegative integer, got {self.nu!r}")
        if not self.time > 0:
            raise ParameterError(f"time must be positive, got {self.time}")
        if not self.epsilon > 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.max_terms) < 1:
            raise ParameterError("max_terms must be positive")

    @property
    def overall_factor(self) -> float:
        return math.exp((1 if self.paper_sign else -1) * self.nu * self.time)


@dataclass(frozen=True)
class SpectralLevel:
    level: int
    eigenvalue: float
    degeneracy: int


def eigenvalue(nu: int, m: int) -> float:
    return float(nu + m * (m + 2 * nu + 1))


def degeneracy(nu: int, ell: int) -> int:
    return 2 * ell + 2 * nu + 1


def spectral_levels(nu: int, count: int) -> list[SpectralLevel]:
    return [SpectralLevel(m, eigenvalue(nu, m), degeneracy(nu, m)) for m in range(count)]


def _cos_distance(z: SpherePoint, w: SpherePoint) -> float:
    if z.at_infinity and w.at_infinity:
        return 1.0
    if z.at_infinity or w.at_infinity:
        c = (w if z.at_infinity else z).coordinate
        return abs(c) / math.sqrt(1 + abs(c) ** 2)
    zc, wc = z.coordinate, w.coordinate
    value = abs(1 + zc * wc.conjugate()) / math.sqrt((1 + abs(zc) ** 2) * (1 + abs(wc) ** 2))
    return min(value, 1.0)


def distance(z, w) -> float:
    """Half geodesic angle d(z, w) in [0, pi/2].

    cos d = |1 + z conj(w)| / sqrt((1 + |z|^2)(1 + |w|^2)), with the limit
    cos d(z, inf) = |z| / sqrt(1 + |z|^2).
    """
    return math.acos(_cos_distance(_point(z), _point(w)))


def _phase_factor(nu: int, z: SpherePoint, w: SpherePoint) -> complex:
    """(1 + z conj w)^(2nu) / ((1+|z|^2)^nu (1+|w|^2)^nu), by repeated multiplication."""
    if z.at_infinity or w.at_infinity:
        raise DomainError("the kernel phase is chart dependent at infinity; use finite points")
    zc, wc = z.coordinate, w.coordinate
    base = (1 + zc * wc.conjugate()) / math.sqrt((1 + abs(zc) ** 2) * (1 + abs(wc) ** 2))
    out = 1 + 0j
    for _ in range(2 * nu):
        out *= base
    return out


def kernel_K(nu: int, ell: int, z, w) -> complex:
    """Reproducing kernel of the l-th eigenspace.

    (2nu + 2l + 1) (1 + z conj w)^(2nu) / ((1+|z|^2)^nu (1+|w|^2)^nu) P_l^(0,2nu)(cos 2d).
    """
    z, w = _point(z), _point(w)
    phase = _phase_factor(nu, z, w)
    c = _cos_distance(z, w)
    x = 2 * c * c - 1
    return degeneracy(nu, ell) * phase * float(jacobi_all(ell, 0, 2 * nu, x)[ell])


def _log_tail_term(nu: int, t: float, ell: int) -> float:
    # log of (2l+2nu+1) binom(l+2nu, 2nu) exp(-l(l+2nu+1)t); |P_l^(0,2nu)| <= binom(l+2nu, 2nu)
    log_binom = gammaln(ell + 2 * nu + 1) - gammaln(ell + 1) - gammaln(2 * nu + 1)
    return math.log(2 * ell + 2 * nu + 1) + log_binom - ell * (ell + 2 * nu + 1) * t


def truncation_order(nu: int, t: float, epsilon: float, max_terms: int = 100_000) -> int:
    """Smallest L >= 1 whose bounded tail sum_{l > L} is below ``epsilon``.

    Terms are generated until they drop below epsilon/100 while shrinking by
    at least half per step, which caps the unsummed remainder.
    """
    if not t > 0 or not epsilon > 0:
        raise ParameterError("t and epsilon must be positive")
    if t < MIN_TIME:
        raise TruncationError(f"t={t} is below the supported minimum {MIN_TIME}; the spectral sum is not truncated")
    terms = []
    ell = 0
    while True:
        if ell > max_terms:
            raise TruncationError(f"more than max_terms={max_terms} spectral terms needed at t={t}")
        term = math.exp(_log_tail_term(nu, t, ell))
        terms.append(term)
        if ell > 0 and term < 1e-2 * epsilon and term < 0.5 * terms[-2]:
            break
        ell += 1
    # the unsummed remainder is at most the last term (geometric with ratio < 1/2)
    tail = terms[-1]
    L = len(terms) - 1
    while L > 0 and tail + terms[L] < epsilon:
        tail += terms[L]
        L -= 1
    if L > max_terms:
        raise TruncationError(f"truncation order {L} exceeds max_terms={max_terms}")
    return max(L, 1)


def _series_sum(cfg: HeatConfig, x: float, L: int) -> float:
    nu, t = cfg.nu, cfg.time
    ell = np.arange(L + 1)
    weights = (2 * ell + 2 * nu + 1) * np.exp(-ell * (ell + 2 * nu + 1) * t)
    values = jacobi_all(L, 0, 2 * nu, x)
    return float(weights @ values)


def heat_series(cfg: HeatConfig, z, w, L: int | None = None) -> complex:
    """Spectral series sum_l exp(-lambda_l t) K_l(z, w), truncated at ``truncation_order``."""
    z, w = _point(z), _point(w)
    if L is None:
        L = truncation_order(cfg.nu, cfg.time, cfg.epsilon, cfg.max_terms)
    c = _cos_distance(z, w)
    phase = _phase_factor(cfg.nu, z, w)
    return cfg.overall_factor * phase * _series_sum(cfg, 2 * c * c - 1, L)


def theta2nu(nu: int, t: float, u, L: int):
    """sum_{l=0}^{L} exp(-l(l+2nu+1)t) cos((2l+2nu+1)u)."""
    if not t > 0:
        raise ParameterError("t must be positive")
    u = np.asarray(u, dtype=float)
    ell = np.arange(L + 1).reshape((-1,) + (1,) * u.ndim)
    out = (np.exp(-ell * (ell + 2 * nu + 1) * t) * np.cos((2 * ell + 2 * nu + 1) * u)).sum(axis=0)
    return float(out) if out.ndim == 0 else out


def theta2nu_du(nu: int, t: float, u, L: int):
    """u-derivative of :func:`theta2nu`: -sum (2l+2nu+1) exp(-l(l+2nu+1)t) sin((2l+2nu+1)u)."""
    if not t > 0:
        raise ParameterError("t must be positive")
    u = np.asarray(u, dtype=float)
    ell = np.arange(L + 1).reshape((-1,) + (1,) * u.ndim)
    k = 2 * ell + 2 * nu + 1
    out = -(k * np.exp(-ell * (ell + 2 * nu + 1) * t) * np.sin(k * u)).sum(axis=0)
    return float(out) if out.ndim == 0 else out


def heat_integral(cfg: HeatConfig, z, w, n_nodes: int | None = None, L: int | None = None) -> complex:
    """Theta-function integral form of the heat kernel.

    2 phase e^(-nu t) / (pi cos^(2nu) d)
        int_d^{pi/2} -theta'(u) / sqrt(cos^2 d - cos^2 u) 2F1(-2nu, 2nu; 1/2; (cos d - cos u)/(2 cos d)) du

    with theta the truncated lacunary series of :func:`theta2nu`.  The minus
    sign on theta' is what makes the integral positive; it follows from
    sin(ku)/sin(u) = C_{k-1}^(1)(cos u).
    """
    z, w = _point(z), _point(w)
    c = _cos_distance(z, w)
    d = math.acos(c)
    if d <= 0 or d >= 0.5 * math.pi - DEGENERATE_GAP:
        raise DomainError(f"distance d={d} is degenerate for the integral form (need 0 < d < pi/2)")
    nu, t = cfg.nu, cfg.time
    if L is None:
        L = truncation_order(nu, t, cfg.epsilon, cfg.max_terms)
    if n_nodes is None:
        # integrand is a polynomial of degree 2L + 4nu in v after the Mehler map
        n_nodes = oscillation_nodes(2 * L + 4 * nu)
    phase = _phase_factor(nu, z, w)
    f21 = TerminatingF21(2 * nu, 2 * nu, 0.5)

    def g(u):
        return -theta2nu_du(nu, t, u, L) * f21_terminating(f21, (c - np.cos(u)) / (2 * c))

    integral = integrate_half(gauss_chebyshev_rule(n_nodes), mehler_map(d, g))
    return cfg.overall_factor * phase * 2.0 / (math.pi * c ** (2 * nu)) * integral


def sphere_integrate(f: Callable[[np.ndarray], np.ndarray], radial_nodes: int = 64, angular_nodes: int = 64) -> complex:
    """Integral of ``f`` over the sphere against dmu = dx dy / (pi (1 + |z|^2)^2).

    With z = tan(chi/2) e^(i phi) the measure is d(cos chi) d(phi) / (4 pi).
    Gauss-Legendre in cos chi, trapezoid in phi.  ``f`` receives a complex
    array of stereographic coordinates (the pole at infinity is never sampled).
    """
    if radial_nodes < 4 or angular_nodes < 4:
        raise ParameterError("need at least 4 nodes in each direction")
    rule = gauss_legendre_rule(radial_nodes)
    cos_chi = rule.nodes
    # tan(chi/2) = sqrt((1 - cos chi) / (1 + cos chi))
    r = np.sqrt((1 - cos_chi) / (1 + cos_chi))
    phi = 2 * np.pi * np.arange(angular_nodes) / angular_nodes
    z = r[:, None] * np.exp(1j * phi[None, :])
    values = np.asarray(f(z), dtype=complex)
    if values.shape != z.shape:
        values = np.broadcast_to(values, z.shape)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("integrand is not finite at every sample")
    total = rule.weights @ values.sum(axis=1)
    return complex(total * (2 * np.pi / angular_nodes) / (4 * np.pi))


def heat_series_grid(cfg: HeatConfig, z0: complex, w: np.ndarray) -> np.ndarray:
    """Vectorised :func:`heat_series` for a fixed first point and an array of finite second points."""
    w = np.asarray(w, dtype=complex)
    L = truncation_order(cfg.nu, cfg.time, cfg.epsilon, cfg.max_terms)
    base = (1 + z0 * np.conj(w)) / np.sqrt((1 + abs(z0) ** 2) * (1 + np.abs(w) ** 2))
    c = np.minimum(np.abs(base), 1.0)
    phase = base ** (2 * cfg.nu) if cfg.nu else np.ones_like(base)
    ell = np.arange(L + 1)
    weights = (2 * ell + 2 * cfg.nu + 1) * np.exp(-ell * (ell + 2 * cfg.nu + 1) * cfg.time)
    values = jacobi_all(L, 0, 2 * cfg.nu, 2 * c * c - 1)
    return cfg.overall_factor * phase * np.tensordot(weights, values, axes=(0, 0))

