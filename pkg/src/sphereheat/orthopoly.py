"""Jacobi, Gegenbauer and Legendre polynomials by forward three-term recurrence.

All evaluators accept a scalar or an array of abscissae in [-1, 1] and
return a float or an ndarray of the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ._common import (
    ParameterError,
    as_output,
    check_degree,
    check_unit_interval,
    gamma_ratio,
)

MAX_DEGREE = 10_000

__all__ = [
    "JacobiIndex",
    "GegenbauerIndex",
    "jacobi_eval",
    "jacobi_all",
    "gegenbauer_eval",
    "gegenbauer_all",
    "legendre_eval",
    "gegenbauer_diff_shift",
    "cd_partial_sum",
    "cd_closed_form",
    "jacobi_at_minus_one",
    "gegenbauer_even_at_zero",
]


def _check_jacobi(n, alpha, beta):
    n = check_degree(n)
    if n > MAX_DEGREE:
        raise ParameterError(f"degree {n} exceeds the maximum {MAX_DEGREE}")
    if not (alpha > -1 and beta > -1):
        raise ParameterError(f"Jacobi parameters need alpha, beta > -1, got ({alpha}, {beta})")
    return n


def _check_lambda(lam):
    if not lam > -0.5 or lam == 0:
        raise ParameterError(f"Gegenbauer parameter must be > -1/2 and nonzero, got {lam}")


@dataclass(frozen=True)
class JacobiIndex:
    """Degree and exponent pair of a Jacobi polynomial P_n^(alpha, beta)."""

    degree: int
    alpha: float
    beta: float

    def __post_init__(self):
        _check_jacobi(self.degree, self.alpha, self.beta)

    def __call__(self, x):
        return jacobi_eval(self.degree, self.alpha, self.beta, x)


@dataclass(frozen=True)
class GegenbauerIndex:
    """Degree and parameter of an ultraspherical polynomial C_n^(lam)."""

    degree: int
    lam: float

    def __post_init__(self):
        check_degree(self.degree)
        _check_lambda(self.lam)

    def __call__(self, x):
        return gegenbauer_eval(self.degree, self.lam, x)


def jacobi_all(n: int, alpha: float, beta: float, x) -> np.ndarray:
    """Values P_0, ..., P_n of the Jacobi family at ``x``.

    Returns an array of shape ``(n + 1,) + np.shape(x)``.
    """
    n = _check_jacobi(n, alpha, beta)
    x = check_unit_interval(x)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n == 0:
        return out
    a, b = float(alpha), float(beta)
    # explicit degree-1 formula sidesteps the 0/0 at k=0 when a+b = -1
    out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = (s + 1) * (s + 2) * s
        c4 = 2.0 * (k + a) * (k + b) * (s + 2)
        out[k + 1] = ((c2 + c3 * x) * out[k] - c4 * out[k - 1]) / c1
    return out


def jacobi_eval(n: int, alpha: float, beta: float, x):
    """P_n^(alpha, beta)(x) by forward recurrence in the degree."""
    n = _check_jacobi(n, alpha, beta)
    xs = check_unit_interval(x)
    if n == 0:
        return as_output(np.ones_like(xs), x)
    a, b = float(alpha), float(beta)
    p_prev = np.ones_like(xs)
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * xs
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = (s + 1) * (s + 2) * s
        c4 = 2.0 * (k + a) * (k + b) * (s + 2)
        p_prev, p = p, ((c2 + c3 * xs) * p - c4 * p_prev) / c1
    return as_output(p, x)


def gegenbauer_all(n: int, lam: float, x) -> np.ndarray:
    """Values C_0, ..., C_n of the ultraspherical family at ``x``."""
    n = check_degree(n)
    _check_lambda(lam)
    x = check_unit_interval(x)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n == 0:
        return out
    out[1] = 2.0 * lam * x
    for k in range(1, n):
        out[k + 1] = (2.0 * (k + lam) * x * out[k] - (k + 2.0 * lam - 1.0) * out[k - 1]) / (k + 1)
    return out


def gegenbauer_eval(n: int, lam: float, x):
    """C_n^(lam)(x); C_0 = 1, C_1 = 2 lam x."""
    n = check_degree(n)
    _check_lambda(lam)
    xs = check_unit_interval(x)
    if n == 0:
        return as_output(np.ones_like(xs), x)
    c_prev = np.ones_like(xs)
    c = 2.0 * lam * xs
    for k in range(1, n):
        c_prev, c = c, (2.0 * (k + lam) * xs * c - (k + 2.0 * lam - 1.0) * c_prev) / (k + 1)
    return as_output(c, x)


def legendre_eval(n: int, x):
    """Legendre polynomial P_n(x)."""
    n = check_degree(n)
    xs = check_unit_interval(x)
    if n == 0:
        return as_output(np.ones_like(xs), x)
    p_prev = np.ones_like(xs)
    p = xs.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * xs * p - k * p_prev) / (k + 1)
    return as_output(p, x)


def gegenbauer_diff_shift(n: int, degree: int, lam: float, x):
    """n-th derivative of C_degree^(lam) at ``x``.

    Uses d^n/dx^n C_{l+n}^(lam) = 2^n Gamma(lam+n)/Gamma(lam) C_l^(lam+n).
    """
    n = check_degree(n, "n")
    degree = check_degree(degree)
    _check_lambda(lam)
    if n > degree:
        raise ParameterError(f"derivative order {n} exceeds degree {degree}")
    if n == 0:
        return gegenbauer_eval(degree, lam, x)
    factor = 2.0**n * gamma_ratio([lam + n], [lam])
    return factor * gegenbauer_eval(degree - n, lam + n, x)


def _cd_coefficients(ell, alpha, beta):
    k = np.arange(ell + 1, dtype=float)
    # alpha, beta > -1/2 keeps every Gamma argument positive
    return (2 * k + alpha + beta + 1) * np.exp(gammaln(k + alpha + beta + 1) - gammaln(k + beta + 1))


def _check_cd(alpha, beta):
    if not (alpha > -0.5 and beta > -0.5):
        raise ParameterError(f"the partial-sum identity needs alpha, beta > -1/2, got ({alpha}, {beta})")


def cd_partial_sum(ell: int, alpha: float, beta: float, x):
    """Weighted partial sum of Jacobi polynomials appearing in the Christoffel-Darboux kernel at y = 1.

    sum_{k<=ell} (2k+a+b+1) Gamma(k+a+b+1)/Gamma(k+b+1) P_k^(a,b)(x)
    """
    ell = check_degree(ell, "ell")
    _check_cd(alpha, beta)
    coef = _cd_coefficients(ell, alpha, beta)
    table = jacobi_all(ell, alpha, beta, x)
    total = np.tensordot(coef, table, axes=(0, 0))
    return as_output(total, x)


def cd_closed_form(ell: int, alpha: float, beta: float, x):
    """Gamma(ell+a+b+2)/Gamma(ell+b+1) P_ell^(a+1,b)(x), the closed form of :func:`cd_partial_sum`."""
    ell = check_degree(ell, "ell")
    _check_cd(alpha, beta)
    return gamma_ratio([ell + alpha + beta + 2], [ell + beta + 1]) * jacobi_eval(ell, alpha + 1, beta, x)


def jacobi_at_minus_one(n: int, alpha: float, beta: float) -> float:
    """Closed form P_n^(alpha, beta)(-1) = (-1)^n Gamma(beta+n+1) / (n! Gamma(beta+1))."""
    n = _check_jacobi(n, alpha, beta)
    return (-1) ** n * gamma_ratio([beta + n + 1], [n + 1, beta + 1])


def gegenbauer_even_at_zero(ell: int, lam: float) -> float:
    """Closed form C_{2 ell}^(lam)(0) = (-1)^ell Gamma(lam+ell) / (ell! Gamma(lam))."""
    ell = check_degree(ell, "ell")
    _check_lambda(lam)
    return (-1) ** ell * gamma_ratio([lam + ell], [ell + 1, lam])

