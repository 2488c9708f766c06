"""Terminating Gauss hypergeometric series 2F1(-m, b; c; x).

These are the reference (oracle) evaluators for the Jacobi and Gegenbauer
families; production evaluation goes through the recurrences in
:mod:`sphereheat.orthopoly`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._common import ParameterError, as_output, check_degree, gamma_ratio

__all__ = [
    "TerminatingF21",
    "pochhammer",
    "f21_terminating",
    "jacobi_from_f21",
    "gegenbauer_from_f21",
]

#: beyond this many terms the alternating sum may lose digits to cancellation
WELL_CONDITIONED_TERMS = 25

#: relative error budget of the float path; entries above it are re-summed exactly
EXACT_FALLBACK_TOL = 1e-14


def pochhammer(x: float, k: int) -> float:
    """Rising factorial x (x+1) ... (x+k-1); 1 for k = 0."""
    k = check_degree(k, "k")
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


@dataclass(frozen=True)
class TerminatingF21:
    """Parameters of 2F1(-m, b; c; x) with m a nonnegative integer."""

    m: int
    b: float
    c: float

    def __post_init__(self):
        check_degree(self.m, "m")
        # (c)_k must stay nonzero for k < m
        c = self.c
        if c <= 0 and float(c).is_integer() and c > -self.m:
            raise ParameterError(f"lower parameter c={c} makes the series divide by zero")

    def __call__(self, x):
        return f21_terminating(self, x)


def _neumaier_sum(terms):
    """Compensated sum along axis 0 of an array of terms."""
    total = np.zeros_like(terms[0])
    comp = np.zeros_like(terms[0])
    for term in terms:
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
    return total + comp


def _f21_exact(m: int, b: float, c: float, x: float) -> float:
    """Exact evaluation over one common integer denominator.

    Floats are dyadic rationals, so with b = B/2^p, c = C/2^q, x = X/2^r the
    ratio of consecutive terms is (k-m)(B + k 2^p) X 2^q / ((C + k 2^q)(k+1) 2^(p+r)).
    Only the final integer division rounds, and it rounds correctly.
    """
    B, pb = b.as_integer_ratio()
    C, qc = c.as_integer_ratio()
    X, rx = x.as_integer_ratio()
    nums = [(k - m) * (B * qc + k * pb * qc) * X for k in range(m)]
    dens = [(C * pb + k * pb * qc) * (k + 1) * rx for k in range(m)]
    # numerator of sum_k prod_{j<k} nums[j]/dens[j] over the denominator prod_j dens[j]
    numerator = 0
    head = 1
    tails = [1] * (m + 1)
    for k in range(m - 1, -1, -1):
        tails[k] = tails[k + 1] * dens[k]
    for k in range(m + 1):
        numerator += head * tails[k]
        if k < m:
            head *= nums[k]
    return numerator / tails[0]


def f21_terminating(p: TerminatingF21, x):
    """Sum_{k=0}^{m} (-m)_k (b)_k / ((c)_k k!) x^k in ascending k, with compensated accumulation.

    The terms of an alternating series can dwarf the result (for m = 25 they
    reach ~1e15 against an O(1) sum).  A running bound on the rounding error
    of the float path is kept; where it exceeds ``EXACT_FALLBACK_TOL`` of the
    result, that entry is re-summed in exact rational arithmetic.
    """
    if p.m > WELL_CONDITIONED_TERMS:
        warnings.warn(
            f"2F1 with m={p.m} > {WELL_CONDITIONED_TERMS}: the float path is ill-conditioned "
            "and falls back to slow exact summation",
            RuntimeWarning,
            stacklevel=2,
        )
    xs = np.asarray(x, dtype=float)
    terms = np.empty((p.m + 1,) + xs.shape)
    term = np.ones_like(xs)
    terms[0] = term
    for k in range(p.m):
        term = term * ((-p.m + k) * (p.b + k) / ((p.c + k) * (k + 1))) * xs
        terms[k + 1] = term
    total = _neumaier_sum(terms)
    # each term carries ~4(k+1) roundings from its running product
    weights = 4.0 * (np.arange(p.m + 1) + 1.0)
    bound = np.finfo(float).eps * np.tensordot(weights, np.abs(terms), axes=(0, 0))
    bad = bound > EXACT_FALLBACK_TOL * np.maximum(np.abs(total), 1.0)
    if np.any(bad):
        total = np.array(total, dtype=float)
        flat_x = xs.reshape(-1)
        flat_total = total.reshape(-1)
        for i in np.flatnonzero(bad.reshape(-1)):
            flat_total[i] = _f21_exact(p.m, p.b, p.c, float(flat_x[i]))
        total = flat_total.reshape(xs.shape)
    return as_output(total, x)


def jacobi_from_f21(ell: int, alpha: float, beta: float, x):
    """P_ell^(alpha, beta)(x) = (alpha+1)_ell / ell! * 2F1(-ell, 1+alpha+beta+ell; alpha+1; (1-x)/2)."""
    ell = check_degree(ell, "ell")
    if not alpha > -1:
        raise ParameterError(f"alpha must exceed -1, got {alpha}")
    scale = 1.0
    for j in range(ell):
        scale *= (alpha + 1 + j) / (j + 1)
    xs = np.asarray(x, dtype=float)
    series = f21_terminating(TerminatingF21(ell, 1 + alpha + beta + ell, alpha + 1), (1 - xs) / 2)
    return as_output(scale * np.asarray(series), x)


def gegenbauer_from_f21(ell: int, lam: float, t):
    """C_{2 ell}^(lam)(t) = (-1)^ell Gamma(lam+ell) / (ell! Gamma(lam)) * 2F1(-ell, ell+lam; 1/2; t^2)."""
    ell = check_degree(ell, "ell")
    if not lam > -0.5 or lam == 0:
        raise ParameterError(f"Gegenbauer parameter must be > -1/2 and nonzero, got {lam}")
    ts = np.asarray(t, dtype=float)
    scale = (-1) ** ell * gamma_ratio([lam + ell], [ell + 1, lam])
    series = f21_terminating(TerminatingF21(ell, ell + lam, 0.5), ts * ts)
    return as_output(scale * np.asarray(series), t)
