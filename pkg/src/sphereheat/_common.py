"""Shared errors, argument checks and Gamma-ratio helpers."""

from __future__ import annotations

import math
import os
from typing import Iterable

import numpy as np
from scipy.special import gammaln, gammasgn

#: points this far outside [-1, 1] are treated as round-off and clamped
CLAMP_TOL = 1e-12


class SphereHeatError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SphereHeatError, ValueError):
    """A polynomial or rule parameter lies outside its admissible range."""


class DomainError(SphereHeatError, ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(SphereHeatError, RuntimeError):
    """An iterative refinement did not reach its tolerance."""


class NonFiniteError(SphereHeatError, ValueError):
    """An integrand produced NaN or infinity at a quadrature node."""


class TruncationError(SphereHeatError, RuntimeError):
    """A spectral sum would need more terms than the configured budget."""


def check_unit_interval(x):
    """Return ``x`` as float(s) clamped to [-1, 1].

    Excursions up to ``CLAMP_TOL`` are clamped; anything larger raises
    :class:`DomainError`.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("argument must be finite")
    if np.any(np.abs(arr) > 1.0 + CLAMP_TOL):
        raise DomainError(f"argument outside [-1, 1]: max |x| = {np.max(np.abs(arr))!r}")
    return np.clip(arr, -1.0, 1.0)


def check_degree(n, name="degree"):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ParameterError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def gamma_ratio(num: Iterable[float], den: Iterable[float] = ()) -> float:
    """prod Gamma(num) / prod Gamma(den), evaluated in log space with sign tracking."""
    log = 0.0
    sign = 1.0
    for a in num:
        log += gammaln(a)
        sign *= gammasgn(a)
    for b in den:
        log -= gammaln(b)
        sign *= gammasgn(b)
    return float(sign * math.exp(log))


def as_output(values, like):
    """Return a Python float for scalar input, ndarray otherwise."""
    if np.ndim(like) == 0:
        return float(values)
    return values


def worker_count() -> int:
    """Thread cap from SPHEREHEAT_THREADS, defaulting to the CPU count."""
    raw = os.environ.get("SPHEREHEAT_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ParameterError(f"SPHEREHEAT_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1
