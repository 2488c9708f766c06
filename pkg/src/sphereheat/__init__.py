"""Jacobi integral representations and the magnetic heat kernel on the sphere."""

from ._common import (
    ConvergenceError,
    DomainError,
    NonFiniteError,
    ParameterError,
    SphereHeatError,
    TruncationError,
)
from .heatkernel import HeatConfig, SpherePoint, distance, heat_integral, heat_series, kernel_K, truncation_order
from .hypergeom import TerminatingF21, f21_terminating
from .identities import IdentityId, IdentityReport, verify_grid
from .orthopoly import GegenbauerIndex, JacobiIndex, gegenbauer_eval, jacobi_eval, legendre_eval
from .quadrature import QuadratureRule, gauss_jacobi_rule

__version__ = "0.1.0"

__all__ = [
    "SphereHeatError",
    "ParameterError",
    "DomainError",
    "ConvergenceError",
    "NonFiniteError",
    "TruncationError",
    "JacobiIndex",
    "GegenbauerIndex",
    "jacobi_eval",
    "gegenbauer_eval",
    "legendre_eval",
    "TerminatingF21",
    "f21_terminating",
    "QuadratureRule",
    "gauss_jacobi_rule",
    "IdentityId",
    "IdentityReport",
    "verify_grid",
    "HeatConfig",
    "SpherePoint",
    "distance",
    "kernel_K",
    "heat_series",
    "heat_integral",
    "truncation_order",
]
