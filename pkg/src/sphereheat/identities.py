"""Quadrature right-hand sides of the Jacobi integral representations, and a grid verifier.

Each ``rhs_*`` function evaluates the integral side of one identity with an
explicit node count; :func:`verify_grid` compares it with direct polynomial
evaluation over a parameter grid and returns one :class:`IdentityReport`
per point.

Every right-hand side takes ``prefactor_scale`` which multiplies its Gamma
prefactor.  It exists only for self-tests: a scale of 2 must make every
check fail, otherwise the tolerances are vacuous.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from ._common import ParameterError, SphereHeatError, gamma_ratio, worker_count
from .hypergeom import TerminatingF21, f21_terminating
from .orthopoly import (
    cd_closed_form,
    cd_partial_sum,
    gegenbauer_eval,
    jacobi_eval,
    legendre_eval,
)
from .quadrature import (
    gauss_chebyshev_rule,
    gauss_jacobi_rule,
    integrate_half,
    mehler_map,
    oscillation_nodes,
)

__all__ = [
    "IdentityId",
    "IdentityReport",
    "rhs_dirichlet_mehler",
    "rhs_prop22",
    "rhs_lemma24",
    "rhs_eq_ii",
    "rhs_theorem25",
    "rhs_dk_eq11",
    "rhs_dk_product",
    "rhs_cd_lemma21",
    "lhs_value",
    "half_weight_integral",
    "verify_grid",
    "default_grid",
    "reports_to_json",
    "reports_to_csv",
    "sine_operator_fd",
    "partial_cosine_sum",
    "partial_cosine_sum_closed",
    "derivative_transfer_fd",
    "derivative_transfer_sides",
]

FLOOR_SCALE = 1e-30


class IdentityId(str, Enum):
    DIRICHLET_MEHLER = "dirichlet_mehler"
    PROP22 = "prop22"
    LEMMA24 = "lemma24"
    EQ_II = "eq_ii"
    THEOREM25 = "theorem25"
    DK_EQ11 = "dk_eq11"
    DK_PRODUCT = "dk_product"
    CD_LEMMA21 = "cd_lemma21"


@dataclass
class IdentityReport:
    identity: IdentityId
    params: dict = field(default_factory=dict)
    lhs: float = math.nan
    rhs: float = math.nan
    abs_err: float = math.nan
    rel_err: float = math.nan
    nodes: int = 0
    pass_: bool = False

    @classmethod
    def compare(cls, identity, params, lhs, rhs, nodes, tol_abs, tol_rel):
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(abs(lhs), FLOOR_SCALE)
        ok = bool(abs_err <= tol_abs or rel_err <= tol_rel)
        return cls(IdentityId(identity), dict(params), float(lhs), float(rhs), abs_err, rel_err, int(nodes), ok)

    def as_dict(self) -> dict:
        """Field names exactly as serialised (``pass`` is a keyword in Python)."""

        def num(v):
            return v if math.isfinite(v) else None

        return {
            "identity": self.identity.value,
            "params": dict(self.params),
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "abs_err": num(self.abs_err),
            "rel_err": num(self.rel_err),
            "nodes": self.nodes,
            "pass": self.pass_,
        }


def _check_theta(theta):
    if not 0.0 < theta < 0.5 * math.pi:
        raise ParameterError(f"theta must lie in (0, pi/2), got {theta}")


def _check_t(t, name="t"):
    if not 0.0 <= t <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {t}")


def _check_half(alpha, beta):
    if not (alpha > -0.5 and beta > -0.5):
        raise ParameterError(f"alpha and beta must exceed -1/2, got ({alpha}, {beta})")


def half_weight_integral(a: float) -> float:
    """Integral of (1 - v^2)^(a - 1/2) over [0, 1] = sqrt(pi) Gamma(a+1/2) / (2 Gamma(a+1))."""
    return 0.5 * math.sqrt(math.pi) * gamma_ratio([a + 0.5], [a + 1.0])


def rhs_dirichlet_mehler(ell: int, theta: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """(2/pi) int_theta^{pi/2} sin((2l+1)u) / sqrt(cos^2 theta - cos^2 u) du."""
    _check_theta(theta)
    h = mehler_map(theta, lambda u: np.sin((2 * ell + 1) * u))
    return prefactor_scale * (2.0 / math.pi) * integrate_half(gauss_chebyshev_rule(n_nodes), h)


def rhs_prop22(n: int, ell: int, theta: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """Iterated-sine-derivative representation of P_l^(n,0)(cos 2 theta).

    The operator (-d/(sin u du))^n applied to sin((2l+n+1)u)/sin u is replaced
    by its closed form 2^n n! C_{2l}^(n+1)(cos u); the 2^n cancels the
    prefactor's 2^-n.
    """
    _check_theta(theta)
    const = (2.0 / math.pi) * gamma_ratio([ell + 1, n + 1], [ell + n + 1])
    h = mehler_map(theta, lambda u: np.sin(u) * gegenbauer_eval(2 * ell, n + 1, np.cos(u)))
    return prefactor_scale * const * integrate_half(gauss_chebyshev_rule(n_nodes), h)


def rhs_lemma24(n: int, ell: int, t: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """(2 l! n! / (pi (l+n)!)) int_0^1 C_{2l}^(n+1)(t v) (1 - v^2)^(-1/2) dv."""
    _check_t(t)
    const = (2.0 / math.pi) * gamma_ratio([ell + 1, n + 1], [ell + n + 1])
    integral = integrate_half(gauss_chebyshev_rule(n_nodes), lambda v: gegenbauer_eval(2 * ell, n + 1, t * v))
    return prefactor_scale * const * integral


def eq_ii_constant(n: int, m: int, ell: int) -> float:
    """2^(2m+1) (l+m)! m! (n+m)! / (pi (2m)! (l+n+m)!)."""
    return 2.0 ** (2 * m + 1) / math.pi * gamma_ratio([ell + m + 1, m + 1, n + m + 1], [2 * m + 1, ell + n + m + 1])


def rhs_eq_ii(n: int, m: int, ell: int, t: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """d_{n,m}(l) int_0^1 (1 - v^2)^(m - 1/2) C_{2l}^(n+m+1)(v t) dv, for n >= m."""
    if m > n:
        raise ParameterError(f"need m <= n, got m={m}, n={n}")
    _check_t(t)
    rule = gauss_jacobi_rule(n_nodes, m - 0.5)
    integral = integrate_half(rule, lambda v: gegenbauer_eval(2 * ell, n + m + 1, t * v))
    return prefactor_scale * eq_ii_constant(n, m, ell) * integral


def rhs_theorem25(n: int, m: int, ell: int, theta: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """Hypergeometric-Gegenbauer representation of P_l^(n,m)(cos 2 theta).

    (2 n! (l+m)! / (pi (l+n+m)!)) cos^-m(theta)
        int_theta^{pi/2} sin u / sqrt(cos^2 theta - cos^2 u)
            2F1(-m, m; 1/2; (cos theta - cos u) / (2 cos theta)) C_{2l+m}^(n+1)(cos u) du
    """
    _check_theta(theta)
    ct = math.cos(theta)
    const = (2.0 / math.pi) * gamma_ratio([n + 1, ell + m + 1], [ell + n + m + 1]) / ct**m
    f21 = TerminatingF21(m, m, 0.5)

    def g(u):
        cu = np.cos(u)
        return np.sin(u) * f21_terminating(f21, (ct - cu) / (2 * ct)) * gegenbauer_eval(2 * ell + m, n + 1, cu)

    return prefactor_scale * const * integrate_half(gauss_chebyshev_rule(n_nodes), mehler_map(theta, g))


def dk_eq11_constant(n: int, alpha: float, beta: float) -> float:
    """2 (-1)^n Gamma(a+b+1) Gamma(n+a+1) / (sqrt(pi) Gamma(n+a+b+1) Gamma(a+1/2))."""
    return (
        2.0
        * (-1) ** n
        / math.sqrt(math.pi)
        * gamma_ratio([alpha + beta + 1, n + alpha + 1], [n + alpha + beta + 1, alpha + 0.5])
    )


def rhs_dk_eq11(n: int, alpha: float, beta: float, t: float, n_nodes: int, *, prefactor_scale: float = 1.0) -> float:
    """c int_0^1 C_{2n}^(a+b+1)(t u) (1 - u^2)^(a - 1/2) du; equals P_n^(a,b)(1 - 2t^2)."""
    _check_half(alpha, beta)
    _check_t(t)
    rule = gauss_jacobi_rule(n_nodes, alpha - 0.5)
    integral = integrate_half(rule, lambda u: gegenbauer_eval(2 * n, alpha + beta + 1, t * u))
    return prefactor_scale * dk_eq11_constant(n, alpha, beta) * integral


def dk_product_constant(n: int, alpha: float, beta: float) -> float:
    return gamma_ratio(
        [alpha + beta + 1, n + alpha + 1, n + beta + 1],
        [n + 1, n + alpha + beta + 1, alpha + 0.5, beta + 0.5],
    ) / math.pi


def rhs_dk_product(
    n: int,
    alpha: float,
    beta: float,
    s: float,
    t: float,
    n_u: int,
    n_v: int,
    *,
    prefactor_scale: float = 1.0,
) -> float:
    """Double-integral product formula for P_n^(a,b)(1 - 2t^2) P_n^(a,b)(1 - 2s^2)."""
    _check_half(alpha, beta)
    _check_t(s, "s")
    _check_t(t)
    ru = gauss_jacobi_rule(n_u, alpha - 0.5)
    rv = gauss_jacobi_rule(n_v, beta - 0.5)
    arg = s * t * ru.nodes[:, None] + rv.nodes[None, :] * math.sqrt((1 - t * t) * (1 - s * s))
    values = gegenbauer_eval(2 * n, alpha + beta + 1, arg)
    if not np.all(np.isfinite(values)):
        raise SphereHeatError("non-finite product-formula integrand")
    return prefactor_scale * dk_product_constant(n, alpha, beta) * float(ru.weights @ values @ rv.weights)


def rhs_cd_lemma21(ell: int, alpha: float, beta: float, x: float, *, prefactor_scale: float = 1.0) -> float:
    """Weighted Jacobi partial sum; no quadrature."""
    return prefactor_scale * cd_partial_sum(ell, alpha, beta, x)


# --- grid driver -----------------------------------------------------------

PARAM_ORDER: dict[IdentityId, tuple[str, ...]] = {
    IdentityId.DIRICHLET_MEHLER: ("ell", "theta"),
    IdentityId.PROP22: ("n", "ell", "theta"),
    IdentityId.LEMMA24: ("n", "ell", "t"),
    IdentityId.EQ_II: ("n", "m", "ell", "t"),
    IdentityId.THEOREM25: ("n", "m", "ell", "theta"),
    IdentityId.DK_EQ11: ("n", "alpha", "beta", "t"),
    IdentityId.DK_PRODUCT: ("n", "alpha", "beta", "s", "t"),
    IdentityId.CD_LEMMA21: ("ell", "alpha", "beta", "x"),
}

INTEGER_PARAMS = {"n", "m", "ell"}


def lhs_value(identity: IdentityId, p: Mapping[str, float]) -> float:
    """Direct polynomial evaluation of the identity's left-hand side."""
    identity = IdentityId(identity)
    if identity is IdentityId.DIRICHLET_MEHLER:
        return legendre_eval(p["ell"], math.cos(2 * p["theta"]))
    if identity is IdentityId.PROP22:
        return jacobi_eval(p["ell"], p["n"], 0, math.cos(2 * p["theta"]))
    if identity is IdentityId.LEMMA24:
        return jacobi_eval(p["ell"], p["n"], 0, 2 * p["t"] ** 2 - 1)
    if identity is IdentityId.EQ_II:
        return jacobi_eval(p["ell"], p["n"], p["m"], 2 * p["t"] ** 2 - 1)
    if identity is IdentityId.THEOREM25:
        return jacobi_eval(p["ell"], p["n"], p["m"], math.cos(2 * p["theta"]))
    if identity is IdentityId.DK_EQ11:
        return jacobi_eval(p["n"], p["alpha"], p["beta"], 1 - 2 * p["t"] ** 2)
    if identity is IdentityId.DK_PRODUCT:
        a, b, n = p["alpha"], p["beta"], p["n"]
        return jacobi_eval(n, a, b, 1 - 2 * p["t"] ** 2) * jacobi_eval(n, a, b, 1 - 2 * p["s"] ** 2)
    return cd_closed_form(p["ell"], p["alpha"], p["beta"], p["x"])


def default_node_count(identity: IdentityId, p: Mapping[str, float]) -> int:
    """Oscillation rule max(64, 4 (2l + n + m) + 32); the DK identities use 2n as the frequency."""
    identity = IdentityId(identity)
    if identity is IdentityId.CD_LEMMA21:
        return 0
    if identity in (IdentityId.DK_EQ11, IdentityId.DK_PRODUCT):
        return oscillation_nodes(2 * p["n"])
    return oscillation_nodes(2 * p.get("ell", 0) + p.get("n", 0) + p.get("m", 0))


def rhs_value(identity: IdentityId, p: Mapping[str, float], n_nodes: int, prefactor_scale: float = 1.0) -> float:
    identity = IdentityId(identity)
    k = {"prefactor_scale": prefactor_scale}
    if identity is IdentityId.DIRICHLET_MEHLER:
        return rhs_dirichlet_mehler(p["ell"], p["theta"], n_nodes, **k)
    if identity is IdentityId.PROP22:
        return rhs_prop22(p["n"], p["ell"], p["theta"], n_nodes, **k)
    if identity is IdentityId.LEMMA24:
        return rhs_lemma24(p["n"], p["ell"], p["t"], n_nodes, **k)
    if identity is IdentityId.EQ_II:
        return rhs_eq_ii(p["n"], p["m"], p["ell"], p["t"], n_nodes, **k)
    if identity is IdentityId.THEOREM25:
        return rhs_theorem25(p["n"], p["m"], p["ell"], p["theta"], n_nodes, **k)
    if identity is IdentityId.DK_EQ11:
        return rhs_dk_eq11(p["n"], p["alpha"], p["beta"], p["t"], n_nodes, **k)
    if identity is IdentityId.DK_PRODUCT:
        return rhs_dk_product(p["n"], p["alpha"], p["beta"], p["s"], p["t"], n_nodes, n_nodes, **k)
    return rhs_cd_lemma21(p["ell"], p["alpha"], p["beta"], p["x"], **k)


def _admissible(identity: IdentityId, p: Mapping[str, float]) -> bool:
    # eq_ii is only claimed for n >= m; other combinations are not grid points
    return not (identity is IdentityId.EQ_II and p["m"] > p["n"])


def default_grid(identity: IdentityId) -> dict[str, list]:
    """Parameter grid used by the acceptance suite and by ``verify`` without range flags."""
    identity = IdentityId(identity)
    thetas = [round(0.1 * k, 10) for k in range(1, 16)]
    ts = [k / 14 for k in range(15)]
    grids = {
        IdentityId.DIRICHLET_MEHLER: {"ell": list(range(51)), "theta": thetas},
        IdentityId.PROP22: {"n": list(range(9)), "ell": list(range(21)), "theta": thetas},
        IdentityId.LEMMA24: {"n": list(range(9)), "ell": list(range(21)), "t": ts},
        IdentityId.EQ_II: {"n": list(range(9)), "m": list(range(9)), "ell": list(range(21)), "t": ts},
        IdentityId.THEOREM25: {"n": list(range(9)), "m": list(range(5)), "ell": list(range(21)), "theta": thetas},
        IdentityId.DK_EQ11: {
            "n": list(range(11)),
            "alpha": [-0.25, 0.0, 0.5, 1.5, 3.0],
            "beta": [-0.25, 0.0, 0.5, 1.5, 3.0],
            "t": ts,
        },
        IdentityId.DK_PRODUCT: {
            "n": list(range(7)),
            "alpha": [0.0, 0.5, 1.5],
            "beta": [0.0, 0.5, 1.5],
            "s": [0.0, 0.25, 0.5, 0.75, 1.0],
            "t": [0.0, 0.25, 0.5, 0.75, 1.0],
        },
        IdentityId.CD_LEMMA21: {
            "ell": list(range(26)),
            "alpha": [-0.4, 0.0, 0.5, 2.0],
            "beta": [-0.4, 0.0, 0.5, 2.0],
            "x": [round(-1 + k / 20, 10) for k in range(41)],
        },
    }
    return grids[identity]


def grid_points(identity: IdentityId, grid: Mapping[str, Sequence[float]]) -> list[dict]:
    """Admissible points of ``grid`` in lexicographic parameter order."""
    identity = IdentityId(identity)
    names = PARAM_ORDER[identity]
    missing = [k for k in names if k not in grid]
    extra = [k for k in grid if k not in names]
    if missing or extra:
        raise ParameterError(f"{identity.value} grid needs exactly {names}; missing {missing}, unexpected {extra}")
    axes = []
    for k in names:
        values = sorted(set(int(v) if k in INTEGER_PARAMS else float(v) for v in grid[k]))
        if not values:
            raise ParameterError(f"empty grid axis {k!r}")
        axes.append(values)
    points = [dict(zip(names, combo)) for combo in itertools.product(*axes)]
    return [p for p in points if _admissible(identity, p)]


def verify_grid(
    identity: IdentityId,
    grid: Mapping[str, Sequence[float]] | None = None,
    n_nodes: int | None = None,
    tol_abs: float = 1e-10,
    tol_rel: float = 1e-9,
    *,
    prefactor_scale: float = 1.0,
    threads: int | None = None,
) -> list[IdentityReport]:
    """Compare both sides of an identity at every grid point.

    ``n_nodes=None`` applies :func:`default_node_count` per point.  Points
    whose evaluation raises become failed reports with NaN sides; the grid
    is never aborted.  Reports come back in lexicographic parameter order.
    """
    identity = IdentityId(identity)
    if not (tol_abs > 0 and tol_rel > 0):
        raise ParameterError("tolerances must be positive")
    points = grid_points(identity, default_grid(identity) if grid is None else grid)
    if not points:
        raise ParameterError("grid has no admissible points")

    def run(p):
        nodes = default_node_count(identity, p) if n_nodes is None else int(n_nodes)
        if identity is IdentityId.CD_LEMMA21:
            nodes = 0
        try:
            lhs = lhs_value(identity, p)
            rhs = rhs_value(identity, p, nodes, prefactor_scale)
        except (SphereHeatError, ArithmeticError, ValueError):
            return IdentityReport(identity, dict(p), nodes=nodes)
        return IdentityReport.compare(identity, p, lhs, rhs, nodes, tol_abs, tol_rel)

    if identity is IdentityId.CD_LEMMA21:
        # no quadrature: both sides are cheap recurrences, so batch the x axis
        return _verify_cd_batched(points, run, tol_abs, tol_rel, prefactor_scale)

    workers = worker_count() if threads is None else threads
    if workers <= 1 or len(points) < 64:
        return [run(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, points))


def _verify_cd_batched(points, run_one, tol_abs, tol_rel, prefactor_scale):
    reports = []
    for key, group in itertools.groupby(points, key=lambda p: (p["ell"], p["alpha"], p["beta"])):
        group = list(group)
        ell, alpha, beta = key
        x = np.array([p["x"] for p in group])
        try:
            lhs = np.asarray(cd_closed_form(ell, alpha, beta, x))
            rhs = np.asarray(rhs_cd_lemma21(ell, alpha, beta, x, prefactor_scale=prefactor_scale))
        except (SphereHeatError, ArithmeticError, ValueError):
            # isolate the offending points
            reports.extend(run_one(p) for p in group)
            continue
        reports.extend(
            IdentityReport.compare(IdentityId.CD_LEMMA21, p, float(a), float(b), 0, tol_abs, tol_rel)
            for p, a, b in zip(group, lhs, rhs)
        )
    return reports


# --- serialisation ---------------------------------------------------------

CSV_HEADER = ("identity", "param_string", "lhs", "rhs", "abs_err", "rel_err", "nodes", "pass")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def param_string(params: Mapping[str, float]) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in params.items())


def reports_to_json(reports: Sequence[IdentityReport]) -> str:
    """JSON array of report objects; floats use Python's shortest round-trip repr."""
    return json.dumps([r.as_dict() for r in reports], indent=1, allow_nan=False) + "\n"


def reports_to_csv(reports: Sequence[IdentityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(
            [
                r.identity.value,
                param_string(r.params),
                _fmt(r.lhs),
                _fmt(r.rhs),
                _fmt(r.abs_err),
                _fmt(r.rel_err),
                r.nodes,
                _fmt(r.pass_),
            ]
        )
    return buf.getvalue()


# --- operator identities checked by finite differences ---------------------


def sine_operator_fd(f: Callable[[np.ndarray], np.ndarray], n: int, u, h: float, levels: int = 4):
    """(-1/sin u d/du)^n f at ``u`` by nested central differences with Richardson extrapolation.

    Round-off grows like eps / (2h)^n, so ``h`` must not be tiny; for an
    integrand oscillating like sin(k u), h = 0.2 / k keeps both error
    sources near 1e-5 up to n = 4.  The stencil reaches n*h from ``u``.

    The full n-fold stencil is rebuilt at steps h, h/2, h/4, ... and the
    even-power error terms are eliminated level by level.
    """
    u = np.asarray(u, dtype=float)

    def nested(k, x, step):
        if k == 0:
            return f(x)
        return -(nested(k - 1, x + step, step) - nested(k - 1, x - step, step)) / (2 * step * np.sin(x))

    table = [nested(n, u, h / 2**j) for j in range(levels)]
    for order in range(1, levels):
        factor = 4.0**order
        table = [(factor * table[j + 1] - table[j]) / (factor - 1) for j in range(len(table) - 1)]
    return table[0]


def partial_cosine_sum(ell: int, z: float, u):
    """sum_{k=0}^{l} cos((2k + z) u)."""
    u = np.asarray(u, dtype=float)
    k = np.arange(ell + 1).reshape((-1,) + (1,) * u.ndim)
    return np.cos((2 * k + z) * u).sum(axis=0)


def partial_cosine_sum_closed(ell: int, z: float, u):
    """(1/2) [sin((2l+z+1)u) - sin((z-1)u)] / sin u.

    From sin((l+1)u) cos((l+z)u) / sin u.  A plus sign on the sin((z-1)u)
    term is off by sin((z-1)u)/sin u; that term is a polynomial of degree
    z-2 in cos u and is annihilated by the operator it later meets, so the
    downstream integral representations do not depend on the sign.
    """
    u = np.asarray(u, dtype=float)
    return 0.5 * (np.sin((2 * ell + z + 1) * u) - np.sin((z - 1) * u)) / np.sin(u)


def derivative_transfer_fd(ell: int, n: int, m: int, t: float, h: float = 1e-3, levels: int = 3) -> float:
    """2^m (l+n)! / (l+n+m)! (d/(4t dt))^m P_{l+m}^(n-m,0)(2t^2 - 1), with the t-derivatives by finite differences."""
    if m > n:
        raise ParameterError(f"need m <= n, got m={m}, n={n}")

    def f(tt):
        return jacobi_eval(ell + m, n - m, 0, np.clip(2 * tt * tt - 1, -1, 1))

    def nested(k, x, step):
        if k == 0:
            return f(x)
        return (nested(k - 1, x + step, step) - nested(k - 1, x - step, step)) / (2 * step * 4 * x)

    table = [nested(m, np.float64(t), h / 2**j) for j in range(levels)]
    for order in range(1, levels):
        factor = 4.0**order
        table = [(factor * table[j + 1] - table[j]) / (factor - 1) for j in range(len(table) - 1)]
    return 2.0**m * gamma_ratio([ell + n + 1], [ell + n + m + 1]) * float(table[0])


def derivative_transfer_sides(ell: int, lam: float, a: float, t: float, n_nodes: int = 128) -> tuple[float, float]:
    """Both sides of the integrated derivative-transfer identity for (1 - v^2)^a.

    int_0^1 (1-v^2)^a d/(4t dt) C_{2l}^(lam)(t v) dv
        = lam (lam+1) / (2 (a+1)) int_0^1 (1-v^2)^(a+1) C_{2l-2}^(lam+2)(t v) dv

    The t-derivative is taken analytically, v 2 lam C_{2l-1}^(lam+1)(t v) / (4 t).
    Requires a != -1 (the factor 1/(a+1)).
    """
    if a == -1 or ell < 1 or t <= 0:
        raise ParameterError("need a != -1, l >= 1 and t > 0")
    left = integrate_half(
        gauss_jacobi_rule(n_nodes, a),
        lambda v: v * 2 * lam * gegenbauer_eval(2 * ell - 1, lam + 1, t * v) / (4 * t),
    )
    right = lam * (lam + 1) / (2 * (a + 1)) * integrate_half(
        gauss_jacobi_rule(n_nodes, a + 1), lambda v: gegenbauer_eval(2 * ell - 2, lam + 2, t * v)
    )
    return float(left), float(right)

