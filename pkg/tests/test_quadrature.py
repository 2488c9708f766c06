import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate
from scipy.special import beta as beta_fn

from sphereheat import ConvergenceError, DomainError, NonFiniteError, ParameterError
from sphereheat import quadrature as q
from sphereheat.orthopoly import gegenbauer_eval
from sphereheat.quadrature import (
    QuadratureRule,
    gauss_chebyshev_rule,
    gauss_jacobi_rule,
    gauss_legendre_rule,
    integrate,
    integrate_half,
    mehler_map,
    oscillation_nodes,
    weight_mass,
)


def moment(k, a):
    """int_{-1}^{1} v^k (1 - v^2)^a dv by the Beta identity."""
    if k % 2:
        return 0.0
    return beta_fn((k + 1) / 2, a + 1)


# --- examples --------------------------------------------------------------


def test_chebyshev_single_node():
    r = gauss_chebyshev_rule(1)
    assert r.nodes.tolist() == [0.0]
    assert r.weights[0] == pytest.approx(math.pi, rel=1e-15)
    assert r.weight_exponent == -0.5


def test_chebyshev_moments():
    r = gauss_chebyshev_rule(8)
    assert integrate(r, lambda v: np.ones_like(v)) == pytest.approx(math.pi, rel=1e-14)
    assert integrate(r, lambda v: v * v) == pytest.approx(math.pi / 2, rel=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 33, 128])
def test_jacobi_minus_half_is_chebyshev(n):
    a, b = gauss_jacobi_rule(n, -0.5), gauss_chebyshev_rule(n)
    np.testing.assert_allclose(a.nodes, b.nodes, rtol=0, atol=1e-13)
    np.testing.assert_allclose(a.weights, b.weights, rtol=0, atol=1e-13)


def test_jacobi_examples():
    assert integrate(gauss_jacobi_rule(4, 0.5), lambda v: 1.0) == pytest.approx(math.pi / 2, rel=1e-14)
    r = gauss_jacobi_rule(20, 1.5)
    assert integrate(r, lambda v: v**4) == pytest.approx(beta_fn(2.5, 2.5), rel=1e-13)


def test_integrate_examples():
    for r in (gauss_chebyshev_rule(16), gauss_jacobi_rule(16, 0.3)):
        assert integrate(r, lambda v: np.zeros_like(v)) == 0.0
    assert abs(integrate(gauss_chebyshev_rule(16), lambda v: v)) <= 1e-15


def test_integrate_half_gegenbauer():
    # int_0^1 C_4^(1)(0.3 v) (1-v^2)^(-1/2) dv against scipy's adaptive quad
    got = integrate_half(gauss_chebyshev_rule(64), lambda v: gegenbauer_eval(4, 1.0, 0.3 * v))
    ref, _ = sp_integrate.quad(lambda s: gegenbauer_eval(4, 1.0, 0.3 * math.sin(s)), 0, math.pi / 2, epsabs=1e-14)
    assert got == pytest.approx(ref, rel=1e-13)


def test_mehler_map_examples():
    rule = gauss_chebyshev_rule(64)
    for theta in (0.1, 0.7, 1.3, 1.5):
        assert integrate_half(rule, mehler_map(theta, np.sin)) == pytest.approx(math.pi / 2, rel=1e-14)
    h = mehler_map(math.pi / 3, lambda u: np.sin(u) * np.sin(u) / np.sin(u))
    assert integrate_half(rule, h) == pytest.approx(math.pi / 2, rel=1e-14)


def test_mehler_map_near_right_angle_stays_finite():
    rule = gauss_chebyshev_rule(64)
    for theta in (math.pi / 2 - 1e-6, math.pi / 2 - 1e-9):
        val = integrate_half(rule, mehler_map(theta, lambda u: np.sin(u) * np.cos(3 * u)))
        assert math.isfinite(val)
        # integrand h -> cos(3 pi/2) = 0 on the collapsed interval
        assert abs(val) < 1e-4


def test_mehler_map_matches_adaptive_quadrature():
    theta = 0.4
    g = lambda u: np.sin(5 * u)  # noqa: E731
    got = integrate_half(gauss_chebyshev_rule(128), mehler_map(theta, g))
    ct = math.cos(theta)
    # u = arccos(ct sin s) removes the endpoint singularity for the reference
    ref, _ = sp_integrate.quad(lambda s: math.sin(5 * math.acos(ct * math.sin(s))) / math.sqrt(1 - (ct * math.sin(s)) ** 2), 0, math.pi / 2, epsabs=1e-14)
    assert got == pytest.approx(ref, rel=1e-12)


def test_arcsin_branch_is_continuous():
    theta = 0.05
    ct = math.cos(theta)
    v = np.array([0.7 / ct - 1e-12, 0.7 / ct + 1e-12])
    h = mehler_map(theta, lambda u: u)
    a, b = h(v)
    assert abs(a - b) < 1e-9


# --- errors and validation -------------------------------------------------


def test_errors():
    with pytest.raises(ParameterError):
        gauss_jacobi_rule(0, 0.0)
    with pytest.raises(ParameterError):
        gauss_jacobi_rule(4, -1.0)
    with pytest.raises(ParameterError):
        gauss_chebyshev_rule(0)
    for bad in (0.0, math.pi / 2, -0.1):
        with pytest.raises(DomainError):
            mehler_map(bad, np.sin)
    with pytest.raises(NonFiniteError):
        integrate(gauss_legendre_rule(4), lambda v: np.full_like(v, np.nan))
    with pytest.raises(ParameterError):
        QuadratureRule([0.5, 0.1], [1.0, 1.0], 0.0)
    with pytest.raises(ParameterError):
        QuadratureRule([0.1, 0.5], [1.0, -1.0], 0.0)
    with pytest.raises(ParameterError):
        QuadratureRule([-1.0, 0.5], [1.0, 1.0], 0.0)


def test_newton_failure_raises(monkeypatch):
    monkeypatch.setattr(q, "NEWTON_MAXITER", 0)
    q.gauss_jacobi_rule.cache_clear()
    try:
        with pytest.raises(ConvergenceError):
            q.gauss_jacobi_rule(7, 0.25)
    finally:
        q.gauss_jacobi_rule.cache_clear()


def test_rules_are_immutable():
    r = gauss_jacobi_rule(6, 0.5)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0
    assert len(r) == 6


def test_oscillation_nodes():
    assert oscillation_nodes(0) == 64
    assert oscillation_nodes(8) == 64
    assert oscillation_nodes(100) == 432


# --- invariants ------------------------------------------------------------


@pytest.mark.parametrize("a", [-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.5, 3.5, 7.5])
@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 64, 128])
def test_rule_invariants(n, a):
    _check_rule(n, a)


# near a = -1 the outermost weights reach the float64 floor (~1.5e-12) by n = 200
@pytest.mark.parametrize("a", [-0.75, -0.5, 0.0, 1.5, 7.5])
def test_rule_invariants_large(a):
    _check_rule(200, a)


def _check_rule(n, a):
    r = gauss_jacobi_rule(n, a)
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(np.abs(r.nodes) < 1) and np.all(r.weights > 0)
    assert r.weights.sum() == pytest.approx(weight_mass(a), rel=1e-12)
    # exactness: monomials through degree 2n-1 (relative to the even moment scale)
    for k in range(2 * n):
        got = integrate(r, lambda v: v**k)
        ref = moment(k, a)
        scale = moment(k + (k % 2), a)
        assert abs(got - ref) <= 1e-12 * scale, (k, got, ref)


def test_mass_matches_beta():
    for a in (-0.5, 0.0, 0.5, 2.0):
        assert weight_mass(a) == pytest.approx(beta_fn(0.5, a + 1), rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(-0.95, 6.0), c=st.floats(0.1, 3.0), k=st.integers(0, 6))
def test_half_range_folding(a, c, k):
    f = lambda v: np.cos(c * v) * v ** (2 * k)  # noqa: E731
    got = integrate_half(gauss_jacobi_rule(48, a), f)
    # (1 - v^2)^a = (1 - v)^a (1 + v)^a; the singular factor goes to QUADPACK's algebraic weight
    ref, _ = sp_integrate.quad(lambda v: f(v) * (1 + v) ** a, 0, 1, weight="alg", wvar=(0, a), epsabs=1e-14, epsrel=1e-13)
    assert got == pytest.approx(ref, rel=1e-10, abs=1e-12)
