import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphereheat import ParameterError
from sphereheat.identities import (
    IdentityId,
    IdentityReport,
    default_grid,
    derivative_transfer_fd,
    derivative_transfer_sides,
    half_weight_integral,
    partial_cosine_sum,
    partial_cosine_sum_closed,
    reports_to_csv,
    reports_to_json,
    rhs_cd_lemma21,
    rhs_dirichlet_mehler,
    rhs_dk_eq11,
    rhs_dk_product,
    rhs_eq_ii,
    rhs_lemma24,
    rhs_prop22,
    rhs_theorem25,
    sine_operator_fd,
    verify_grid,
)
from sphereheat.identities import grid_points
from sphereheat.orthopoly import gegenbauer_eval, jacobi_eval, legendre_eval

# --- right-hand-side examples ----------------------------------------------


def test_dirichlet_mehler_examples():
    assert rhs_dirichlet_mehler(0, math.pi / 3, 64) == pytest.approx(1.0, rel=1e-14)
    assert abs(rhs_dirichlet_mehler(1, math.pi / 4, 64)) <= 1e-14
    assert rhs_dirichlet_mehler(10, 0.3, 128) == pytest.approx(legendre_eval(10, math.cos(0.6)), rel=1e-12)


def test_prop22_examples():
    for ell in (0, 3, 7):
        for theta in (0.2, 0.9):
            assert rhs_prop22(0, ell, theta, 96) == pytest.approx(rhs_dirichlet_mehler(ell, theta, 96), rel=1e-12, abs=1e-14)
    assert rhs_prop22(3, 0, 0.5, 96) == pytest.approx(1.0, rel=1e-13)
    assert rhs_prop22(2, 4, 0.7, 128) == pytest.approx(jacobi_eval(4, 2, 0, math.cos(1.4)), rel=1e-11)


def test_lemma24_examples():
    for n in range(6):
        for t in (0.0, 0.4, 1.0):
            assert rhs_lemma24(n, 0, t, 64) == pytest.approx(1.0, rel=1e-13)
    assert rhs_lemma24(0, 1, 0.0, 64) == pytest.approx(-1.0, rel=1e-13)
    assert rhs_lemma24(2, 3, 0.6, 128) == pytest.approx(jacobi_eval(3, 2, 0, 2 * 0.36 - 1), rel=1e-11)


def test_eq_ii_examples():
    for t in (0.0, 0.3, 1.0):
        assert rhs_eq_ii(0, 0, 0, t, 64) == pytest.approx(1.0, rel=1e-14)
        assert rhs_eq_ii(2, 1, 0, t, 64) == pytest.approx(1.0, rel=1e-13)
    assert rhs_eq_ii(3, 2, 2, 0.4, 160) == pytest.approx(jacobi_eval(2, 3, 2, 2 * 0.16 - 1), rel=1e-11)
    with pytest.raises(ParameterError):
        rhs_eq_ii(1, 2, 0, 0.5, 64)


def test_theorem25_examples():
    # m = 0 collapses to the lemma24 integral under t = cos(theta)
    for n, ell, theta in [(0, 3, 0.4), (2, 5, 1.1), (4, 2, 0.2)]:
        a = rhs_theorem25(n, 0, ell, theta, 128)
        b = rhs_lemma24(n, ell, math.cos(theta), 128)
        assert a == pytest.approx(b, rel=1e-11, abs=1e-13)
    assert rhs_theorem25(1, 1, 0, 0.8, 96) == pytest.approx(1.0, rel=1e-12)
    assert rhs_theorem25(2, 2, 3, 0.5, 192) == pytest.approx(jacobi_eval(3, 2, 2, math.cos(1.0)), rel=1e-10)


def test_dk_eq11_examples():
    for t in (0.0, 0.5, 1.0):
        assert rhs_dk_eq11(0, 0, 0, t, 64) == pytest.approx(1.0, rel=1e-14)
    # Mehler's form: with t = cos(theta), P_n(1 - 2t^2) = (-1)^n P_n(cos 2theta)
    for n in range(6):
        for theta in (0.3, 0.8, 1.4):
            a = rhs_dk_eq11(n, 0, 0, math.cos(theta), 96)
            b = (-1) ** n * rhs_dirichlet_mehler(n, theta, 96)
            assert a == pytest.approx(b, rel=1e-11, abs=1e-13)
    assert rhs_dk_eq11(4, 1.5, 0.5, 0.3, 160) == pytest.approx(jacobi_eval(4, 1.5, 0.5, 1 - 0.18), rel=1e-11)


def test_dk_product_examples():
    for s, t in [(0.0, 0.0), (0.3, 0.9), (1.0, 1.0)]:
        assert rhs_dk_product(0, 0, 0, s, t, 32, 32) == pytest.approx(1.0, rel=1e-13)
    for t in (0.0, 0.4, 0.8):
        ref = jacobi_eval(1, 0, 0, 1 - 2 * t * t) * jacobi_eval(1, 0, 0, -1.0)
        assert rhs_dk_product(1, 0, 0, 1.0, t, 64, 64) == pytest.approx(ref, rel=1e-12, abs=1e-14)
    ref = jacobi_eval(3, 0.5, 1.5, 1 - 2 * 0.49) * jacobi_eval(3, 0.5, 1.5, 1 - 2 * 0.16)
    assert rhs_dk_product(3, 0.5, 1.5, 0.4, 0.7, 128, 128) == pytest.approx(ref, rel=1e-10)


def test_cd_rhs_examples():
    assert rhs_cd_lemma21(1, 0, 0, 1.0) == pytest.approx(4.0, rel=1e-15)
    assert rhs_cd_lemma21(0, 0, 0, 0.7) == pytest.approx(1.0, rel=1e-15)


def test_half_weight_integral_is_beta_correct():
    assert half_weight_integral(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert half_weight_integral(1.0) == pytest.approx(math.pi / 4, rel=1e-15)
    from scipy.integrate import quad

    for a in (0.25, 2.0, 3.5):
        ref, _ = quad(lambda v: (1 + v) ** (a - 0.5), 0, 1, weight="alg", wvar=(0, a - 0.5), epsabs=1e-15)
        assert half_weight_integral(a) == pytest.approx(ref, rel=1e-12)


def test_domain_checks():
    with pytest.raises(ParameterError):
        rhs_dirichlet_mehler(2, 0.0, 64)
    with pytest.raises(ParameterError):
        rhs_lemma24(1, 2, 1.5, 64)
    with pytest.raises(ParameterError):
        rhs_dk_eq11(2, -0.5, 0.0, 0.3, 64)


# --- reports and grids -----------------------------------------------------


def test_report_fields_and_dual_tolerance():
    r = IdentityReport.compare("lemma24", {"n": 1}, 0.0, 1e-12, 64, 1e-10, 1e-9)
    assert r.abs_err == 1e-12 and r.rel_err == 1e-12 / 1e-30 and r.pass_
    r = IdentityReport.compare("lemma24", {"n": 1}, 2.0, 2.0 + 1e-9, 64, 1e-10, 1e-9)
    assert r.pass_
    r = IdentityReport.compare("lemma24", {"n": 1}, 2.0, 2.1, 64, 1e-10, 1e-9)
    assert not r.pass_
    assert set(r.as_dict()) == {"identity", "params", "lhs", "rhs", "abs_err", "rel_err", "nodes", "pass"}


def test_dirichlet_mehler_verify_example():
    grid = {"ell": list(range(21)), "theta": [round(0.1 * k, 10) for k in range(1, 16)]}
    reports = verify_grid("dirichlet_mehler", grid, 256, 1e-10, 1e-9)
    assert len(reports) == 21 * 15 and all(r.pass_ for r in reports)


def test_cd_verify_example():
    reports = verify_grid("cd_lemma21", tol_abs=1e-300, tol_rel=1e-11)
    nonzero = [r for r in reports if abs(r.lhs) > 1e-8]
    assert all(r.pass_ for r in nonzero)


def test_failures_become_reports():
    reports = verify_grid("lemma24", {"n": [1], "ell": [2], "t": [0.5, 2.0]})
    assert reports[0].pass_
    bad = reports[1]
    assert not bad.pass_ and math.isnan(bad.rhs)


def test_lexicographic_order_and_threads_agree():
    grid = {"n": [2, 0, 1], "m": [1, 0], "ell": [3, 1], "t": [0.5, 0.25]}
    serial = verify_grid("eq_ii", grid, threads=1)
    parallel = verify_grid("eq_ii", grid, threads=4)
    keys = [tuple(r.params.values()) for r in serial]
    assert keys == sorted(keys)
    assert all(r.params["m"] <= r.params["n"] for r in serial)
    assert reports_to_json(serial) == reports_to_json(parallel)


def test_grid_validation():
    with pytest.raises(ParameterError):
        grid_points("lemma24", {"n": [1], "ell": [1]})
    with pytest.raises(ParameterError):
        verify_grid("lemma24", {"n": [1], "ell": [1], "t": [0.5]}, tol_abs=0.0)


def test_serialisation_round_trip():
    reports = verify_grid("lemma24", {"n": [1, 2], "ell": [1], "t": [0.5, 0.75]})
    data = json.loads(reports_to_json(reports))
    assert [d["params"] for d in data] == [r.params for r in reports]
    assert all(d["lhs"] == r.lhs for d, r in zip(data, reports))
    lines = reports_to_csv(reports).split("\n")
    assert lines[0] == "identity,param_string,lhs,rhs,abs_err,rel_err,nodes,pass"
    assert lines[1].startswith("lemma24,n=1;ell=1;t=0.5,")
    assert lines[-1] == "" and "\r" not in reports_to_csv(reports)


# --- perturbation self-tests -----------------------------------------------


def test_lemma24_perturbation_fails_everywhere_it_can():
    reports = verify_grid("lemma24", prefactor_scale=2.0)
    # a doubled zero is still zero; every other point must fail
    detectable = [r for r in reports if abs(r.lhs) > 1e-10]
    assert detectable and not any(r.pass_ for r in detectable)


SMALL_GRIDS = {
    "dirichlet_mehler": {"ell": [0, 3, 9], "theta": [0.3, 1.1]},
    "prop22": {"n": [0, 2], "ell": [0, 4], "theta": [0.3, 1.1]},
    "lemma24": {"n": [0, 2], "ell": [0, 4], "t": [0.2, 0.9]},
    "eq_ii": {"n": [1, 3], "m": [0, 1], "ell": [0, 4], "t": [0.2, 0.9]},
    "theorem25": {"n": [0, 2], "m": [0, 2], "ell": [0, 3], "theta": [0.3, 1.1]},
    "dk_eq11": {"n": [0, 3], "alpha": [0.0, 1.5], "beta": [-0.25, 0.5], "t": [0.2, 0.9]},
    "dk_product": {"n": [0, 2], "alpha": [0.5], "beta": [0.0], "s": [0.25], "t": [0.5, 1.0]},
    "cd_lemma21": {"ell": [0, 5], "alpha": [0.0, 2.0], "beta": [-0.4, 0.5], "x": [-0.3, 0.6]},
}


@pytest.mark.parametrize("identity", [i.value for i in IdentityId])
def test_every_identity_detects_doubled_prefactor(identity):
    grid = SMALL_GRIDS[identity]
    assert all(r.pass_ for r in verify_grid(identity, grid))
    perturbed = verify_grid(identity, grid, prefactor_scale=2.0)
    assert not any(r.pass_ for r in perturbed if abs(r.lhs) > 1e-10)


def test_default_grids_are_admissible():
    for identity in IdentityId:
        assert grid_points(identity, default_grid(identity))


# --- operator identities ---------------------------------------------------


def test_sine_operator_annihilates_low_degree():
    # sin(n u)/sin u is a degree n-1 polynomial in cos u, killed by n derivatives in cos u
    u = np.linspace(0.3, math.pi - 0.3, 61)
    for n in range(1, 5):
        val = sine_operator_fd(lambda x: np.sin(n * x) / np.sin(x), n, u, h=0.2 / n)
        assert np.max(np.abs(val)) <= 1e-4


def test_sine_operator_closed_form():
    u = np.linspace(0.3, math.pi - 0.3, 61)
    for n in range(1, 4):
        for ell in (0, 1, 3, 6):
            k = 2 * ell + n + 1
            fd = sine_operator_fd(lambda x: np.sin(k * x) / np.sin(x), n, u, h=0.2 / k)
            closed = 2**n * math.factorial(n) * gegenbauer_eval(2 * ell, n + 1, np.cos(u))
            assert np.max(np.abs(fd - closed)) <= 1e-4, (n, ell)


def test_partial_cosine_sum():
    u = np.linspace(0.1, 3.0, 301)
    for z in range(1, 7):
        for ell in range(31):
            err = np.abs(partial_cosine_sum(ell, z, u) - partial_cosine_sum_closed(ell, z, u))
            assert np.max(err) <= 1e-12


def test_partial_cosine_sum_plus_sign_variant_is_off():
    u = np.linspace(0.1, 3.0, 31)
    for z in (2, 3, 5):
        plus = 0.5 * (np.sin((z - 1) * u) + np.sin((2 * 4 + z + 1) * u)) / np.sin(u)
        np.testing.assert_allclose(plus - partial_cosine_sum(4, z, u), np.sin((z - 1) * u) / np.sin(u), atol=1e-12)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_derivative_transfer(m):
    for n in range(m, 5):
        for ell in (0, 1, 3, 5):
            for t in (0.3, 0.55, 0.8):
                ref = jacobi_eval(ell, n, m, 2 * t * t - 1)
                got = derivative_transfer_fd(ell, n, m, t)
                assert abs(got - ref) <= 1e-5 * max(abs(ref), 1e-3), (ell, n, m, t)


@settings(max_examples=40, deadline=None)
@given(ell=st.integers(1, 10), lam=st.floats(0.5, 6.0), a=st.floats(-0.45, 4.0), t=st.floats(0.05, 1.0))
def test_integrated_derivative_transfer(ell, lam, a, t):
    left, right = derivative_transfer_sides(ell, lam, a, t)
    assert left == pytest.approx(right, rel=1e-10, abs=1e-12 * max(1.0, abs(right)))
