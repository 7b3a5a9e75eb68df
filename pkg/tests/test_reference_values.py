"""Documented reference points of every public operation.

Closed forms are asserted directly; brute-force values come from
``oracle_values`` (see ``tests/oracles/generate.py``).
"""

import math

import pytest

from mspecial.modfun import (
    m_beta,
    m_beta_half_line,
    m_beta_trig,
    m_confluent_derivative,
    m_confluent_kummer,
    m_confluent_phi,
    m_gamma,
    m_gamma_product_integral,
    m_gauss_2f1,
    m_gauss_derivative,
    m_gauss_pfaff,
)
from mspecial.mseries import ParameterSet, m_series, m_series_kernel_beta
from mspecial.quadrature import QuadratureConfig, integrate_2d, integrate_half_line, integrate_unit
from mspecial.reductions import list_cases
from mspecial.scalar_core import classical_2f1, classical_beta, classical_phi, log_gamma, pochhammer
from mspecial.suites import richardson_derivative
from mspecial.transforms import (
    beta_numeric,
    check_beta_transform_m_beta,
    check_beta_transform_m_confluent,
    check_beta_transform_m_gauss,
    check_laplace_m_beta,
    check_laplace_m_confluent,
    check_laplace_m_gauss,
    check_mellin_m_beta,
    check_mellin_m_confluent,
    check_mellin_m_gauss,
    mellin_numeric,
)

import oracle_values as ov
from conftest import SETS

CLASSICAL = ParameterSet.classical()
E = math.e
HALF = QuadratureConfig(scheme="half_line")


def close(a, b, rel=1e-12):
    return a == pytest.approx(b, rel=rel, abs=1e-300)


# ---------------------------------------------------------------- scalar core


def test_log_gamma_points():
    assert log_gamma(1.0) == 0.0
    assert close(log_gamma(0.5), math.log(math.sqrt(math.pi)), 1e-15)
    assert close(log_gamma(5.0), math.log(24.0), 1e-15)


def test_pochhammer_points():
    assert pochhammer(7.3, 0) == 1.0
    assert pochhammer(3.0, 2) == 12.0
    assert pochhammer(1.0, 5) == 120.0


def test_beta_points():
    assert close(classical_beta(1.0, 1.0), 1.0, 1e-15)
    assert close(classical_beta(2.0, 3.0), 1 / 12, 1e-15)
    assert close(classical_beta(0.5, 0.5), math.pi, 1e-15)


def test_gauss_points():
    assert classical_2f1(0.3, 1.7, 2.2, 0.0).value == 1.0
    assert close(classical_2f1(1.0, 1.0, 2.0, 0.5).value, 2 * math.log(2))
    assert close(classical_2f1(1.0, 2.0, 3.0, -0.5).value, ov.HYP2F1_1_2_3_MINUS_HALF, 1e-14)


def test_confluent_points():
    assert classical_phi(0.7, 1.9, 0.0).value == 1.0
    assert close(classical_phi(1.0, 1.0, 1.0).value, E)
    assert close(classical_phi(1.0, 2.0, 1.0).value, E - 1)


# ---------------------------------------------------------------- series and kernel


def test_series_points():
    assert close(m_series(CLASSICAL, 1.0).value, E)
    assert close(m_series(ParameterSet((1.0,), (1.0,), 2.0, 1.0), 4.0).value, math.cosh(2.0))
    assert close(m_series(SETS["p1q2"], 0.0).value, 1 / math.gamma(1.5), 1e-15)
    two_f1 = ParameterSet((1.0, 1.0), (2.0,))
    assert close(m_series(two_f1, 0.5).value, 2 * math.log(2))


@pytest.mark.parametrize("upper, lower, alpha, beta, z, expected", ov.RANDOM_SERIES)
def test_series_matches_brute_force_on_random_sets(upper, lower, alpha, beta, z, expected):
    res = m_series(ParameterSet(upper, lower, alpha, beta), z)
    assert res.converged
    assert abs(res.value - expected) <= 3 * res.abs_error_estimate + 2**-53 * abs(expected)


def test_kernel_beta_points():
    assert close(m_series_kernel_beta(CLASSICAL, 0.5, 1.0).value, math.exp(-4.0))
    assert close(m_series_kernel_beta(SETS["p1q2"], 0.5, 0.0).value, 1 / math.gamma(1.5), 1e-15)
    assert close(m_series_kernel_beta(CLASSICAL, 0.1, 2.0).value, math.exp(-2 / 0.09))


# ---------------------------------------------------------------- quadrature


def test_unit_interval_points():
    assert close(integrate_unit(lambda t: 1.0).value, 1.0)
    assert close(integrate_unit(lambda t: t**-0.5).value, 2.0)
    assert close(integrate_unit(lambda t: t * (1 - t)).value, 1 / 6)


def test_half_line_points():
    assert close(integrate_half_line(lambda t: math.exp(-t), HALF).value, 1.0)
    assert close(integrate_half_line(lambda t: t**-0.5 * math.exp(-t), HALF).value, math.sqrt(math.pi), 1e-11)
    res = integrate_half_line(lambda t: t**-0.5 * math.exp(-t - 1 / t), HALF)
    assert close(res.value, math.sqrt(math.pi) * math.exp(-2.0), 1e-11)


def test_tensor_points():
    assert close(integrate_2d(lambda th, r: 4 * r * math.exp(-r * r)).value, math.pi, 1e-6)
    assert integrate_2d(lambda th, r: 0.0).value == 0.0
    assert close(m_gamma_product_integral(CLASSICAL, 0.5, 0.5, 0.0).value, math.pi, 1e-6)


# ---------------------------------------------------------------- modified functions


def test_m_gamma_points():
    assert close(m_gamma(CLASSICAL, 1.0, 0.0).value, 1.0)
    assert close(m_gamma(CLASSICAL, 0.5, 1.0).value, math.sqrt(math.pi) * math.exp(-2.0))
    assert close(m_gamma(CLASSICAL, 4.0, 0.0).value, 6.0)


def test_m_beta_points():
    assert close(m_beta(CLASSICAL, 2.0, 3.0, 0.0).value, 1 / 12)
    assert close(m_beta(CLASSICAL, 1.0, 1.0, 1.0).value, ov.EXP_KERNEL_BETA_RHO_1)
    p = SETS["p1q2"]
    a, b = m_beta(p, 0.5, 2.5, 0.5), m_beta(p, 2.5, 0.5, 0.5)
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate)


@pytest.mark.parametrize("form", [m_beta_trig, m_beta_half_line])
def test_changed_variable_beta_points(form):
    assert close(form(CLASSICAL, 2.0, 3.0, 0.0).value, 1 / 12)
    assert close(form(CLASSICAL, 0.5, 0.5, 0.0).value, math.pi)
    p = SETS["p2q2"]
    a, b = form(p, 1.5, 2.0, 1.0), m_beta(p, 1.5, 2.0, 1.0)
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate)


def test_m_gauss_points():
    assert close(m_gauss_2f1(CLASSICAL, 1.0, 1.0, 2.0, 0.5, 0.0).value, 2 * math.log(2))
    p = SETS["p1q2"]
    at_zero = m_gauss_2f1(p, 0.7, 1.0, 2.5, 0.0, 0.5).value
    assert close(at_zero, m_beta(p, 1.0, 1.5, 0.5).value / classical_beta(1.0, 1.5), 1e-10)
    res = m_gauss_2f1(CLASSICAL, 0.5, 1.0, 3.0, -0.7, 0.3)
    assert close(res.value, ov.GAUSS_SERIES_OF_BETAS, 1e-9)


def test_m_confluent_points():
    assert close(m_confluent_phi(CLASSICAL, 1.0, 2.0, 1.0, 0.0).value, E - 1)
    p = SETS["p2q2"]
    at_zero = m_confluent_phi(p, 1.0, 2.5, 0.0, 0.5).value
    assert close(at_zero, m_beta(p, 1.0, 1.5, 0.5).value / classical_beta(1.0, 1.5), 1e-10)
    a = m_confluent_phi(CLASSICAL, 2.0, 5.0, -3.0, 0.5)
    b = m_confluent_phi(CLASSICAL, 2.0, 5.0, -3.0, 0.5, representation="reflected")
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate)


def test_gauss_derivative_points():
    assert close(m_gauss_derivative(CLASSICAL, 1.0, 1.0, 2.0, 0.0, 0.0, 1).value, 0.5)
    p = SETS["p1q2"]
    assert m_gauss_derivative(p, 0.5, 1.0, 2.5, 0.3, 0.5, 0).value == m_gauss_2f1(p, 0.5, 1.0, 2.5, 0.3, 0.5).value
    formula = m_gauss_derivative(CLASSICAL, 0.5, 1.0, 3.0, 0.2, 0.1, 1)
    fd = richardson_derivative(lambda z: m_gauss_2f1(CLASSICAL, 0.5, 1.0, 3.0, z, 0.1, 1e-12), 0.2, 1, 1e-4)
    assert close(formula.value, fd.value, 1e-5)


def test_confluent_derivative_points():
    assert close(m_confluent_derivative(CLASSICAL, 1.0, 2.0, 0.0, 0.0, 1).value, 0.5)
    p = SETS["p2q2"]
    assert m_confluent_derivative(p, 1.0, 2.5, 0.3, 0.5, 0).value == m_confluent_phi(p, 1.0, 2.5, 0.3, 0.5).value
    formula = m_confluent_derivative(CLASSICAL, 1.0, 2.5, 0.2, 0.1, 1)
    fd = richardson_derivative(lambda z: m_confluent_phi(CLASSICAL, 1.0, 2.5, z, 0.1, 1e-12), 0.2, 1, 1e-4)
    assert close(formula.value, fd.value, 1e-5)


def test_pfaff_points():
    p = SETS["p1q2"]
    assert close(m_gauss_pfaff(p, 0.5, 1.0, 2.5, 0.0, 0.5).value, m_gauss_2f1(p, 0.5, 1.0, 2.5, 0.0, 0.5).value)
    assert close(m_gauss_pfaff(CLASSICAL, 1.0, 1.0, 2.0, -1.0, 0.0).value, math.log(2))
    a = m_gauss_pfaff(CLASSICAL, 0.5, 1.5, 4.0, 0.3, 0.2)
    b = m_gauss_2f1(CLASSICAL, 0.5, 1.5, 4.0, 0.3, 0.2)
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate) + 1e-5 * abs(b.value)


def test_kummer_points():
    p = SETS["p2q2"]
    assert close(m_confluent_kummer(p, 1.0, 2.5, 0.0, 0.5).value, m_confluent_phi(p, 1.0, 2.5, 0.0, 0.5).value)
    assert close(m_confluent_kummer(CLASSICAL, 1.0, 2.0, 1.0, 0.0).value, E - 1)
    a = m_confluent_kummer(CLASSICAL, 2.0, 5.0, 2.5, 0.4)
    b = m_confluent_phi(CLASSICAL, 2.0, 5.0, 2.5, 0.4)
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate) + 1e-5 * abs(b.value)


# ---------------------------------------------------------------- transforms


def test_mellin_numeric_points():
    assert close(mellin_numeric(lambda r: math.exp(-r), 1.0).value, 1.0, 1e-9)
    assert close(mellin_numeric(lambda r: math.exp(-r), 0.5).value, math.sqrt(math.pi), 1e-9)
    assert close(mellin_numeric(lambda r: (1 + r) ** -2, 1.0).value, 1.0, 1e-9)


def test_mellin_m_beta_points():
    r = check_mellin_m_beta(CLASSICAL, 1.0, 1.0, 1.0)
    assert r.passed and close(r.lhs.value, 1 / 6, 1e-7) and close(r.rhs.value, 1 / 6, 1e-9)
    r = check_mellin_m_beta(CLASSICAL, 2.0, 3.0, 0.5)
    assert r.passed and close(r.rhs.value, classical_beta(2.5, 3.5) * math.sqrt(math.pi), 1e-9)
    assert check_mellin_m_beta(SETS["p1q2"], 1.5, 2.0, 1.0).passed


def test_laplace_m_beta_points():
    r = check_laplace_m_beta(CLASSICAL, 1.0, 1.0, 1.0)
    assert r.passed and math.isfinite(r.lhs.value)
    r = check_laplace_m_beta(CLASSICAL, 2.0, 2.0, 4.0)
    assert r.passed and close(r.rhs.value, ov.LAPLACE_BETA_RHS_2_2_S4, 1e-9)
    assert check_laplace_m_beta(ParameterSet((1.5,), (2.0,)), 1.5, 2.0, 2.0).passed


def test_beta_transform_m_beta_points():
    r = check_beta_transform_m_beta(CLASSICAL, 1.0, 1.0, 1.0, 1.0)
    assert r.passed
    assert close(r.lhs.value, ov.BETA_TRANSFORM_LHS_1_1, 1e-8)
    assert close(r.rhs.value, ov.BETA_TRANSFORM_LHS_1_1, 1e-8)
    assert check_beta_transform_m_beta(CLASSICAL, 1.5, 2.0, 2.0, 3.0).passed


def test_beta_transform_never_samples_rho_zero():
    seen = []
    beta_numeric(lambda r: seen.append(r) or 1.0, 2.0, 3.0)
    # nodes next to ρ = 1 round to 1.0; the weight uses the exact complement
    assert min(seen) > 0.0


def test_mellin_m_gauss_points():
    r = check_mellin_m_gauss(CLASSICAL, 1.0, 1.0, 2.0, 0.5, 1.0)
    expected = classical_beta(2.0, 2.0) / classical_beta(1.0, 1.0) * classical_2f1(1.0, 2.0, 4.0, 0.5).value
    assert r.passed and close(r.rhs.value, expected, 1e-9)
    assert check_mellin_m_gauss(CLASSICAL, 0.5, 1.0, 3.0, -0.4, 0.5).passed


def _collapses(report, beta_report, l2, l3):
    scale = classical_beta(l2, l3 - l2)
    assert report.passed and beta_report.passed
    assert close(report.lhs.value * scale, beta_report.lhs.value, 1e-7)
    assert close(report.rhs.value * scale, beta_report.rhs.value, 1e-9)


def test_gauss_transforms_collapse_at_zero_argument():
    p = SETS["p2q2"]
    _collapses(check_mellin_m_gauss(p, 0.5, 1.0, 2.5, 0.0, 1.0), check_mellin_m_beta(p, 1.0, 1.5, 1.0), 1.0, 2.5)
    _collapses(check_laplace_m_gauss(p, 0.5, 1.0, 2.5, 0.0, 2.0), check_laplace_m_beta(p, 1.0, 1.5, 2.0), 1.0, 2.5)
    _collapses(
        check_beta_transform_m_gauss(p, 0.5, 1.0, 2.5, 0.0, 2.5, 1.0),
        check_beta_transform_m_beta(p, 1.0, 1.5, 2.5, 1.0),
        1.0,
        2.5,
    )


def test_confluent_transforms_collapse_at_zero_argument():
    p = SETS["p1q2"]
    _collapses(check_mellin_m_confluent(p, 1.0, 2.5, 0.0, 1.0), check_mellin_m_beta(p, 1.0, 1.5, 1.0), 1.0, 2.5)
    _collapses(check_laplace_m_confluent(p, 1.0, 2.5, 0.0, 2.0), check_laplace_m_beta(p, 1.0, 1.5, 2.0), 1.0, 2.5)
    _collapses(
        check_beta_transform_m_confluent(p, 1.0, 2.5, 0.0, 2.5, 1.0),
        check_beta_transform_m_beta(p, 1.0, 1.5, 2.5, 1.0),
        1.0,
        2.5,
    )


def test_confluent_transforms_at_classical_parameters():
    assert check_mellin_m_confluent(CLASSICAL, 1.0, 2.5, 0.5, 1.0).passed
    assert check_laplace_m_confluent(CLASSICAL, 1.0, 2.5, -0.5, 2.0).passed
    assert check_beta_transform_m_confluent(CLASSICAL, 1.0, 2.5, 0.5, 1.0, 2.5).passed
    assert check_laplace_m_gauss(CLASSICAL, 0.5, 1.0, 2.5, 0.5, 1.0).passed
    assert check_beta_transform_m_gauss(CLASSICAL, 0.5, 1.0, 2.5, -0.5, 2.5, 2.5).passed


# ---------------------------------------------------------------- catalog


def test_catalog_registration():
    ids = [c.case_id for c in list_cases()]
    assert "classic_gamma" in ids
    assert len(ids) >= 12
    assert len(ids) == len(set(ids))
    classic_gamma = next(c for c in list_cases() if c.case_id == "classic_gamma")
    assert {0.5, 1.0, 2.0, 3.5} <= {p["x"] for p in classic_gamma.points}
