import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mspecial.errors import DomainError
from mspecial.modfun import (
    BETA_REPRESENTATIONS,
    CONFLUENT_REPRESENTATIONS,
    ModifiedFunctionRequest,
    m_beta,
    m_beta_binomial_sum,
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
from mspecial.mseries import ParameterSet

from conftest import SETS, rel_err
from oracle_values import M_BETA, M_CONFLUENT, M_GAMMA, M_GAUSS

CLASSICAL = ParameterSet.classical()
BETA_FORMS = {"default": m_beta, "trig": m_beta_trig, "half_line": m_beta_half_line}


def _agrees(res, expected, rel):
    assert res.converged
    assert rel_err(res.value, expected) < rel


@pytest.mark.parametrize("name, x, rho, expected", M_GAMMA)
def test_m_gamma_against_frozen_oracle(name, x, rho, expected):
    _agrees(m_gamma(SETS[name], x, rho), expected, 1e-12)


@pytest.mark.parametrize("rep", BETA_REPRESENTATIONS)
@pytest.mark.parametrize("name, x, y, rho, expected", M_BETA)
def test_m_beta_against_frozen_oracle(name, x, y, rho, expected, rep):
    _agrees(BETA_FORMS[rep](SETS[name], x, y, rho), expected, 1e-12)


# the series of modified betas only converges for |z| < 1
GAUSS_CASES = [
    (rep, *row)
    for row in M_GAUSS
    for rep in ("default", "half_line", "trig", "series_of_betas")
    if rep != "series_of_betas" or abs(row[4]) < 1
]


@pytest.mark.parametrize("rep, name, l1, l2, l3, z, rho, expected", GAUSS_CASES)
def test_m_gauss_against_frozen_oracle(rep, name, l1, l2, l3, z, rho, expected):
    res = m_gauss_2f1(SETS[name], l1, l2, l3, z, rho, representation=rep)
    _agrees(res, expected, 1e-9 if rep == "series_of_betas" else 1e-12)


@pytest.mark.parametrize("rep", CONFLUENT_REPRESENTATIONS)
@pytest.mark.parametrize("name, l2, l3, z, rho, expected", M_CONFLUENT)
def test_m_confluent_against_frozen_oracle(name, l2, l3, z, rho, expected, rep):
    res = m_confluent_phi(SETS[name], l2, l3, z, rho, representation=rep)
    _agrees(res, expected, 1e-11)


def test_zero_rho_reduces_to_classical_functions():
    assert m_gamma(CLASSICAL, 2.5, 0.0).value == pytest.approx(math.gamma(2.5), rel=1e-12)
    assert m_beta(CLASSICAL, 2.0, 3.0, 0.0).value == pytest.approx(1 / 12, rel=1e-12)
    f = m_gauss_2f1(CLASSICAL, 0.5, 1.0, 2.5, 0.5, 0.0)
    assert f.value == pytest.approx(float(mp.hyp2f1(0.5, 1.0, 2.5, 0.5)), rel=1e-12)
    phi = m_confluent_phi(CLASSICAL, 1.0, 2.5, 2.0, 0.0)
    assert phi.value == pytest.approx(float(mp.hyp1f1(1.0, 2.5, 2.0)), rel=1e-12)


def test_chaudhry_closed_form():
    for rho in (0.25, 1.0, 4.0):
        expected = math.sqrt(math.pi) * math.exp(-2 * math.sqrt(rho))
        assert m_gamma(CLASSICAL, 0.5, rho).value == pytest.approx(expected, rel=1e-12)


def test_large_positive_confluent_argument_uses_kummer():
    res = m_confluent_phi(CLASSICAL, 1.0, 2.5, 35.0, 0.0)
    assert res.value == pytest.approx(float(mp.hyp1f1(1.0, 2.5, 35.0)), rel=1e-10)


@pytest.mark.parametrize("n", [1, 2])
def test_gauss_derivative_matches_mpmath_difference(n):
    p = SETS["p2q2"]
    res = m_gauss_derivative(p, 0.5, 1.0, 2.5, 0.25, 1.0, n)
    f = lambda z: m_gauss_2f1(p, 0.5, 1.0, 2.5, float(z), 1.0, 1e-12).value
    expected = mp.diff(f, 0.25, n, h=1e-3, method="step")
    assert rel_err(res.value, float(expected)) < 1e-4


def test_confluent_derivative_first_order():
    # d/dz ¹F¹(a; c; z) = a/c ¹F¹(a+1; c+1; z) at ρ = 0
    res = m_confluent_derivative(CLASSICAL, 1.0, 2.5, 0.5, 0.0, 1)
    assert res.value == pytest.approx(float(mp.hyp1f1(2.0, 3.5, 0.5)) / 2.5, rel=1e-12)


@pytest.mark.parametrize("z", [-5.0, -0.5, 0.5])
def test_pfaff_transformation(z):
    p = SETS["p2q2"]
    direct = m_gauss_2f1(p, 0.5, 1.0, 2.5, z, 0.25)
    mapped = m_gauss_pfaff(p, 0.5, 1.0, 2.5, z, 0.25)
    assert mapped.value == pytest.approx(direct.value, rel=1e-10)


@pytest.mark.parametrize("z", [-3.0, 0.0, 2.5])
def test_kummer_transformation(z):
    p = SETS["p1q2"]
    direct = m_confluent_phi(p, 1.0, 2.5, z, 1.0)
    mapped = m_confluent_kummer(p, 1.0, 2.5, z, 1.0)
    assert mapped.value == pytest.approx(direct.value, rel=1e-10)


def test_gamma_product_integral_classical():
    res = m_gamma_product_integral(CLASSICAL, 1.0, 2.0, 1.0)
    expected = m_gamma(CLASSICAL, 1.0, 1.0).value * m_gamma(CLASSICAL, 2.0, 1.0).value
    assert res.value == pytest.approx(expected, rel=1e-5)


def test_binomial_sum_matches_direct_evaluation():
    # ᴹB(x, 1 − y) = Σ (y)ₙ/n! ᴹB(x + n, 1)
    out = m_beta_binomial_sum(CLASSICAL, 1.0, 0.5, 1.0, terms=40)
    direct = m_beta(CLASSICAL, 1.0, 0.5, 1.0)
    assert out.converged
    assert abs(out.value - direct.value) <= 1e-6 + out.truncation_bound
    assert out.truncation_bound > 0.0


def test_binomial_sum_domain():
    with pytest.raises(DomainError):
        m_beta_binomial_sum(CLASSICAL, 1.0, 1.5, 1.0)
    with pytest.raises(DomainError):
        m_beta_binomial_sum(CLASSICAL, 1.0, 0.5, 0.0)


@pytest.mark.parametrize(
    "call",
    [
        lambda: m_gamma(CLASSICAL, 0.0, 1.0),
        lambda: m_gamma(CLASSICAL, 1.0, -1.0),
        lambda: m_beta(CLASSICAL, 1.0, -2.0, 0.0),
        lambda: m_beta(CLASSICAL, 1.0, 1.0, 0.0, tol=0.5),
        lambda: m_gauss_2f1(CLASSICAL, 0.5, 1.0, 2.5, 1.0, 0.0),
        lambda: m_gauss_2f1(CLASSICAL, 0.5, 2.5, 1.0, 0.5, 0.0),
        lambda: m_gauss_2f1(CLASSICAL, 0.5, 1.0, 2.5, 0.5, 0.0, representation="nope"),
        lambda: m_gauss_2f1(CLASSICAL, 0.5, 1.0, 2.5, -2.0, 0.0, representation="series_of_betas"),
        lambda: m_confluent_phi(CLASSICAL, 1.0, 2.5, math.nan, 0.0),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_request_dispatch():
    req = ModifiedFunctionRequest("m_beta", CLASSICAL, (("x", 2.0), ("y", 3.0)), 0.0, "trig")
    assert req.evaluate().value == pytest.approx(1 / 12, rel=1e-12)
    with pytest.raises(DomainError):
        ModifiedFunctionRequest("m_beta", CLASSICAL, (("x", 2.0),)).evaluate()
    with pytest.raises(DomainError):
        ModifiedFunctionRequest("m_gamma", CLASSICAL, (("x", 2.0),), representation="trig").evaluate()


lattice = st.integers(1, 24).map(lambda k: k / 8)


@settings(max_examples=25, deadline=None)
@given(lattice, lattice, st.sampled_from([0.0, 0.25, 1.0]))
def test_m_beta_is_symmetric(x, y, rho):
    p = SETS["p1q2"]
    a, b = m_beta(p, x, y, rho), m_beta(p, y, x, rho)
    assert abs(a.value - b.value) <= 3 * (a.abs_error_estimate + b.abs_error_estimate) + 1e-14 * abs(a.value)


@settings(max_examples=25, deadline=None)
@given(lattice, lattice, st.sampled_from([0.25, 1.0, 4.0]))
def test_m_beta_recurrence(x, y, rho):
    # ᴹB(x, y+1) + ᴹB(x+1, y) = ᴹB(x, y)
    p = SETS["p2q2"]
    whole = m_beta(p, x, y, rho)
    parts = m_beta(p, x, y + 1, rho), m_beta(p, x + 1, y, rho)
    err = whole.abs_error_estimate + sum(r.abs_error_estimate for r in parts)
    assert abs(whole.value - parts[0].value - parts[1].value) <= 3 * err + 1e-14 * abs(whole.value)


@settings(max_examples=20, deadline=None)
@given(lattice, st.floats(0.0, 4.0))
def test_classical_m_beta_decreases_in_rho(x, rho):
    lower = m_beta(CLASSICAL, x, 1.5, rho + 0.5).value
    upper = m_beta(CLASSICAL, x, 1.5, rho).value
    assert lower < upper
