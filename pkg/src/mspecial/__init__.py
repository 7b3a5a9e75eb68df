"""Modified gamma, beta and hypergeometric functions with M-series kernels."""

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    IntegrandError,
    InvalidParameters,
    MSpecialError,
)
from .modfun import (
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
from .mseries import ParameterSet, m_series, m_series_kernel
from .results import EvalResult
from .transforms import IdentityReport, TolerancePolicy

__all__ = [
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "EvalResult",
    "IdentityReport",
    "IntegrandError",
    "InvalidParameters",
    "MSpecialError",
    "ParameterSet",
    "TolerancePolicy",
    "m_beta",
    "m_beta_binomial_sum",
    "m_beta_half_line",
    "m_beta_trig",
    "m_confluent_derivative",
    "m_confluent_kummer",
    "m_confluent_phi",
    "m_gamma",
    "m_gamma_product_integral",
    "m_gauss_2f1",
    "m_gauss_derivative",
    "m_gauss_pfaff",
    "m_series",
    "m_series_kernel",
]
