"""Modified gamma, beta, Gauss and confluent functions with an M-series kernel.

Every function here is an integral (or a series of integrals) whose
integrand carries the M-series evaluated far down the negative axis. The
integrands are assembled in log space: the algebraic weight is combined
into one exponent before it is multiplied by the kernel, so weights such as
t^{x-1} near t = 0 never overflow on their own.

Results are :class:`~mspecial.results.EvalResult` values. The error
estimate combines the quadrature estimate with the propagated kernel
errors, and ``converged`` is false whenever any inner evaluation failed to
reach its tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError
from .mseries import DEFAULT_KERNEL_TOL, ParameterSet, floor_tolerance, m_series_kernel
from .quadrature import (
    QuadratureConfig,
    integrate_2d,
    integrate_half_line,
    integrate_unit,
)
from .results import EvalResult
from .scalar_core import EPS, CompensatedAccumulator, SmallTermRule, log_gamma, pochhammer

DEFAULT_TOL = 1e-10
PRODUCT_TOL = 1e-6
KUMMER_THRESHOLD = 30.0
SERIES_TERM_CAP = 2000

BETA_REPRESENTATIONS = ("default", "trig", "half_line")
GAUSS_REPRESENTATIONS = ("default", "half_line", "trig", "series_of_betas")
CONFLUENT_REPRESENTATIONS = ("default", "reflected", "series_of_betas")

_HALF_PI = 0.5 * math.pi


class _Trace:
    """Collects kernel diagnostics while an integrand is being sampled."""

    __slots__ = ("converged", "extended")

    def __init__(self) -> None:
        self.converged = True
        self.extended = False

    def tier(self) -> str:
        return "extended" if self.extended else "standard"


def kernel_tolerance(tol: float) -> float:
    """Kernel accuracy used beneath an integral of relative accuracy ``tol``."""
    return min(DEFAULT_KERNEL_TOL, max(1e-14, tol * 1e-2))


def _weighted_kernel(params: ParameterSet, z: float, log_weight: float, ktol: float, trace: _Trace):
    """``exp(log_weight) * M(z)`` with its propagated error.

    Nodes past the decay floor are treated as exact zeros: the weight there
    may be astronomically large while the true integrand is negligible, so
    multiplying the floor bound by it would only manufacture error.
    """
    k = m_series_kernel(params, z, ktol)
    if not k.converged:
        trace.converged = False
    if k.precision_tier == "extended":
        trace.extended = True
    if k.method == "decay_floor" or (k.value == 0.0 and k.abs_error_estimate == 0.0):
        return 0.0
    w = math.exp(log_weight)
    return w * k.value, w * k.abs_error_estimate


def _neg_ratio(rho: float, log_denominator: float) -> float:
    """−ρ/exp(log_denominator), clamped far below any decay floor on overflow."""
    if rho == 0.0:
        return 0.0
    log_mag = math.log(rho) - log_denominator
    if log_mag > 700.0:
        return -1e300
    return -math.exp(log_mag)


def _config(params: ParameterSet, tol: float, ktol: float, rho: float, log_mass: float, scheme: str) -> QuadratureConfig:
    """Quadrature settings with an absolute floor set by the kernel's decay floor.

    Nodes past the floor count as zero, so a contribution smaller than the
    floor bound times the mass of the weight cannot be resolved anyway.
    """
    abs_tol = 0.0
    if rho > 0.0:
        bound = floor_tolerance(params, ktol)
        if bound > 0.0:
            abs_tol = bound * math.exp(min(log_mass, 700.0))
    return QuadratureConfig(rel_tol=tol, abs_tol=abs_tol, scheme=scheme)


def _check_tol(tol: float) -> None:
    if not 1e-13 <= tol < 1e-2:
        raise DomainError(f"tolerance must lie in [1e-13, 1e-2), got {tol!r}")


def _check_positive(**values: float) -> None:
    for name, v in values.items():
        if not (math.isfinite(v) and v > 0.0):
            raise DomainError(f"{name} must be a positive finite number, got {v!r}")


def _check_rho(rho: float) -> None:
    if not (math.isfinite(rho) and rho >= 0.0):
        raise DomainError(f"rho must be a nonnegative finite number, got {rho!r}")


def _check_lambdas(l2: float, l3: float) -> None:
    if not (math.isfinite(l2) and math.isfinite(l3) and l3 > l2 > 0.0):
        raise DomainError(f"need lambda3 > lambda2 > 0, got lambda2={l2!r}, lambda3={l3!r}")


def _from_quadrature(res, trace: _Trace, method: str, scale: float = 1.0) -> EvalResult:
    value = scale * res.value
    err = abs(scale) * res.abs_error_estimate + 2 * EPS * abs(value)
    return EvalResult(
        value,
        err,
        0,
        0.0,
        trace.tier(),
        res.converged and trace.converged,
        res.nodes_evaluated,
        method,
    )


def _log_beta(a: float, b: float) -> float:
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


# ---------------------------------------------------------------- M-gamma


@lru_cache(maxsize=1 << 14)
def _m_gamma(params: ParameterSet, x: float, rho: float, tol: float) -> EvalResult:
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def integrand(t: float):
        return _weighted_kernel(params, -t - rho / t, (x - 1.0) * math.log(t), ktol, trace)

    log_mass = x * math.log(-params.z_floor) - math.log(x)
    cfg = _config(params, tol, ktol, rho, log_mass, "half_line")
    res = integrate_half_line(integrand, cfg)
    return _from_quadrature(res, trace, "half_line")


def m_gamma(params: ParameterSet, x: float, rho: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Modified gamma function: ∫₀^∞ t^{x−1} M(−t − ρ/t) dt.

    Raises
    ------
    DomainError
        For x ≤ 0, ρ < 0 or a tolerance outside [1e-13, 1e-2).
    DivergenceError
        When the integrand does not decay along the half line.
    """
    _check_positive(x=x)
    _check_rho(rho)
    _check_tol(tol)
    return _m_gamma(params, float(x), float(rho), float(tol))


# ---------------------------------------------------------------- M-beta


@lru_cache(maxsize=1 << 16)
def _m_beta(params: ParameterSet, x: float, y: float, rho: float, tol: float) -> EvalResult:
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def integrand(t: float, tc: float):
        log_t, log_tc = math.log(t), math.log(tc)
        z = _neg_ratio(rho, log_t + log_tc)
        return _weighted_kernel(params, z, (x - 1.0) * log_t + (y - 1.0) * log_tc, ktol, trace)

    cfg = _config(params, tol, ktol, rho, _log_beta(x, y), "unit_interval")
    res = integrate_unit(integrand, cfg, with_complement=True)
    return _from_quadrature(res, trace, "unit_interval")


def m_beta(params: ParameterSet, x: float, y: float, rho: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Modified beta function: ∫₀¹ t^{x−1}(1−t)^{y−1} M(−ρ/(t(1−t))) dt."""
    _check_positive(x=x, y=y)
    _check_rho(rho)
    _check_tol(tol)
    return _m_beta(params, float(x), float(y), float(rho), float(tol))


@lru_cache(maxsize=1 << 14)
def _m_beta_trig(params: ParameterSet, x: float, y: float, rho: float, tol: float) -> EvalResult:
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def integrand(u: float, uc: float):
        log_sin = math.log(math.sin(_HALF_PI * u))
        log_cos = math.log(math.sin(_HALF_PI * uc))
        z = _neg_ratio(rho, 2.0 * (log_sin + log_cos))
        log_w = (2.0 * x - 1.0) * log_cos + (2.0 * y - 1.0) * log_sin
        return _weighted_kernel(params, z, log_w, ktol, trace)

    cfg = _config(params, tol, ktol, rho, _log_beta(x, y) - math.log(math.pi), "unit_interval")
    res = integrate_unit(integrand, cfg, with_complement=True)
    # dθ = (π/2) du, times the leading 2
    return _from_quadrature(res, trace, "trig", math.pi)


def m_beta_trig(params: ParameterSet, x: float, y: float, rho: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Modified beta via 2∫₀^{π/2} cos^{2x−1}θ sin^{2y−1}θ M(−ρ/(sin²θ cos²θ)) dθ."""
    _check_positive(x=x, y=y)
    _check_rho(rho)
    _check_tol(tol)
    return _m_beta_trig(params, float(x), float(y), float(rho), float(tol))


@lru_cache(maxsize=1 << 14)
def _m_beta_half_line(params: ParameterSet, x: float, y: float, rho: float, tol: float) -> EvalResult:
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def integrand(u: float):
        z = -rho * (2.0 + u + 1.0 / u) if rho else 0.0
        log_w = (x - 1.0) * math.log(u) - (x + y) * math.log1p(u)
        return _weighted_kernel(params, z, log_w, ktol, trace)

    cfg = _config(params, tol, ktol, rho, _log_beta(x, y), "half_line")
    res = integrate_half_line(integrand, cfg)
    return _from_quadrature(res, trace, "half_line")


def m_beta_half_line(
    params: ParameterSet, x: float, y: float, rho: float, tol: float = DEFAULT_TOL
) -> EvalResult:
    """Modified beta via ∫₀^∞ u^{x−1}(1+u)^{−x−y} M(−2ρ − ρ(u + 1/u)) du."""
    _check_positive(x=x, y=y)
    _check_rho(rho)
    _check_tol(tol)
    return _m_beta_half_line(params, float(x), float(y), float(rho), float(tol))


# ---------------------------------------------------------------- M-Gauss


def _series_of_betas(
    params: ParameterSet,
    prefactor,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    tol: float,
    ratio_bound: float,
) -> EvalResult:
    """Σₙ prefactor(n) · ᴹB(λ₂+n, λ₃−λ₂; ρ)/B(λ₂, λ₃−λ₂) · zⁿ/n!.

    ``prefactor(n)`` supplies the Pochhammer weight. Terms are evaluated
    at a tenth of the target tolerance; the tail beyond the last term is
    bounded geometrically using ``ratio_bound`` or the observed ratio,
    whichever is larger.
    """
    inner_tol = max(1e-13, tol * 0.1)
    log_norm = _log_beta(l2, l3 - l2)
    acc = CompensatedAccumulator()
    rule = SmallTermRule(tol)
    err = 0.0
    nodes = 0
    converged = True
    extended = False
    coef = 1.0  # zⁿ/n! · prefactor(n)
    prev_abs = math.inf
    ratio = 0.0
    for n in range(SERIES_TERM_CAP):
        if n:
            coef *= prefactor(n - 1) * z / n
        if coef == 0.0:
            break
        mb = _m_beta(params, l2 + n, l3 - l2, rho, inner_tol)
        nodes += mb.nodes_evaluated
        converged = converged and mb.converged
        extended = extended or mb.precision_tier == "extended"
        scale = coef * math.exp(-log_norm)
        term = scale * mb.value
        acc.add(term)
        err += abs(scale) * mb.abs_error_estimate
        if prev_abs < math.inf and prev_abs > 0.0:
            ratio = abs(term) / prev_abs
        prev_abs = abs(term)
        if rule.update(abs(term), abs(acc.value)):
            r = max(ratio, ratio_bound)
            tail = abs(term) * r / (1.0 - r) if r < 1.0 else math.inf
            err += tail
            break
    else:
        converged = False
    err += acc.rounding_bound()
    return EvalResult(
        acc.value,
        err,
        acc.count,
        acc.max_abs,
        "extended" if extended else "standard",
        converged and math.isfinite(err),
        nodes,
        "series_of_betas",
    )


@lru_cache(maxsize=1 << 14)
def _m_gauss(
    params: ParameterSet, l1: float, l2: float, l3: float, z: float, rho: float, tol: float, rep: str
) -> EvalResult:
    if rep == "series_of_betas":
        # (λ₁)ₙ₊₁/(λ₁)ₙ = λ₁ + n; the kernel ratio ᴹB(n+1)/ᴹB(n) is at most one
        # for a nonnegative kernel, which bounds the term ratio by |z|·(λ₁+n)/(n+1).
        return _series_of_betas(params, lambda n: l1 + n, l2, l3, z, rho, tol, abs(z))
    ktol = kernel_tolerance(tol)
    trace = _Trace()
    c = l3 - l2
    scale = math.exp(-_log_beta(l2, c))
    # (1 − zt)^{−λ₁} is monotone in t, so its extremes sit at the endpoints
    log_mass = _log_beta(l2, c) + max(0.0, -l1 * math.log1p(-z))
    if rep == "default":
        def integrand(t: float, tc: float):
            log_t, log_tc = math.log(t), math.log(tc)
            kz = _neg_ratio(rho, log_t + log_tc)
            log_w = (l2 - 1.0) * log_t + (c - 1.0) * log_tc - l1 * math.log1p(-z * t)
            return _weighted_kernel(params, kz, log_w, ktol, trace)

        cfg = _config(params, tol, ktol, rho, log_mass, "unit_interval")
        res = integrate_unit(integrand, cfg, with_complement=True)
        return _from_quadrature(res, trace, "unit_interval", scale)
    if rep == "half_line":
        one_minus_z = 1.0 - z

        def integrand(u: float):
            kz = -rho * (2.0 + u + 1.0 / u) if rho else 0.0
            log_w = (
                (l2 - 1.0) * math.log(u)
                + (l1 - l3) * math.log1p(u)
                - l1 * math.log1p(u * one_minus_z)
            )
            return _weighted_kernel(params, kz, log_w, ktol, trace)

        res = integrate_half_line(integrand, _config(params, tol, ktol, rho, log_mass, "half_line"))
        return _from_quadrature(res, trace, "half_line", scale)

    def integrand(u: float, uc: float):
        sin_t = math.sin(_HALF_PI * u)
        log_sin = math.log(sin_t)
        log_cos = math.log(math.sin(_HALF_PI * uc))
        kz = _neg_ratio(rho, 2.0 * (log_sin + log_cos))
        log_w = (
            (2.0 * l2 - 1.0) * log_sin
            + (2.0 * c - 1.0) * log_cos
            - l1 * math.log1p(-z * sin_t * sin_t)
        )
        return _weighted_kernel(params, kz, log_w, ktol, trace)

    cfg = _config(params, tol, ktol, rho, log_mass - math.log(math.pi), "unit_interval")
    res = integrate_unit(integrand, cfg, with_complement=True)
    return _from_quadrature(res, trace, "trig", math.pi * scale)


def m_gauss_2f1(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """Modified Gauss hypergeometric function ᴹF(λ₁, λ₂; λ₃; z; ρ).

    Representations:

    ``default``
        The Euler-type integral over (0, 1) with (1 − zt)^{−λ₁}; needs z < 1.
    ``half_line``
        The same integral after u = t/(1 − t).
    ``trig``
        The same integral after t = sin²θ.
    ``series_of_betas``
        The defining series of modified beta values; needs |z| < 1.
    """
    if representation not in GAUSS_REPRESENTATIONS:
        raise DomainError(f"unknown representation {representation!r}; choose from {GAUSS_REPRESENTATIONS}")
    if not math.isfinite(l1):
        raise DomainError(f"lambda1 must be finite, got {l1!r}")
    _check_lambdas(l2, l3)
    _check_rho(rho)
    _check_tol(tol)
    if not (math.isfinite(z) and z < 1.0):
        raise DomainError(f"the M-Gauss function needs z < 1, got {z!r}")
    if representation == "series_of_betas" and not abs(z) < 1.0:
        raise DomainError(f"the series of modified betas needs |z| < 1, got {z!r}")
    return _m_gauss(params, float(l1), float(l2), float(l3), float(z), float(rho), float(tol), representation)


# ---------------------------------------------------------------- M-confluent


@lru_cache(maxsize=1 << 14)
def _m_confluent(
    params: ParameterSet, l2: float, l3: float, z: float, rho: float, tol: float, rep: str
) -> EvalResult:
    if rep == "series_of_betas":
        return _series_of_betas(params, lambda n: 1.0, l2, l3, z, rho, tol, 0.0)
    ktol = kernel_tolerance(tol)
    trace = _Trace()
    c = l3 - l2
    scale = math.exp(-_log_beta(l2, c))
    if rep == "default":
        def integrand(t: float, tc: float):
            log_t, log_tc = math.log(t), math.log(tc)
            kz = _neg_ratio(rho, log_t + log_tc)
            log_w = (l2 - 1.0) * log_t + (c - 1.0) * log_tc + z * t
            return _weighted_kernel(params, kz, log_w, ktol, trace)
    else:
        def integrand(u: float, uc: float):
            log_u, log_uc = math.log(u), math.log(uc)
            kz = _neg_ratio(rho, log_u + log_uc)
            log_w = (c - 1.0) * log_u + (l2 - 1.0) * log_uc + z * uc
            return _weighted_kernel(params, kz, log_w, ktol, trace)

    cfg = _config(params, tol, ktol, rho, _log_beta(l2, c) + max(z, 0.0), "unit_interval")
    res = integrate_unit(integrand, cfg, with_complement=True)
    return _from_quadrature(res, trace, "unit_interval" if rep == "default" else "reflected", scale)


def m_confluent_phi(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """Modified confluent hypergeometric function ᴹΦ(λ₂; λ₃; z; ρ).

    Representations:

    ``default``
        ∫₀¹ t^{λ₂−1}(1−t)^{λ₃−λ₂−1} e^{zt} M dt / B(λ₂, λ₃−λ₂). For z > 30
        the value is computed as e^z ᴹΦ(λ₃−λ₂; λ₃; −z; ρ), which keeps the
        exponential weight bounded by one.
    ``reflected``
        The same integral after u = 1 − t.
    ``series_of_betas``
        The defining series of modified beta values.
    """
    if representation not in CONFLUENT_REPRESENTATIONS:
        raise DomainError(
            f"unknown representation {representation!r}; choose from {CONFLUENT_REPRESENTATIONS}"
        )
    _check_lambdas(l2, l3)
    _check_rho(rho)
    _check_tol(tol)
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}")
    l2, l3, z, rho, tol = float(l2), float(l3), float(z), float(rho), float(tol)
    if representation == "default" and z > KUMMER_THRESHOLD:
        return _kummer(params, l2, l3, z, rho, tol, "default")
    return _m_confluent(params, l2, l3, z, rho, tol, representation)


def _kummer(params: ParameterSet, l2: float, l3: float, z: float, rho: float, tol: float, rep: str) -> EvalResult:
    inner = _m_confluent(params, l3 - l2, l3, -z, rho, tol, rep)
    factor = math.exp(z)
    value = factor * inner.value
    err = factor * inner.abs_error_estimate + 2 * EPS * abs(value) * (1.0 + abs(z))
    return EvalResult(
        value,
        err,
        inner.terms_used,
        factor * inner.max_term_magnitude,
        inner.precision_tier,
        inner.converged,
        inner.nodes_evaluated,
        "kummer",
    )


# ---------------------------------------------------------------- transformations


def _scaled(res: EvalResult, factor: float, method: str, extra_rel: float = 0.0) -> EvalResult:
    value = factor * res.value
    err = abs(factor) * res.abs_error_estimate + (2 * EPS + extra_rel) * abs(value)
    return EvalResult(
        value,
        err,
        res.terms_used,
        abs(factor) * res.max_term_magnitude,
        res.precision_tier,
        res.converged,
        res.nodes_evaluated,
        method,
    )


def _pochhammer_ratio(numer: tuple[float, ...], denom: tuple[float, ...], n: int) -> tuple[float, float]:
    """Product of Pochhammer symbols and a bound on its relative rounding error."""
    value = 1.0
    for lam in numer:
        value *= pochhammer(lam, n)
    for lam in denom:
        value /= pochhammer(lam, n)
    return value, 2 * EPS * n * (len(numer) + len(denom) + 1)


def m_gauss_derivative(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    n: int,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """n-th z-derivative of ᴹF as (λ₁)ₙ(λ₂)ₙ/(λ₃)ₙ · ᴹF(λ₁+n, λ₂+n; λ₃+n; z; ρ)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"derivative order must be a nonnegative integer, got {n!r}")
    base = m_gauss_2f1(params, l1 + n, l2 + n, l3 + n, z, rho, tol, representation)
    if n == 0:
        return base
    factor, rel = _pochhammer_ratio((l1, l2), (l3,), n)
    return _scaled(base, factor, f"derivative:{base.method}", rel)


def m_confluent_derivative(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    n: int,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """n-th z-derivative of ᴹΦ as (λ₂)ₙ/(λ₃)ₙ · ᴹΦ(λ₂+n; λ₃+n; z; ρ)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"derivative order must be a nonnegative integer, got {n!r}")
    base = m_confluent_phi(params, l2 + n, l3 + n, z, rho, tol, representation)
    if n == 0:
        return base
    factor, rel = _pochhammer_ratio((l2,), (l3,), n)
    return _scaled(base, factor, f"derivative:{base.method}", rel)


def m_gauss_pfaff(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """(1 − z)^{−λ₁} ᴹF(λ₁, λ₃ − λ₂; λ₃; z/(z − 1); ρ).

    Equal to ᴹF(λ₁, λ₂; λ₃; z; ρ). For z < 0 the mapped argument lies in
    (0, 1), which makes this the better-conditioned route for the series
    of modified betas.
    """
    if not (math.isfinite(z) and z < 1.0):
        raise DomainError(f"the Pfaff transformation needs z < 1, got {z!r}")
    _check_lambdas(l2, l3)
    mapped = z / (z - 1.0)
    inner = m_gauss_2f1(params, l1, l3 - l2, l3, mapped, rho, tol, representation)
    log_factor = -l1 * math.log1p(-z)
    factor = math.exp(log_factor)
    return _scaled(inner, factor, f"pfaff:{inner.method}", 2 * EPS * (1.0 + abs(log_factor)))


def m_confluent_kummer(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    rho: float,
    tol: float = DEFAULT_TOL,
    representation: str = "default",
) -> EvalResult:
    """e^z ᴹΦ(λ₃ − λ₂; λ₃; −z; ρ), which equals ᴹΦ(λ₂; λ₃; z; ρ)."""
    _check_lambdas(l2, l3)
    _check_rho(rho)
    _check_tol(tol)
    if representation not in CONFLUENT_REPRESENTATIONS:
        raise DomainError(
            f"unknown representation {representation!r}; choose from {CONFLUENT_REPRESENTATIONS}"
        )
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}")
    return _kummer(params, float(l2), float(l3), float(z), float(rho), float(tol), representation)


# ---------------------------------------------------------------- product and binomial forms


def m_gamma_product_integral(
    params: ParameterSet, x: float, y: float, rho: float, tol: float = PRODUCT_TOL
) -> EvalResult:
    """The (θ, r) double integral equal to ᴹΓ(x; ρ)·ᴹΓ(y; ρ).

    4∫₀^{π/2}∫₀^∞ r^{2(x+y)−1} cos^{2x−1}θ sin^{2y−1}θ
    · M(−r²cos²θ − ρ/(r²cos²θ)) · M(−r²sin²θ − ρ/(r²sin²θ)) dr dθ
    """
    _check_positive(x=x, y=y)
    _check_rho(rho)
    _check_tol(tol)
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def factor(log_sq: float):
        # argument −u − ρ/u with u = exp(log_sq), evaluated without underflow
        u = math.exp(log_sq) if log_sq < 700.0 else math.inf
        arg = -u + _neg_ratio(rho, log_sq)
        k = m_series_kernel(params, max(arg, -1e300), ktol)
        if not k.converged:
            trace.converged = False
        if k.precision_tier == "extended":
            trace.extended = True
        if k.method == "decay_floor":
            return 0.0, 0.0
        return k.value, k.abs_error_estimate

    def integrand(theta: float, theta_c: float, r: float):
        log_r = math.log(r)
        log_sin = math.log(math.sin(theta))
        log_cos = math.log(math.sin(theta_c))
        kc, ec = factor(2.0 * (log_r + log_cos))
        if kc == 0.0 and ec == 0.0:
            return 0.0
        ks, es = factor(2.0 * (log_r + log_sin))
        if ks == 0.0 and es == 0.0:
            return 0.0
        log_w = (2.0 * (x + y) - 1.0) * log_r + (2.0 * x - 1.0) * log_cos + (2.0 * y - 1.0) * log_sin
        w = 4.0 * math.exp(log_w)
        value = w * kc * ks
        err = w * (abs(kc) * es + abs(ks) * ec + ec * es)
        return value, err

    res = integrate_2d(integrand, QuadratureConfig(rel_tol=tol, scheme="tensor_2d"), with_complement=True)
    return _from_quadrature(res, trace, "tensor_2d")


@dataclass(frozen=True)
class BinomialSum:
    """Truncated binomial expansion of ᴹB(x, 1 − y; ρ) and its tail bound."""

    value: float
    abs_error_estimate: float
    truncation_bound: float
    terms: int
    converged: bool
    components: tuple = field(default=(), repr=False)


def m_beta_binomial_sum(
    params: ParameterSet, x: float, y: float, rho: float, terms: int = 40, tol: float = 1e-12
) -> BinomialSum:
    """Σₙ₌₀^{N−1} (y)ₙ/n! · ᴹB(x+n, 1; ρ) with a bound on the omitted tail.

    For 0 < y < 1 the omitted tail is at most
    (y)_N/N! · ∫₀¹ t^{x+N−1}(1−t)^{−1} |M(−ρ/(t(1−t)))| dt, which is finite
    for ρ > 0 because the kernel vanishes at t = 1.
    """
    _check_positive(x=x, rho=rho)
    if not 0.0 < y < 1.0:
        raise DomainError(f"the binomial expansion is used for 0 < y < 1, got {y!r}")
    if terms < 1:
        raise DomainError(f"need at least one term, got {terms!r}")
    acc = CompensatedAccumulator()
    err = 0.0
    converged = True
    coef = 1.0
    parts = []
    for n in range(terms):
        if n:
            coef *= (y + n - 1) / n
        mb = m_beta(params, x + n, 1.0, rho, tol)
        converged = converged and mb.converged
        acc.add(coef * mb.value)
        err += coef * mb.abs_error_estimate
        parts.append(coef * mb.value)
    err += acc.rounding_bound()
    tail_coef = coef * (y + terms - 1) / terms
    ktol = kernel_tolerance(tol)
    trace = _Trace()

    def tail_integrand(t: float, tc: float):
        k = m_series_kernel(params, _neg_ratio(rho, math.log(t) + math.log(tc)), ktol)
        if not k.converged:
            trace.converged = False
        if k.method == "decay_floor":
            return 0.0
        mag = abs(k.value) + k.abs_error_estimate
        if mag == 0.0:
            return 0.0
        return math.exp((x + terms - 1.0) * math.log(t) - math.log(tc)) * mag

    tail = integrate_unit(tail_integrand, QuadratureConfig(rel_tol=1e-6), with_complement=True)
    bound = tail_coef * (tail.value + tail.abs_error_estimate)
    return BinomialSum(
        acc.value,
        err,
        bound,
        terms,
        converged and tail.converged and trace.converged,
        tuple(parts),
    )


# ---------------------------------------------------------------- request object


@dataclass(frozen=True)
class ModifiedFunctionRequest:
    """One evaluation of a modified function, as parsed by the command line.

    ``arguments`` holds the main arguments by name: ``x`` for the gamma
    function, ``x, y`` for the beta function, ``l1, l2, l3, z`` for the
    Gauss function and ``l2, l3, z`` for the confluent function.
    """

    function: str
    params: ParameterSet
    arguments: tuple[tuple[str, float], ...]
    rho: float = 0.0
    representation: str = "default"
    tolerance: float = DEFAULT_TOL

    def argument(self, name: str) -> float:
        for key, value in self.arguments:
            if key == name:
                return value
        raise DomainError(f"{self.function} needs argument {name!r}")

    def evaluate(self) -> EvalResult:
        a = self.argument
        rep = self.representation
        if self.function == "m_gamma":
            if rep != "default":
                raise DomainError("m_gamma has only the default representation")
            return m_gamma(self.params, a("x"), self.rho, self.tolerance)
        if self.function == "m_beta":
            if rep not in BETA_REPRESENTATIONS:
                raise DomainError(f"unknown representation {rep!r}; choose from {BETA_REPRESENTATIONS}")
            fn = {"default": m_beta, "trig": m_beta_trig, "half_line": m_beta_half_line}[rep]
            return fn(self.params, a("x"), a("y"), self.rho, self.tolerance)
        if self.function == "m_gauss":
            return m_gauss_2f1(
                self.params, a("l1"), a("l2"), a("l3"), a("z"), self.rho, self.tolerance, rep
            )
        if self.function == "m_confluent":
            return m_confluent_phi(self.params, a("l2"), a("l3"), a("z"), self.rho, self.tolerance, rep)
        raise DomainError(f"unknown modified function {self.function!r}")


def clear_caches() -> None:
    for fn in (_m_gamma, _m_beta, _m_beta_trig, _m_beta_half_line, _m_gauss, _m_confluent):
        fn.cache_clear()
