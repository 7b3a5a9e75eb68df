"""Numerical Mellin, Laplace and beta transforms and the transform identities.

Each ``check_*`` function computes one side of a transform identity by
integrating a modified function over ρ, the other side from a closed form
in terms of classical functions or modified functions with appended
parameters, and compares the two under :class:`TolerancePolicy`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable

from .config import tolerances
from .errors import DomainError, MSpecialError
from .modfun import m_beta, m_confluent_phi, m_gamma, m_gauss_2f1
from .mseries import ParameterSet
from .quadrature import QuadratureConfig, QuadratureResult, integrate_half_line, integrate_unit
from .results import EvalResult
from .scalar_core import EPS, classical_2f1, classical_beta, classical_phi, log_gamma

THEOREMS = (
    "mellin_m_beta",
    "laplace_m_beta",
    "beta_m_beta",
    "mellin_m_gauss",
    "laplace_m_gauss",
    "beta_m_gauss",
    "mellin_m_confluent",
    "laplace_m_confluent",
    "beta_m_confluent",
)


@dataclass(frozen=True)
class TolerancePolicy:
    """Pass when |L − R| ≤ abs_tol + rel_tol·max(|L|, |R|) + error_scale·(e_L + e_R)."""

    rel_tol: float = 1e-5
    abs_tol: float = 0.0
    error_scale: float = 3.0

    @classmethod
    def from_defaults(cls) -> "TolerancePolicy":
        table = tolerances()
        return cls(table.check_rel, table.check_abs, table.error_scale)

    def bound(self, lhs: EvalResult, rhs: EvalResult) -> float:
        scale = max(abs(lhs.value), abs(rhs.value))
        return (
            self.abs_tol
            + self.rel_tol * scale
            + self.error_scale * (lhs.abs_error_estimate + rhs.abs_error_estimate)
        )


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity instance."""

    theorem_id: str
    inputs: dict
    lhs: EvalResult | None
    rhs: EvalResult | None
    abs_diff: float
    rel_diff: float
    tolerance_used: float
    passed: bool
    cause: str | None = None
    details: dict = field(default_factory=dict)
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIPPED"
        return "PASS" if self.passed else "FAIL"

    def to_record(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "inputs": self.inputs,
            "lhs": None if self.lhs is None else self.lhs.to_record(),
            "rhs": None if self.rhs is None else self.rhs.to_record(),
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "tolerance_used": self.tolerance_used,
            "passed": self.passed,
            "cause": self.cause,
            "details": self.details,
        }


def compare(
    theorem_id: str,
    inputs: dict,
    lhs: EvalResult,
    rhs: EvalResult,
    policy: TolerancePolicy | None = None,
    details: dict | None = None,
) -> IdentityReport:
    """Judge two evaluations of the same quantity under ``policy``.

    A side that did not converge fails the report whatever the
    discrepancy, because its value must not be trusted.
    """
    policy = policy or TolerancePolicy.from_defaults()
    diff = abs(lhs.value - rhs.value)
    scale = max(abs(lhs.value), abs(rhs.value))
    rel = diff / scale if scale > 0.0 else 0.0
    bound = policy.bound(lhs, rhs)
    cause = None
    if not lhs.converged:
        cause = "left side did not converge"
    elif not rhs.converged:
        cause = "right side did not converge"
    elif not math.isfinite(diff):
        cause = "non-finite discrepancy"
    elif diff > bound:
        cause = "discrepancy exceeds tolerance"
    return IdentityReport(
        theorem_id, inputs, lhs, rhs, diff, rel, bound, cause is None, cause, details or {}
    )


def failed_report(theorem_id: str, inputs: dict, exc: Exception) -> IdentityReport:
    return IdentityReport(
        theorem_id, inputs, None, None, math.nan, math.nan, math.nan, False, f"{type(exc).__name__}: {exc}"
    )


def run_identity(
    theorem_id: str,
    inputs: dict,
    sides: Callable[[], tuple[EvalResult, EvalResult]],
    policy: TolerancePolicy | None = None,
) -> IdentityReport:
    """Evaluate both sides and compare; evaluation failures become failed reports."""
    try:
        lhs, rhs = sides()
    except MSpecialError as exc:
        return failed_report(theorem_id, inputs, exc)
    return compare(theorem_id, inputs, lhs, rhs, policy)


# ---------------------------------------------------------------- numerical transforms


def _split(out) -> tuple[float, float, bool]:
    if isinstance(out, EvalResult):
        return out.value, out.abs_error_estimate, out.converged
    if type(out) is tuple:
        return out[0], out[1], True
    return out, 0.0, True


def _as_eval(res: QuadratureResult, converged: bool, method: str) -> EvalResult:
    return EvalResult(
        res.value,
        res.abs_error_estimate,
        0,
        0.0,
        "standard",
        res.converged and converged,
        res.nodes_evaluated,
        method,
    )


def mellin_numeric(f: Callable, s: float, tol: float = 1e-8) -> QuadratureResult:
    """∫₀^∞ ρ^{s−1} f(ρ) dρ by exp-sinh quadrature.

    ``f`` may return a float, a ``(value, error)`` pair or an
    :class:`EvalResult`; a non-converged inner result makes the whole
    result non-converged.
    """
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s!r}")
    state = {"ok": True}

    def integrand(rho: float):
        value, err, ok = _split(f(rho))
        if not ok:
            state["ok"] = False
        if value == 0.0 and err == 0.0:
            return 0.0
        w = math.exp((s - 1.0) * math.log(rho))
        return w * value, w * err

    res = integrate_half_line(integrand, QuadratureConfig(rel_tol=tol, scheme="half_line"))
    return QuadratureResult(res.value, res.abs_error_estimate, res.nodes_evaluated, res.converged and state["ok"])


def laplace_numeric(f: Callable, s: float, tol: float = 1e-8) -> QuadratureResult:
    """∫₀^∞ e^{−sρ} f(ρ) dρ by exp-sinh quadrature."""
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError(f"the Laplace transform is taken at s > 0, got {s!r}")
    state = {"ok": True}

    def integrand(rho: float):
        w = math.exp(-s * rho)
        if w == 0.0:
            return 0.0
        value, err, ok = _split(f(rho))
        if not ok:
            state["ok"] = False
        return w * value, w * err

    res = integrate_half_line(integrand, QuadratureConfig(rel_tol=tol, scheme="half_line"))
    return QuadratureResult(res.value, res.abs_error_estimate, res.nodes_evaluated, res.converged and state["ok"])


def beta_numeric(f: Callable, omega: float, w: float, tol: float = 1e-8) -> QuadratureResult:
    """∫₀¹ ρ^{ω−1}(1−ρ)^{w−1} f(ρ) dρ by tanh-sinh quadrature."""
    if not (math.isfinite(omega) and omega > 0.0 and math.isfinite(w) and w > 0.0):
        raise DomainError(f"the beta transform needs omega, w > 0, got ({omega!r}, {w!r})")
    state = {"ok": True}

    def integrand(rho: float, rho_c: float):
        value, err, ok = _split(f(rho))
        if not ok:
            state["ok"] = False
        if value == 0.0 and err == 0.0:
            return 0.0
        weight = math.exp((omega - 1.0) * math.log(rho) + (w - 1.0) * math.log(rho_c))
        return weight * value, weight * err

    res = integrate_unit(integrand, QuadratureConfig(rel_tol=tol), with_complement=True)
    return QuadratureResult(res.value, res.abs_error_estimate, res.nodes_evaluated, res.converged and state["ok"])


# ---------------------------------------------------------------- helpers


def _product(*parts: EvalResult, factor: float = 1.0, method: str = "closed_form") -> EvalResult:
    """Product of evaluations with first-order error propagation."""
    value = factor
    rel = 0.0
    converged = True
    extended = False
    nodes = 0
    for p in parts:
        value *= p.value
        if p.value != 0.0:
            rel += p.abs_error_estimate / abs(p.value)
        converged = converged and p.converged
        extended = extended or p.precision_tier == "extended"
        nodes += p.nodes_evaluated
    zero_err = sum(p.abs_error_estimate for p in parts if p.value == 0.0)
    err = abs(value) * (rel + 4 * EPS * (len(parts) + 1)) + zero_err * abs(factor)
    return EvalResult(value, err, 0, 0.0, "extended" if extended else "standard", converged, nodes, method)


def _exact(value: float, rel_err: float = 4 * EPS) -> EvalResult:
    return EvalResult(value, abs(value) * rel_err, 1, abs(value), "standard", True, 0, "closed_form")


def _beta_ratio(l2: float, l3: float, s: float) -> float:
    """B(λ₂+s, λ₃+s−λ₂)/B(λ₂, λ₃−λ₂), formed in log space."""
    c = l3 - l2
    return math.exp(
        log_gamma(l2 + s) + log_gamma(c + s) - log_gamma(l3 + 2 * s)
        - log_gamma(l2) - log_gamma(c) + log_gamma(l3)
    )


def _check_s(s: float) -> None:
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError(f"the transform variable must satisfy s > 0, got {s!r}")


def _check_omega(omega: float, w: float) -> None:
    if not (math.isfinite(omega) and omega > 0.0 and math.isfinite(w) and w > 0.0):
        raise DomainError(f"the beta transform needs omega, w > 0, got ({omega!r}, {w!r})")


def _laplace_params(params: ParameterSet) -> ParameterSet:
    return params.appended(upper=(1.0,))


def _beta_params(params: ParameterSet, omega: float, w: float) -> ParameterSet:
    return params.appended(upper=(omega,), lower=(omega + w,))


def _inputs(params: ParameterSet, **values) -> dict:
    out = {"params": params.to_record()}
    out.update(values)
    return out


def _mellin_rhs_gamma(params: ParameterSet, s: float, eval_tol: float) -> EvalResult:
    return m_gamma(params, s, 0.0, eval_tol)


def _resolve(policy: TolerancePolicy | None, eval_tol: float | None, transform_tol: float | None):
    table = tolerances()
    return (
        policy or TolerancePolicy.from_defaults(),
        table.eval_tol if eval_tol is None else eval_tol,
        table.transform_tol if transform_tol is None else transform_tol,
    )


# ---------------------------------------------------------------- M-beta


def check_mellin_m_beta(
    params: ParameterSet,
    x: float,
    y: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Mellin transform in ρ of ᴹB(x, y; ρ) against B(x+s, y+s)·ᴹΓ(s; 0).

    Raises
    ------
    DomainError
        For s ≤ 0, x + s ≤ 0 or y + s ≤ 0.
    """
    _check_s(s)
    if not (x + s > 0.0 and y + s > 0.0):
        raise DomainError("the Mellin transform needs x + s > 0 and y + s > 0")
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, x=x, y=y, s=s)

    def sides():
        quad = mellin_numeric(lambda rho: m_beta(params, x, y, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "mellin_numeric")
        rhs = _product(_mellin_rhs_gamma(params, s, eval_tol), factor=classical_beta(x + s, y + s))
        return lhs, rhs

    return run_identity("mellin_m_beta", inputs, sides, policy)


def check_laplace_m_beta(
    params: ParameterSet,
    x: float,
    y: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Laplace transform in ρ of ᴹB against (1/s)·ᴹB with upper 1 appended, at ρ = 1/s."""
    _check_s(s)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, x=x, y=y, s=s)
    augmented = _laplace_params(params)

    def sides():
        quad = laplace_numeric(lambda rho: m_beta(params, x, y, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "laplace_numeric")
        rhs = _product(m_beta(augmented, x, y, 1.0 / s, eval_tol), factor=1.0 / s)
        return lhs, rhs

    return run_identity("laplace_m_beta", inputs, sides, policy)


def check_beta_transform_m_beta(
    params: ParameterSet,
    x: float,
    y: float,
    omega: float,
    w: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Beta transform in ρ of ᴹB against B(ω, w)·ᴹB with (ω; ω + w) appended, at ρ = 1."""
    _check_omega(omega, w)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, x=x, y=y, omega=omega, w=w)
    augmented = _beta_params(params, omega, w)

    def sides():
        quad = beta_numeric(lambda rho: m_beta(params, x, y, rho, eval_tol), omega, w, transform_tol)
        lhs = _as_eval(quad, True, "beta_numeric")
        rhs = _product(m_beta(augmented, x, y, 1.0, eval_tol), factor=classical_beta(omega, w))
        return lhs, rhs

    return run_identity("beta_m_beta", inputs, sides, policy)


# ---------------------------------------------------------------- M-Gauss


def check_mellin_m_gauss(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Mellin transform of ᴹF against ᴹΓ(s;0)·B(λ₂+s, λ₃+s−λ₂)/B(λ₂, λ₃−λ₂)·₂F₁(λ₁, λ₂+s; λ₃+2s; z)."""
    _check_s(s)
    if not abs(z) < 1.0:
        raise DomainError(f"the right side uses the ₂F₁ series, which needs |z| < 1, got {z!r}")
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l1=l1, l2=l2, l3=l3, z=z, s=s)

    def sides():
        quad = mellin_numeric(lambda rho: m_gauss_2f1(params, l1, l2, l3, z, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "mellin_numeric")
        hyp = classical_2f1(l1, l2 + s, l3 + 2 * s, z)
        rhs = _product(_mellin_rhs_gamma(params, s, eval_tol), hyp, factor=_beta_ratio(l2, l3, s))
        return lhs, rhs

    return run_identity("mellin_m_gauss", inputs, sides, policy)


def check_laplace_m_gauss(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Laplace transform of ᴹF against (1/s)·ᴹF with upper 1 appended, at ρ = 1/s."""
    _check_s(s)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l1=l1, l2=l2, l3=l3, z=z, s=s)
    augmented = _laplace_params(params)

    def sides():
        quad = laplace_numeric(lambda rho: m_gauss_2f1(params, l1, l2, l3, z, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "laplace_numeric")
        rhs = _product(m_gauss_2f1(augmented, l1, l2, l3, z, 1.0 / s, eval_tol), factor=1.0 / s)
        return lhs, rhs

    return run_identity("laplace_m_gauss", inputs, sides, policy)


def check_beta_transform_m_gauss(
    params: ParameterSet,
    l1: float,
    l2: float,
    l3: float,
    z: float,
    omega: float,
    w: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Beta transform of ᴹF against B(ω, w)·ᴹF with (ω; ω + w) appended, at ρ = 1."""
    _check_omega(omega, w)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l1=l1, l2=l2, l3=l3, z=z, omega=omega, w=w)
    augmented = _beta_params(params, omega, w)

    def sides():
        quad = beta_numeric(lambda rho: m_gauss_2f1(params, l1, l2, l3, z, rho, eval_tol), omega, w, transform_tol)
        lhs = _as_eval(quad, True, "beta_numeric")
        rhs = _product(m_gauss_2f1(augmented, l1, l2, l3, z, 1.0, eval_tol), factor=classical_beta(omega, w))
        return lhs, rhs

    return run_identity("beta_m_gauss", inputs, sides, policy)


# ---------------------------------------------------------------- M-confluent


def check_mellin_m_confluent(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Mellin transform of ᴹΦ against ᴹΓ(s;0)·B(λ₂+s, λ₃+s−λ₂)/B(λ₂, λ₃−λ₂)·Φ(λ₂+s; λ₃+2s; z)."""
    _check_s(s)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l2=l2, l3=l3, z=z, s=s)

    def sides():
        quad = mellin_numeric(lambda rho: m_confluent_phi(params, l2, l3, z, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "mellin_numeric")
        hyp = classical_phi(l2 + s, l3 + 2 * s, z)
        rhs = _product(_mellin_rhs_gamma(params, s, eval_tol), hyp, factor=_beta_ratio(l2, l3, s))
        return lhs, rhs

    return run_identity("mellin_m_confluent", inputs, sides, policy)


def check_laplace_m_confluent(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    s: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Laplace transform of ᴹΦ against (1/s)·ᴹΦ with upper 1 appended, at ρ = 1/s."""
    _check_s(s)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l2=l2, l3=l3, z=z, s=s)
    augmented = _laplace_params(params)

    def sides():
        quad = laplace_numeric(lambda rho: m_confluent_phi(params, l2, l3, z, rho, eval_tol), s, transform_tol)
        lhs = _as_eval(quad, True, "laplace_numeric")
        rhs = _product(m_confluent_phi(augmented, l2, l3, z, 1.0 / s, eval_tol), factor=1.0 / s)
        return lhs, rhs

    return run_identity("laplace_m_confluent", inputs, sides, policy)


def check_beta_transform_m_confluent(
    params: ParameterSet,
    l2: float,
    l3: float,
    z: float,
    omega: float,
    w: float,
    policy: TolerancePolicy | None = None,
    *,
    eval_tol: float | None = None,
    transform_tol: float | None = None,
) -> IdentityReport:
    """Beta transform of ᴹΦ against B(ω, w)·ᴹΦ with (ω; ω + w) appended, at ρ = 1."""
    _check_omega(omega, w)
    policy, eval_tol, transform_tol = _resolve(policy, eval_tol, transform_tol)
    inputs = _inputs(params, l2=l2, l3=l3, z=z, omega=omega, w=w)
    augmented = _beta_params(params, omega, w)

    def sides():
        quad = beta_numeric(
            lambda rho: m_confluent_phi(params, l2, l3, z, rho, eval_tol), omega, w, transform_tol
        )
        lhs = _as_eval(quad, True, "beta_numeric")
        rhs = _product(m_confluent_phi(augmented, l2, l3, z, 1.0, eval_tol), factor=classical_beta(omega, w))
        return lhs, rhs

    return run_identity("beta_m_confluent", inputs, sides, policy)


CHECKS = {
    "mellin_m_beta": check_mellin_m_beta,
    "laplace_m_beta": check_laplace_m_beta,
    "beta_m_beta": check_beta_transform_m_beta,
    "mellin_m_gauss": check_mellin_m_gauss,
    "laplace_m_gauss": check_laplace_m_gauss,
    "beta_m_gauss": check_beta_transform_m_gauss,
    "mellin_m_confluent": check_mellin_m_confluent,
    "laplace_m_confluent": check_laplace_m_confluent,
    "beta_m_confluent": check_beta_transform_m_confluent,
}


# ---------------------------------------------------------------- fuzz grid


def fuzz_parameter_sets() -> tuple[tuple[str, ParameterSet], ...]:
    """The three kernels of the default grid.

    The non-classical sets use dyadic parameters so that every shifted
    value κ + m, μ + m is exact in binary floating point.
    """
    return (
        ("classical", ParameterSet.classical()),
        ("p1q2", ParameterSet((3.25,), (2.25, 1.0), 0.25, 1.5)),
        ("p2q2", ParameterSet((0.5, 0.25), (-0.5, -0.75), 1.0, 1.0)),
    )


S_VALUES = (0.5, 1.0, 2.0)
OMEGA_VALUES = (1.0, 2.5)
Z_VALUES = (-0.5, 0.0, 0.5)

_BASE_ARGUMENTS = {
    "m_beta": {"x": 1.5, "y": 2.0},
    "m_gauss": {"l1": 0.5, "l2": 1.0, "l3": 2.5},
    "m_confluent": {"l2": 1.0, "l3": 2.5},
}


@dataclass(frozen=True)
class GridCase:
    theorem_id: str
    set_name: str
    params: ParameterSet
    arguments: dict

    def run(self, policy: TolerancePolicy | None = None) -> IdentityReport:
        report = CHECKS[self.theorem_id](self.params, **self.arguments, policy=policy)
        return replace(report, inputs={"set": self.set_name, **report.inputs})


def base_arguments(seed: int | None = None) -> dict:
    """Base arguments per function; a seed draws them at random on a 1/8 lattice."""
    if seed is None:
        return {k: dict(v) for k, v in _BASE_ARGUMENTS.items()}
    rng = random.Random(seed)

    def draw(lo: float, hi: float) -> float:
        return round(rng.uniform(lo, hi) * 8) / 8

    l2 = draw(0.5, 1.5)
    l2c = draw(0.5, 1.5)
    return {
        "m_beta": {"x": draw(0.75, 3.0), "y": draw(0.75, 3.0)},
        "m_gauss": {"l1": draw(0.25, 1.5), "l2": l2, "l3": l2 + draw(1.0, 2.0)},
        "m_confluent": {"l2": l2c, "l3": l2c + draw(1.0, 2.0)},
    }


def fuzz_grid(theorems: tuple[str, ...] | None = None, seed: int | None = None) -> list[GridCase]:
    """Every (theorem, parameter set, transform variable, z) instance, in a fixed order."""
    wanted = THEOREMS if theorems is None else tuple(theorems)
    unknown = [t for t in wanted if t not in CHECKS]
    if unknown:
        raise DomainError(f"unknown theorem ids {unknown}; choose from {THEOREMS}")
    args = base_arguments(seed)
    cases = []
    for theorem in THEOREMS:
        if theorem not in wanted:
            continue
        kind, target = theorem.split("_", 1)
        base = args[target]
        if kind == "beta":
            variables = [{"omega": o, "w": w} for o in OMEGA_VALUES for w in OMEGA_VALUES]
        else:
            variables = [{"s": s} for s in S_VALUES]
        zs = [{}] if target == "m_beta" else [{"z": z} for z in Z_VALUES]
        for set_name, params in fuzz_parameter_sets():
            for z in zs:
                for var in variables:
                    cases.append(GridCase(theorem, set_name, params, {**base, **z, **var}))
    return cases
