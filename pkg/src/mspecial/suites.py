"""Identity suites for the modified functions.

Each suite is a deterministic list of :class:`IdentityCase` objects. A case
knows how to compute both sides of one identity instance and which
tolerance policy judges it; running it yields an
:class:`~mspecial.transforms.IdentityReport`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .config import Tolerances, tolerances
from .errors import DomainError, MSpecialError
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
from .results import EvalResult
from .scalar_core import EPS
from .transforms import (
    THEOREMS as TRANSFORM_THEOREMS,
    IdentityReport,
    TolerancePolicy,
    base_arguments,
    compare,
    failed_report,
    fuzz_grid,
    fuzz_parameter_sets,
)

GRID_XY = (0.5, 1.0, 2.0, 3.5)
GRID_RHO = (0.0, 0.25, 1.0, 4.0)
DERIVATIVE_STEPS = {1: 1e-4, 2: 1e-3}
FD_EVAL_TOL = 1e-12


@dataclass(frozen=True)
class IdentityCase:
    """One identity instance.

    ``sides`` returns ``(lhs, rhs)`` or ``(lhs, rhs, details)``; ``policy``
    builds the tolerance policy from the tolerance table and those details.
    """

    theorem_id: str
    inputs: dict
    sides: Callable[[], tuple]
    policy: Callable[[Tolerances, dict], TolerancePolicy]

    def run(self, table: Tolerances | None = None) -> IdentityReport:
        table = table or tolerances()
        try:
            lhs, rhs, *rest = self.sides()
        except MSpecialError as exc:
            return failed_report(self.theorem_id, self.inputs, exc)
        details = rest[0] if rest else {}
        return compare(self.theorem_id, self.inputs, lhs, rhs, self.policy(table, details), details)


def _errors_only(table: Tolerances, details: dict) -> TolerancePolicy:
    return TolerancePolicy(0.0, table.check_abs, table.error_scale)


def _combined(table: Tolerances, details: dict) -> TolerancePolicy:
    return TolerancePolicy(table.check_rel, table.check_abs, table.error_scale)


def _derivative_policy(table: Tolerances, details: dict) -> TolerancePolicy:
    return TolerancePolicy(table.derivative_rel, 0.0, 0.0)


def _product_policy(table: Tolerances, details: dict) -> TolerancePolicy:
    return TolerancePolicy(table.product_rel, 0.0, 0.0)


def _record(set_name: str, params, **values) -> dict:
    return {"set": set_name, "params": params.to_record(), **values}


def _sum(a: EvalResult, b: EvalResult) -> EvalResult:
    value = a.value + b.value
    return EvalResult(
        value,
        a.abs_error_estimate + b.abs_error_estimate + EPS * abs(value),
        0,
        0.0,
        "extended" if "extended" in (a.precision_tier, b.precision_tier) else "standard",
        a.converged and b.converged,
        a.nodes_evaluated + b.nodes_evaluated,
        "sum",
    )


# ---------------------------------------------------------------- M-beta grid suites


def recurrence_cases() -> list[IdentityCase]:
    """ᴹB(x, y+1) + ᴹB(x+1, y) = ᴹB(x, y) on the 4×4×4 grid per parameter set."""
    cases = []
    for (name, params), x, y, rho in product(fuzz_parameter_sets(), GRID_XY, GRID_XY, GRID_RHO):
        def sides(params=params, x=x, y=y, rho=rho):
            lhs = _sum(m_beta(params, x, y + 1.0, rho), m_beta(params, x + 1.0, y, rho))
            return lhs, m_beta(params, x, y, rho)

        cases.append(IdentityCase("m_beta_recurrence", _record(name, params, x=x, y=y, rho=rho), sides, _errors_only))
    return cases


_BETA_FORMS = {"default": m_beta, "trig": m_beta_trig, "half_line": m_beta_half_line}
_BETA_PAIRS = (("default", "trig"), ("default", "half_line"), ("trig", "half_line"))


def beta_representation_cases() -> list[IdentityCase]:
    """The three modified-beta integrals agree pairwise on the grid."""
    cases = []
    for (name, params), x, y, rho in product(fuzz_parameter_sets(), GRID_XY, GRID_XY, GRID_RHO):
        for left, right in _BETA_PAIRS:
            def sides(params=params, x=x, y=y, rho=rho, left=left, right=right):
                return _BETA_FORMS[left](params, x, y, rho), _BETA_FORMS[right](params, x, y, rho)

            inputs = _record(name, params, x=x, y=y, rho=rho, pair=f"{left}/{right}")
            cases.append(IdentityCase("m_beta_representations", inputs, sides, _errors_only))
    return cases


def symmetry_cases() -> list[IdentityCase]:
    """ᴹB(x, y) = ᴹB(y, x) for every unordered pair x < y of the grid."""
    cases = []
    for (name, params), x, y, rho in product(fuzz_parameter_sets(), GRID_XY, GRID_XY, GRID_RHO):
        if not x < y:
            continue

        def sides(params=params, x=x, y=y, rho=rho):
            return m_beta(params, x, y, rho), m_beta(params, y, x, rho)

        cases.append(IdentityCase("m_beta_symmetry", _record(name, params, x=x, y=y, rho=rho), sides, _errors_only))
    return cases


CONFLUENT_LAMBDAS = ((1.0, 2.5), (0.5, 2.0), (2.0, 5.0))
CONFLUENT_Z = (-3.0, -0.5, 0.5, 2.5)


def confluent_representation_cases() -> list[IdentityCase]:
    """The direct and reflected confluent integrals agree."""
    cases = []
    for (name, params), (l2, l3), z, rho in product(
        fuzz_parameter_sets(), CONFLUENT_LAMBDAS, CONFLUENT_Z, GRID_RHO
    ):
        def sides(params=params, l2=l2, l3=l3, z=z, rho=rho):
            return (
                m_confluent_phi(params, l2, l3, z, rho),
                m_confluent_phi(params, l2, l3, z, rho, representation="reflected"),
            )

        inputs = _record(name, params, l2=l2, l3=l3, z=z, rho=rho)
        cases.append(IdentityCase("m_confluent_representations", inputs, sides, _errors_only))
    return cases


# ---------------------------------------------------------------- binomial and product theorems

BINOMIAL_Y = (0.25, 0.5, 0.75)
BINOMIAL_X = (1.0, 2.5)
BINOMIAL_RHO = (0.5, 1.0)
BINOMIAL_TERMS = 40


def _binomial_policy(table: Tolerances, details: dict) -> TolerancePolicy:
    return TolerancePolicy(0.0, table.binomial_abs + details["truncation_bound"], 0.0)


def binomial_cases() -> list[IdentityCase]:
    """ᴹB(x, 1−y) against the truncated sum Σ (y)ₙ/n! ᴹB(x+n, 1), classical kernel."""
    cases = []
    name, params = fuzz_parameter_sets()[0]
    for x, y, rho in product(BINOMIAL_X, BINOMIAL_Y, BINOMIAL_RHO):
        def sides(x=x, y=y, rho=rho):
            total = m_beta_binomial_sum(params, x, y, rho, BINOMIAL_TERMS)
            lhs = EvalResult(
                total.value, total.abs_error_estimate, total.terms, 0.0, "standard", total.converged, 0, "binomial_sum"
            )
            return lhs, m_beta(params, x, 1.0 - y, rho, 1e-12), {"truncation_bound": total.truncation_bound}

        inputs = _record(name, params, x=x, y=y, rho=rho, terms=BINOMIAL_TERMS)
        cases.append(IdentityCase("m_beta_binomial", inputs, sides, _binomial_policy))
    return cases


PRODUCT_CASES = ((0.5, 0.5, 0.0), (0.5, 0.5, 1.0), (1.0, 2.0, 0.0), (1.0, 2.0, 1.0))


def gamma_product_cases() -> list[IdentityCase]:
    """ᴹΓ(x; ρ)·ᴹΓ(y; ρ) against the (θ, r) double integral, classical kernel."""
    cases = []
    name, params = fuzz_parameter_sets()[0]
    for x, y, rho in PRODUCT_CASES:
        def sides(x=x, y=y, rho=rho):
            gx, gy = m_gamma(params, x, rho), m_gamma(params, y, rho)
            value = gx.value * gy.value
            err = abs(gx.value) * gy.abs_error_estimate + abs(gy.value) * gx.abs_error_estimate
            rhs = EvalResult(value, err + 2 * EPS * abs(value), 0, 0.0, "standard", gx.converged and gy.converged, 0, "product")
            return m_gamma_product_integral(params, x, y, rho), rhs

        cases.append(IdentityCase("m_gamma_product", _record(name, params, x=x, y=y, rho=rho), sides, _product_policy))
    return cases


# ---------------------------------------------------------------- derivatives


def richardson_derivative(f: Callable[[float], EvalResult], z: float, n: int, h: float) -> EvalResult:
    """n-th derivative (n = 1 or 2) by central differences at h and h/2, Richardson-combined.

    The error estimate is the size of the Richardson correction plus the
    amplified evaluation errors.
    """
    if n not in (1, 2):
        raise DomainError(f"finite differences are provided for n = 1, 2, got {n!r}")

    def central(step: float) -> tuple[float, float]:
        if n == 1:
            plus, minus = f(z + step), f(z - step)
            value = (plus.value - minus.value) / (2 * step)
            err = (plus.abs_error_estimate + minus.abs_error_estimate) / (2 * step)
        else:
            plus, mid, minus = f(z + step), f(z), f(z - step)
            value = (plus.value - 2 * mid.value + minus.value) / step**2
            err = (plus.abs_error_estimate + 2 * mid.abs_error_estimate + minus.abs_error_estimate) / step**2
        return value, err

    coarse, coarse_err = central(h)
    fine, fine_err = central(0.5 * h)
    value = (4.0 * fine - coarse) / 3.0
    err = abs(fine - coarse) / 3.0 + (4.0 * fine_err + coarse_err) / 3.0
    return EvalResult(value, err, 0, 0.0, "standard", True, 0, "richardson")


DERIVATIVE_POINTS = (
    ("classical", -0.5, 0.1),
    ("classical", -0.2, 1.0),
    ("classical", 0.2, 0.1),
    ("classical", 0.5, 1.0),
    ("p1q2", -0.3, 0.5),
    ("p1q2", 0.3, 0.5),
    ("p2q2", -0.3, 0.5),
    ("p2q2", 0.3, 0.5),
)


def _sets() -> dict:
    return dict(fuzz_parameter_sets())


def gauss_derivative_cases() -> list[IdentityCase]:
    l1, l2, l3 = 0.5, 1.0, 3.0
    sets = _sets()
    cases = []
    for n in (1, 2):
        for name, z, rho in DERIVATIVE_POINTS:
            params = sets[name]

            def sides(params=params, z=z, rho=rho, n=n):
                formula = m_gauss_derivative(params, l1, l2, l3, z, rho, n, FD_EVAL_TOL)
                fd = richardson_derivative(
                    lambda v: m_gauss_2f1(params, l1, l2, l3, v, rho, FD_EVAL_TOL), z, n, DERIVATIVE_STEPS[n]
                )
                return formula, fd

            inputs = _record(name, params, l1=l1, l2=l2, l3=l3, z=z, rho=rho, n=n)
            cases.append(IdentityCase("m_gauss_derivative", inputs, sides, _derivative_policy))
    return cases


def confluent_derivative_cases() -> list[IdentityCase]:
    l2, l3 = 1.0, 2.5
    sets = _sets()
    cases = []
    for n in (1, 2):
        for name, z, rho in DERIVATIVE_POINTS:
            params = sets[name]

            def sides(params=params, z=z, rho=rho, n=n):
                formula = m_confluent_derivative(params, l2, l3, z, rho, n, FD_EVAL_TOL)
                fd = richardson_derivative(
                    lambda v: m_confluent_phi(params, l2, l3, v, rho, FD_EVAL_TOL), z, n, DERIVATIVE_STEPS[n]
                )
                return formula, fd

            inputs = _record(name, params, l2=l2, l3=l3, z=z, rho=rho, n=n)
            cases.append(IdentityCase("m_confluent_derivative", inputs, sides, _derivative_policy))
    return cases


# ---------------------------------------------------------------- transformation theorems

TRANSFORMATION_RHO = (0.25, 1.0)
PFAFF_Z = (-0.5, 0.0, 0.5)
# far enough below zero that only the mapped argument keeps the series usable
PFAFF_STABILIZED_Z = (-2.0, -5.0)
KUMMER_Z = (-0.5, 0.0, 0.5, 2.5, 35.0)


def pfaff_cases(seed: int | None = None) -> list[IdentityCase]:
    args = base_arguments(seed)["m_gauss"]
    l1, l2, l3 = args["l1"], args["l2"], args["l3"]
    cases = []
    for (name, params), rho in product(fuzz_parameter_sets(), TRANSFORMATION_RHO):
        for z in PFAFF_Z + PFAFF_STABILIZED_Z:
            rep = "series_of_betas" if z in PFAFF_STABILIZED_Z else "default"

            def sides(params=params, z=z, rho=rho, rep=rep):
                return m_gauss_2f1(params, l1, l2, l3, z, rho), m_gauss_pfaff(params, l1, l2, l3, z, rho, representation=rep)

            inputs = _record(name, params, l1=l1, l2=l2, l3=l3, z=z, rho=rho, mapped_representation=rep)
            cases.append(IdentityCase("m_gauss_pfaff", inputs, sides, _combined))
    return cases


def kummer_cases(seed: int | None = None) -> list[IdentityCase]:
    args = base_arguments(seed)["m_confluent"]
    l2, l3 = args["l2"], args["l3"]
    cases = []
    for (name, params), rho, z in product(fuzz_parameter_sets(), TRANSFORMATION_RHO, KUMMER_Z):
        def sides(params=params, z=z, rho=rho):
            direct = m_confluent_phi(params, l2, l3, z, rho, representation="reflected")
            return direct, m_confluent_kummer(params, l2, l3, z, rho)

        cases.append(IdentityCase("m_confluent_kummer", _record(name, params, l2=l2, l3=l3, z=z, rho=rho), sides, _combined))
    return cases


SERIES_Z = (-0.8, -0.4, 0.4, 0.8)


def series_cases(seed: int | None = None) -> list[IdentityCase]:
    """The series of modified betas against the default integrals for |z| ≤ 0.8."""
    args = base_arguments(seed)
    g, c = args["m_gauss"], args["m_confluent"]
    cases = []
    for (name, params), rho, z in product(fuzz_parameter_sets(), TRANSFORMATION_RHO, SERIES_Z):
        def gauss(params=params, z=z, rho=rho):
            return (
                m_gauss_2f1(params, g["l1"], g["l2"], g["l3"], z, rho),
                m_gauss_2f1(params, g["l1"], g["l2"], g["l3"], z, rho, representation="series_of_betas"),
            )

        def confluent(params=params, z=z, rho=rho):
            return (
                m_confluent_phi(params, c["l2"], c["l3"], z, rho),
                m_confluent_phi(params, c["l2"], c["l3"], z, rho, representation="series_of_betas"),
            )

        cases.append(IdentityCase("m_gauss_series", _record(name, params, **g, z=z, rho=rho), gauss, _errors_only))
        cases.append(IdentityCase("m_confluent_series", _record(name, params, **c, z=z, rho=rho), confluent, _errors_only))
    return cases


# ---------------------------------------------------------------- registry

_SUITES = (
    ("m_beta_recurrence", lambda seed: recurrence_cases()),
    ("m_beta_representations", lambda seed: beta_representation_cases()),
    ("m_beta_symmetry", lambda seed: symmetry_cases()),
    ("m_confluent_representations", lambda seed: confluent_representation_cases()),
    ("m_beta_binomial", lambda seed: binomial_cases()),
    ("m_gamma_product", lambda seed: gamma_product_cases()),
    ("m_gauss_derivative", lambda seed: gauss_derivative_cases()),
    ("m_confluent_derivative", lambda seed: confluent_derivative_cases()),
    ("m_gauss_pfaff", pfaff_cases),
    ("m_confluent_kummer", kummer_cases),
    ("m_gauss_series", series_cases),
    ("m_confluent_series", series_cases),
)

SUITE_THEOREMS = tuple(name for name, _ in _SUITES)
ALL_THEOREMS = TRANSFORM_THEOREMS + SUITE_THEOREMS


class _TransformCase:
    """Adapter giving a transform grid case the suite interface."""

    def __init__(self, case) -> None:
        self.case = case
        self.theorem_id = case.theorem_id

    def run(self, table: Tolerances | None = None) -> IdentityReport:
        table = table or tolerances()
        return self.case.run(_combined(table, {}))


def verification_cases(theorems: tuple[str, ...] | None = None, seed: int | None = None) -> list:
    """Every identity instance of the verification suite, in a fixed order."""
    wanted = ALL_THEOREMS if theorems is None else tuple(theorems)
    unknown = [t for t in wanted if t not in ALL_THEOREMS]
    if unknown:
        raise DomainError(f"unknown theorem ids {unknown}; choose from {ALL_THEOREMS}")
    cases: list = []
    transform_ids = tuple(t for t in TRANSFORM_THEOREMS if t in wanted)
    if transform_ids:
        cases.extend(_TransformCase(c) for c in fuzz_grid(transform_ids, seed))
    built = {}
    for name, build in _SUITES:
        if name not in wanted:
            continue
        if build not in built:
            built[build] = build(seed)
        cases.extend(c for c in built[build] if c.theorem_id == name)
    return cases


def run_verification(
    theorems: tuple[str, ...] | None = None,
    seed: int | None = None,
    table: Tolerances | None = None,
) -> list[IdentityReport]:
    """Run the suite sequentially and return the reports in case order."""
    table = table or tolerances()
    return [case.run(table) for case in verification_cases(theorems, seed)]
