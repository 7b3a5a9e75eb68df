"""Parameter specializations of the modified functions, checked against oracles.

Three executable families:

``classic``
    Classical kernel (exp) at ρ = 0, against Γ, B, ₂F₁ and Φ.
``chaudhry``
    Classical kernel at ρ > 0: the extended gamma and beta functions with
    weight exp(−t − ρ/t) and exp(−ρ/(t(1−t))).
``ozergin``
    Kernel ₁F₁(κ; μ; ·), which is the M-series with p = q = 1 and
    α = β = 1 because Γ(m + 1) = m! supplies the factorial.

Oracles never go through the M-series or the package's quadrature: they are
closed forms, ``math.gamma``, the scalar-core ₂F₁/Φ routines, or QUADPACK
(``scipy.integrate.quad``) over an integrand built from those.

Documentation entries record other published normalizations that differ
from an executable case only by a constant factor; they are reported as
SKIPPED.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .config import Tolerances, tolerances
from .errors import DomainError, MSpecialError
from .modfun import m_beta, m_confluent_phi, m_gamma, m_gauss_2f1
from .mseries import ParameterSet
from .results import EvalResult
from .scalar_core import classical_2f1, classical_phi
from .transforms import IdentityReport, TolerancePolicy, compare, failed_report

FAMILIES = ("classic", "chaudhry", "ozergin")

CLASSICAL = ParameterSet.classical()

# QUADPACK settings for the oracles
_QUAD_OPTS = {"epsabs": 0.0, "epsrel": 1e-12, "limit": 400}


@dataclass(frozen=True)
class ReductionCase:
    """One specialization: a modified function, its inputs and an oracle.

    ``points`` lists the argument dictionaries evaluated by the case;
    ``oracle`` maps one such dictionary to the reference value.
    """

    case_id: str
    family: str
    function: str
    params: ParameterSet | None
    points: tuple[dict, ...]
    oracle: Callable[[dict], float] | None
    citation: str
    documentation_only: bool = False
    note: str = ""

    def to_record(self) -> dict:
        return {
            "case_id": self.case_id,
            "family": self.family,
            "function": self.function,
            "params": None if self.params is None else self.params.to_record(),
            "points": [dict(p) for p in self.points],
            "citation": self.citation,
            "documentation_only": self.documentation_only,
            "note": self.note,
        }


# ---------------------------------------------------------------- oracles


def _quad_result(fn: Callable[[float], float], lo: float, hi: float) -> float:
    value, _ = integrate.quad(fn, lo, hi, **_QUAD_OPTS)
    return value


def _phi_kernel(kappa: float, mu: float, arg: float) -> float:
    if arg == -math.inf or arg < -1e300:
        return 0.0
    return classical_phi(kappa, mu, arg).value


def _beta_weight_integral(kernel: Callable[[float], float], x: float, y: float, extra=lambda t: 1.0) -> float:
    """∫₀¹ t^{x−1}(1−t)^{y−1} extra(t) kernel(t) dt, split at 1/2 so each half has one singular end."""

    def integrand(t: float) -> float:
        if t <= 0.0 or t >= 1.0:
            return 0.0
        return t ** (x - 1.0) * (1.0 - t) ** (y - 1.0) * extra(t) * kernel(t)

    return _quad_result(integrand, 0.0, 0.5) + _quad_result(integrand, 0.5, 1.0)


def _classic_beta_oracle(p: dict) -> float:
    return math.exp(math.lgamma(p["x"]) + math.lgamma(p["y"]) - math.lgamma(p["x"] + p["y"]))


def _chaudhry_beta_oracle(p: dict) -> float:
    rho = p["rho"]
    return _beta_weight_integral(lambda t: math.exp(-rho / (t * (1.0 - t))), p["x"], p["y"])


def _ozergin_beta_oracle(kappa: float, mu: float):
    def oracle(p: dict) -> float:
        rho = p["rho"]
        return _beta_weight_integral(lambda t: _phi_kernel(kappa, mu, -rho / (t * (1.0 - t))), p["x"], p["y"])

    return oracle


def _ozergin_gamma_oracle(kappa: float, mu: float):
    def oracle(p: dict) -> float:
        x, rho = p["x"], p["rho"]

        def integrand(t: float) -> float:
            return t ** (x - 1.0) * _phi_kernel(kappa, mu, -t - rho / t)

        # the ₁F₁ kernel decays algebraically, so the upper part needs the infinite-range rule
        return _quad_result(integrand, 0.0, 1.0) + _quad_result(integrand, 1.0, math.inf)

    return oracle


def _ozergin_gauss_oracle(kappa: float, mu: float):
    def oracle(p: dict) -> float:
        l1, l2, l3, z, rho = p["l1"], p["l2"], p["l3"], p["z"], p["rho"]
        norm = math.exp(math.lgamma(l2) + math.lgamma(l3 - l2) - math.lgamma(l3))
        total = _beta_weight_integral(
            lambda t: _phi_kernel(kappa, mu, -rho / (t * (1.0 - t))),
            l2,
            l3 - l2,
            lambda t: (1.0 - z * t) ** (-l1),
        )
        return total / norm

    return oracle


def _ozergin_confluent_oracle(kappa: float, mu: float):
    def oracle(p: dict) -> float:
        l2, l3, z, rho = p["l2"], p["l3"], p["z"], p["rho"]
        norm = math.exp(math.lgamma(l2) + math.lgamma(l3 - l2) - math.lgamma(l3))
        total = _beta_weight_integral(
            lambda t: _phi_kernel(kappa, mu, -rho / (t * (1.0 - t))),
            l2,
            l3 - l2,
            lambda t: math.exp(z * t),
        )
        return total / norm

    return oracle


# ---------------------------------------------------------------- catalog


def _points(**columns) -> tuple[dict, ...]:
    names = list(columns)
    return tuple(dict(zip(names, row)) for row in zip(*columns.values()))


def _grid(xs, ys) -> tuple[dict, ...]:
    return tuple({"x": x, "y": y, "rho": 0.0} for x in xs for y in ys)


def _documentation(case_id: str, function: str, note: str) -> ReductionCase:
    return ReductionCase(case_id, "documentation", function, None, (), None, case_id, True, note)


def _build_catalog() -> tuple[ReductionCase, ...]:
    root_pi = math.sqrt(math.pi)
    oz_beta = ParameterSet((0.5,), (1.5,), 1.0, 1.0)
    oz_beta_b = ParameterSet((1.0,), (2.0,), 1.0, 1.0)
    oz_kernel = ParameterSet((2.5,), (3.5,), 1.0, 1.0)
    cases = [
        ReductionCase(
            "classic_gamma", "classic", "m_gamma", CLASSICAL,
            tuple({"x": x, "rho": 0.0} for x in (0.5, 1.0, 1.5, 2.0, 3.5, 4.0, 5.0)),
            lambda p: math.gamma(p["x"]),
            "classic: modified gamma at the exp kernel and ρ = 0 is Γ(x)",
        ),
        ReductionCase(
            "classic_beta", "classic", "m_beta", CLASSICAL,
            _grid((0.5, 1.0, 2.0, 3.5), (0.5, 1.0, 2.0, 3.5)),
            _classic_beta_oracle,
            "classic: modified beta at the exp kernel and ρ = 0 is B(x, y)",
        ),
        ReductionCase(
            "classic_2f1", "classic", "m_gauss", CLASSICAL,
            _points(
                l1=(1.0, 0.5, 1.5, 2.0, 0.25, -2.0),
                l2=(1.0, 1.0, 0.5, 1.0, 1.5, 1.0),
                l3=(2.0, 3.0, 2.0, 3.5, 4.0, 2.5),
                z=(0.5, -0.7, 0.3, -0.5, 0.8, 0.6),
                rho=(0.0,) * 6,
            ),
            lambda p: classical_2f1(p["l1"], p["l2"], p["l3"], p["z"]).value,
            "classic: modified Gauss function at the exp kernel and ρ = 0 is ₂F₁",
        ),
        ReductionCase(
            "classic_2f1_log", "classic", "m_gauss", CLASSICAL,
            _points(l1=(1.0,) * 3, l2=(1.0,) * 3, l3=(2.0,) * 3, z=(-0.5, 0.25, 0.5), rho=(0.0,) * 3),
            lambda p: -math.log1p(-p["z"]) / p["z"],
            "classic: ₂F₁(1, 1; 2; z) = −ln(1 − z)/z",
        ),
        ReductionCase(
            "classic_phi", "classic", "m_confluent", CLASSICAL,
            _points(
                l2=(1.0, 2.0, 0.5, 1.0, 1.5, 2.0),
                l3=(2.0, 5.0, 1.5, 3.0, 2.0, 3.0),
                z=(1.0, -3.0, 2.5, -10.0, 0.5, -1.0),
                rho=(0.0,) * 6,
            ),
            lambda p: classical_phi(p["l2"], p["l3"], p["z"]).value,
            "classic: modified confluent function at the exp kernel and ρ = 0 is Φ",
        ),
        ReductionCase(
            "classic_phi_exp", "classic", "m_confluent", CLASSICAL,
            _points(l2=(1.0,) * 3, l3=(2.0,) * 3, z=(-2.0, 0.5, 1.0), rho=(0.0,) * 3),
            lambda p: math.expm1(p["z"]) / p["z"],
            "classic: Φ(1; 2; z) = (e^z − 1)/z",
        ),
        ReductionCase(
            "chaudhry_gamma", "chaudhry", "m_gamma", CLASSICAL,
            tuple({"x": 0.5, "rho": r} for r in (0.25, 1.0, 4.0)),
            lambda p: root_pi * math.exp(-2.0 * math.sqrt(p["rho"])),
            "chaudhry: extended gamma ∫t^{x−1}e^{−t−ρ/t}dt; at x = 1/2 it is √π e^{−2√ρ}",
        ),
        ReductionCase(
            "chaudhry_gamma_three_halves", "chaudhry", "m_gamma", CLASSICAL,
            tuple({"x": 1.5, "rho": r} for r in (0.25, 1.0, 4.0)),
            lambda p: root_pi * math.exp(-2.0 * math.sqrt(p["rho"])) * (math.sqrt(p["rho"]) + 0.5),
            "chaudhry: at x = 3/2 the extended gamma is √π e^{−2√ρ}(√ρ + 1/2)",
        ),
        ReductionCase(
            "chaudhry_beta", "chaudhry", "m_beta", CLASSICAL,
            _points(x=(1.0, 2.0, 0.5, 1.5), y=(1.0, 3.0, 1.5, 2.0), rho=(1.0, 0.5, 2.0, 0.25)),
            _chaudhry_beta_oracle,
            "chaudhry: extended beta ∫t^{x−1}(1−t)^{y−1}e^{−ρ/(t(1−t))}dt",
        ),
        ReductionCase(
            "ozergin_beta", "ozergin", "m_beta", oz_beta,
            _points(x=(1.0, 2.0, 0.5), y=(1.0, 3.0, 1.5), rho=(1.0, 0.5, 0.25)),
            _ozergin_beta_oracle(0.5, 1.5),
            "ozergin: beta with kernel ₁F₁(κ; μ; −ρ/(t(1−t))), κ = 1/2, μ = 3/2",
        ),
        ReductionCase(
            "ozergin_beta_integer", "ozergin", "m_beta", oz_beta_b,
            _points(x=(1.5, 2.5), y=(2.0, 1.0), rho=(1.0, 4.0)),
            _ozergin_beta_oracle(1.0, 2.0),
            "ozergin: beta with kernel ₁F₁(1; 2; ·) = (1 − e^{·})/(−·)",
        ),
        ReductionCase(
            "ozergin_gamma", "ozergin", "m_gamma", oz_kernel,
            _points(x=(1.0, 1.5), rho=(1.0, 0.5)),
            _ozergin_gamma_oracle(2.5, 3.5),
            "ozergin: gamma with kernel ₁F₁(κ; μ; −t − ρ/t); needs x < κ for the algebraic tail",
        ),
        ReductionCase(
            "ozergin_2f1", "ozergin", "m_gauss", oz_beta,
            _points(l1=(0.5, 1.0), l2=(1.0, 0.5), l3=(2.5, 2.0), z=(0.5, -0.5), rho=(1.0, 0.5)),
            _ozergin_gauss_oracle(0.5, 1.5),
            "ozergin: Gauss function over the ₁F₁-kernel beta",
        ),
        ReductionCase(
            "ozergin_phi", "ozergin", "m_confluent", oz_beta,
            _points(l2=(1.0, 0.5), l3=(2.5, 2.0), z=(0.5, -2.0), rho=(1.0, 0.5)),
            _ozergin_confluent_oracle(0.5, 1.5),
            "ozergin: confluent function over the ₁F₁-kernel beta",
        ),
    ]
    scaling = "differs from an executed case by the constant Γ(μ₁)⋯Γ(μ_q)/Γ(κ₁)⋯Γ(κ_p)"
    relabel = "a relabeling of an executed case with the same kernel and arguments"
    cases += [
        _documentation("abubakar_form", "m_beta", f"normalized M-series kernel; {scaling}"),
        _documentation("ata_kiymaz_form", "m_gauss", f"normalized M-series kernel; {scaling}"),
        _documentation("kulip_form", "m_beta", relabel),
        _documentation("lee_form", "m_beta", relabel),
        _documentation("parmar_form", "m_gauss", relabel),
        _documentation("rahman_form", "m_confluent", relabel),
        _documentation("shadab_form", "m_beta", relabel),
        _documentation("srivastava_form", "m_gamma", relabel),
    ]
    return tuple(cases)


_CATALOG = _build_catalog()


def list_cases(family: str | None = None) -> list[ReductionCase]:
    """The registered catalog; a family filter leaves out the documentation entries."""
    if family is None:
        return list(_CATALOG)
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {FAMILIES}")
    return [c for c in _CATALOG if c.family == family]


# ---------------------------------------------------------------- running


def _evaluate(case: ReductionCase, point: dict, eval_tol: float) -> EvalResult:
    p = point
    if case.function == "m_gamma":
        return m_gamma(case.params, p["x"], p["rho"], eval_tol)
    if case.function == "m_beta":
        return m_beta(case.params, p["x"], p["y"], p["rho"], eval_tol)
    if case.function == "m_gauss":
        return m_gauss_2f1(case.params, p["l1"], p["l2"], p["l3"], p["z"], p["rho"], eval_tol)
    if case.function == "m_confluent":
        return m_confluent_phi(case.params, p["l2"], p["l3"], p["z"], p["rho"], eval_tol)
    raise DomainError(f"unknown function {case.function!r}")


def family_tolerance(family: str, table: Tolerances) -> float:
    return {"classic": table.classic_rel, "chaudhry": table.chaudhry_rel, "ozergin": table.ozergin_rel}[family]


def run_reduction(
    case: ReductionCase, tol: float | None = None, table: Tolerances | None = None
) -> list[IdentityReport]:
    """One report per point of ``case``; documentation entries give one SKIPPED report.

    ``tol`` overrides the family's relative tolerance. The oracle value is
    exact for closed forms and carries QUADPACK's accuracy otherwise, so
    the comparison is purely relative.
    """
    table = table or tolerances()
    theorem_id = f"reduction:{case.case_id}"
    if case.documentation_only:
        return [
            IdentityReport(
                theorem_id, {"case": case.case_id}, None, None, math.nan, math.nan, math.nan,
                False, "documentation entry, not executed", {"note": case.note}, skipped=True,
            )
        ]
    rel = family_tolerance(case.family, table) if tol is None else tol
    policy = TolerancePolicy(rel, 0.0, 0.0)
    reports = []
    for point in case.points:
        inputs = {"case": case.case_id, "params": case.params.to_record(), **point}
        try:
            lhs = _evaluate(case, point, table.eval_tol)
            value = case.oracle(point)
        except MSpecialError as exc:
            reports.append(failed_report(theorem_id, inputs, exc))
            continue
        rhs = EvalResult(value, 0.0, 0, 0.0, "standard", math.isfinite(value), 0, "oracle")
        reports.append(compare(theorem_id, inputs, lhs, rhs, policy))
    return reports


def run_catalog(family: str | None = None, tol: float | None = None, table: Tolerances | None = None):
    """Run every case of the catalog (or one family) in catalog order."""
    out = []
    for case in list_cases(family):
        out.append((case, run_reduction(case, tol, table)))
    return out
