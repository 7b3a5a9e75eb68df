"""Double-exponential quadrature on (0, 1), (0, ∞) and (0, π/2)×(0, ∞).

The trapezoid rule is applied after a tanh-sinh substitution (unit
interval) or an exp-sinh substitution (half line). Each level halves the
step and reuses every node of the previous levels; the difference between
two successive levels is the error estimate.

Integrands may return either a float or a ``(value, abs_error)`` pair; the
second form lets callers fold the uncertainty of an inner evaluation into
the quadrature error estimate.

Evaluation walks from the centre of the transformed line outwards. Level 0
visits every node; later levels visit new nodes up to the furthest point
where a previous level still saw a significant contribution, then keep
going outward until three consecutive contributions are negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import DivergenceError, DomainError, IntegrandError

EPS = 2.0**-53
SCHEMES = ("unit_interval", "half_line", "tensor_2d")

_TAU_MAX = {"unit_interval": 6.0, "half_line": 6.5}
_NEGLIGIBLE_RUN = 3


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and level budget for one integration.

    Parameters
    ----------
    rel_tol, abs_tol
        Convergence is declared once the error estimate is below
        ``max(abs_tol, rel_tol * |value|)``.
    max_level
        Number of step halvings allowed after the unit-step level 0.
    min_level
        Levels that are always computed before convergence is tested.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 0.0
    max_level: int = 8
    scheme: str = "unit_interval"
    min_level: int = 3

    def __post_init__(self) -> None:
        if not self.rel_tol >= 1e-13:
            raise DomainError(f"rel_tol must be >= 1e-13, got {self.rel_tol!r}")
        if not self.abs_tol >= 0.0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if self.max_level < 3:
            raise DomainError(f"max_level must be >= 3, got {self.max_level!r}")
        if not 1 <= self.min_level <= self.max_level:
            raise DomainError("min_level must lie in [1, max_level]")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    nodes_evaluated: int
    converged: bool


# A node is (tau, t, complement, weight); weights exclude the step size h.
Node = tuple


def _unit_node(tau: float) -> Node:
    s = 0.5 * math.pi * math.sinh(tau)
    e = math.exp(-2.0 * abs(s))
    small = e / (1.0 + e)
    large = 1.0 / (1.0 + e)
    w = math.pi * math.cosh(tau) * e / ((1.0 + e) ** 2)
    if tau >= 0.0:
        return (tau, large, small, w)
    return (tau, small, large, w)


def _half_line_node(tau: float) -> Node:
    s = 0.5 * math.pi * math.sinh(tau)
    t = math.exp(s)
    return (tau, t, math.nan, 0.5 * math.pi * math.cosh(tau) * t)


@lru_cache(maxsize=64)
def _level_nodes(scheme: str, level: int) -> tuple[tuple[Node, ...], tuple[Node, ...]]:
    """New nodes of one level, split into (right side ascending, left side descending).

    The centre node of level 0 is placed at the head of the right side.
    """
    make = _unit_node if scheme == "unit_interval" else _half_line_node
    tau_max = _TAU_MAX[scheme]
    h = 2.0**-level
    if level == 0:
        right = [0.0] + [float(k) for k in range(1, int(tau_max) + 1)]
        left = [-float(k) for k in range(1, int(tau_max) + 1)]
    else:
        count = int(tau_max / h)
        right = [j * h for j in range(1, count + 1, 2)]
        left = [-tau for tau in right]
    return tuple(make(t) for t in right), tuple(make(t) for t in left)


class _Walker:
    """Sums one double-exponential rule level by level."""

    def __init__(self, fn: Callable, scheme: str, cfg: QuadratureConfig, with_complement: bool):
        self.fn = fn
        self.scheme = scheme
        self.cfg = cfg
        self.with_complement = with_complement
        self.raw = 0.0
        self.raw_comp = 0.0
        self.abs_raw = 0.0
        self.err_raw = 0.0
        self.nodes = 0
        self.reach = {1: 0.0, -1: 0.0}
        self.edge_hit = {1: False, -1: False}

    def _evaluate(self, node: Node) -> tuple[float, float]:
        tau, t, tc, w = node
        if self.with_complement:
            out = self.fn(t, tc)
        else:
            out = self.fn(t)
        if type(out) is tuple:
            value, err = out
        else:
            value, err = out, 0.0
        self.nodes += 1
        if not (math.isfinite(value) and math.isfinite(err)):
            raise IntegrandError(
                f"integrand returned {value!r} (error {err!r}) at node t={t!r} (tau={tau!r})"
            )
        return w * value, w * abs(err)

    def _accumulate(self, c: float, e: float) -> None:
        s = self.raw
        t = s + c
        if abs(s) >= abs(c):
            self.raw_comp += (s - t) + c
        else:
            self.raw_comp += (c - t) + s
        self.raw = t
        self.abs_raw += abs(c)
        self.err_raw += e

    def level(self, level: int, scale: float) -> float:
        """Evaluate the new nodes of ``level``; returns the truncation allowance."""
        h = 2.0**-level
        threshold = self._negligible(scale) / h
        right, left = _level_nodes(self.scheme, level)
        allowance = 0.0
        for side, nodes in ((1, right), (-1, left)):
            run = 0
            reach = self.reach[side]
            stopped = False
            for node in nodes:
                tau = abs(node[0])
                if run >= _NEGLIGIBLE_RUN and tau > self.reach[side] + 1.0:
                    stopped = True
                    break
                c, e = self._evaluate(node)
                self._accumulate(c, e)
                if abs(c) + e > threshold:
                    reach = max(reach, tau)
                    run = 0
                else:
                    run += 1
            self.reach[side] = reach
            if stopped:
                allowance += 2.0 * threshold * h
            elif nodes and reach >= abs(nodes[-1][0]):
                self.edge_hit[side] = True
        return allowance

    def run_level0(self) -> None:
        right, left = _level_nodes(self.scheme, 0)
        contributions = {}
        for side, nodes in ((1, right), (-1, left)):
            for node in nodes:
                c, e = self._evaluate(node)
                self._accumulate(c, e)
                contributions[node[0]] = abs(c) + e
        threshold = self._negligible(abs(self.total))
        for side, nodes in ((1, right), (-1, left)):
            reach = 0.0
            for node in nodes:
                if contributions[node[0]] > threshold:
                    reach = abs(node[0])
            self.reach[side] = reach
            if nodes and reach >= abs(nodes[-1][0]) and reach > 0.0:
                self.edge_hit[side] = True

    def _negligible(self, scale: float) -> float:
        floor = max(self.cfg.abs_tol, self.cfg.rel_tol * scale)
        return 1e-3 * floor

    @property
    def total(self) -> float:
        return self.raw + self.raw_comp


def _integrate(fn: Callable, scheme: str, cfg: QuadratureConfig, with_complement: bool) -> QuadratureResult:
    walker = _Walker(fn, scheme, cfg, with_complement)
    walker.run_level0()
    previous = walker.total
    estimate = previous
    err = math.inf
    allowance = 0.0
    converged = False
    for level in range(1, cfg.max_level + 1):
        h = 2.0**-level
        allowance = walker.level(level, abs(previous))
        estimate = walker.total * h
        diff = abs(estimate - previous)
        rounding = 8.0 * EPS * walker.abs_raw * h
        err = diff + walker.err_raw * h + allowance + rounding
        if walker.abs_raw == 0.0 and walker.err_raw == 0.0:
            # every node vanished: nothing to truncate
            err = 0.0
        previous = estimate
        if level >= cfg.min_level and err <= cfg.tolerance(estimate):
            converged = True
            break
    if scheme == "half_line" and walker.edge_hit[1] and walker.total != 0.0:
        raise DivergenceError(
            "integrand does not decay along the half line: contributions remain "
            "significant at the outermost node"
        )
    if walker.edge_hit[1] or walker.edge_hit[-1]:
        converged = False
    return QuadratureResult(estimate, err, walker.nodes, converged)


def integrate_unit(
    f: Callable, cfg: QuadratureConfig | None = None, *, with_complement: bool = False
) -> QuadratureResult:
    """Integrate ``f`` over (0, 1) with the tanh-sinh rule.

    With ``with_complement=True`` the integrand is called as ``f(t, 1 - t)``
    where the second argument is computed without cancellation, which keeps
    factors like ``(1 - t)**(y - 1)`` accurate near t = 1. The endpoints are
    never evaluated.
    """
    cfg = cfg or QuadratureConfig()
    return _integrate(f, "unit_interval", cfg, with_complement)


def integrate_half_line(f: Callable, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate ``f`` over (0, ∞) with the exp-sinh rule.

    Raises
    ------
    DivergenceError
        When contributions are still significant at the largest abscissa,
        which means the integrand does not decay fast enough.
    """
    cfg = cfg or QuadratureConfig(scheme="half_line")
    return _integrate(f, "half_line", cfg, False)


def integrate_2d(
    f: Callable,
    cfg: QuadratureConfig | None = None,
    *,
    with_complement: bool = False,
) -> QuadratureResult:
    """Integrate ``f(theta, r)`` over (0, π/2) × (0, ∞) as an iterated rule.

    The outer θ-integral uses the tanh-sinh rule, each inner r-integral the
    exp-sinh rule at a tenth of the outer tolerance. With
    ``with_complement=True`` the integrand is called as
    ``f(theta, pi/2 - theta, r)``, the middle argument computed accurately.
    """
    cfg = cfg or QuadratureConfig(rel_tol=1e-6, scheme="tensor_2d")
    inner_cfg = QuadratureConfig(
        rel_tol=max(1e-13, cfg.rel_tol * 0.1),
        abs_tol=cfg.abs_tol * 0.1,
        max_level=cfg.max_level,
        scheme="half_line",
        min_level=min(cfg.min_level, cfg.max_level),
    )
    half_pi = 0.5 * math.pi
    state = {"nodes": 0, "converged": True}

    def outer(u: float, uc: float):
        theta, theta_c = half_pi * u, half_pi * uc
        if with_complement:
            inner = integrate_half_line(lambda r: f(theta, theta_c, r), inner_cfg)
        else:
            inner = integrate_half_line(lambda r: f(theta, r), inner_cfg)
        state["nodes"] += inner.nodes_evaluated
        if not inner.converged:
            state["converged"] = False
        return half_pi * inner.value, half_pi * inner.abs_error_estimate

    outer_cfg = QuadratureConfig(
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_level=cfg.max_level,
        scheme="unit_interval",
        min_level=cfg.min_level,
    )
    res = integrate_unit(outer, outer_cfg, with_complement=True)
    return QuadratureResult(
        res.value,
        res.abs_error_estimate,
        res.nodes_evaluated + state["nodes"],
        res.converged and state["converged"],
    )
