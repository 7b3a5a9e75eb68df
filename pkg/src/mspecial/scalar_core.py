"""Scalar special functions and compensated summation.

Everything here works on plain Python floats. The hypergeometric routines
return :class:`~mspecial.results.EvalResult` so that callers can see the
error estimate and the number of terms that were summed.
"""

from __future__ import annotations

import math

from scipy.special import zeta as _zeta

from .errors import ConvergenceError, DomainError
from .results import EvalResult

EPS = 2.0**-53
EULER_GAMMA = 0.57721566490153286061
DEFAULT_TERM_CAP = 100_000

# ln Γ(1+ε) = −γε + Σ_{k≥2} ζ(k)(−ε)^k/k, used where lgamma has a zero nearby.
_ZETA_OVER_K = tuple(float(_zeta(k)) / k for k in range(2, 80))


def _lgamma_near_one(eps: float) -> float:
    acc = 0.0
    power = -eps
    for coef in _ZETA_OVER_K:
        power *= -eps
        acc += coef * power
    return -EULER_GAMMA * eps + acc


def log_gamma(x: float) -> float:
    """Natural log of Γ(x) for x > 0.

    Raises
    ------
    DomainError
        If ``x`` is not a positive finite number.
    """
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if 0.5 < x < 1.5:
        return _lgamma_near_one(x - 1.0)
    if 1.5 <= x < 2.6:
        eps = x - 2.0
        return _lgamma_near_one(eps) + math.log1p(eps)
    return math.lgamma(x)


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def log_abs_gamma(x: float) -> tuple[float, int]:
    """Return ``(ln|Γ(x)|, sign Γ(x))`` for any real x that is not a pole."""
    if is_nonpositive_integer(x):
        raise DomainError(f"Γ has a pole at {x!r}")
    if x > 0.0:
        return log_gamma(x), 1
    sign = -1 if int(math.floor(x)) % 2 else 1
    return math.lgamma(x), sign


def rgamma(x: float) -> float:
    """1/Γ(x), which is zero at the poles of Γ."""
    if is_nonpositive_integer(x):
        return 0.0
    if 0.0 < x < 170.0:
        return 1.0 / math.gamma(x)
    lg, sign = log_abs_gamma(x)
    return sign * math.exp(-lg)


def pochhammer(lam: float, n: int) -> float:
    """Rising factorial (λ)ₙ = λ(λ+1)···(λ+n−1) as a direct product."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    out = 1.0
    for k in range(n):
        out *= lam + k
    return out


def classical_beta(x: float, y: float) -> float:
    """Euler beta function B(x, y) for positive arguments."""
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"classical_beta requires x, y > 0, got ({x!r}, {y!r})")
    return math.exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y))


class CompensatedAccumulator:
    """Neumaier-compensated running sum.

    Tracks the largest absolute term seen so that callers can measure how
    much cancellation the sum went through.
    """

    __slots__ = ("sum", "compensation", "max_abs", "count")

    def __init__(self) -> None:
        self.sum = 0.0
        self.compensation = 0.0
        self.max_abs = 0.0
        self.count = 0

    def add(self, term: float) -> None:
        s = self.sum
        t = s + term
        if abs(s) >= abs(term):
            self.compensation += (s - t) + term
        else:
            self.compensation += (term - t) + s
        self.sum = t
        self.count += 1
        a = abs(term)
        if a > self.max_abs:
            self.max_abs = a

    @property
    def value(self) -> float:
        return self.sum + self.compensation

    def rounding_bound(self) -> float:
        """Bound on the accumulated rounding error of :attr:`value`."""
        return 2.0 * EPS * abs(self.value) + 2.0 * self.count * EPS * EPS * self.max_abs * self.count


class SmallTermRule:
    """Truncation test: a run of small terms while the term ratio decays.

    A term counts as small when ``|term| <= rel_tol * |sum|``; the series is
    declared converged after ``needed`` consecutive small terms, provided the
    last term magnitude is below the one before it.
    """

    __slots__ = ("rel_tol", "needed", "run", "prev")

    def __init__(self, rel_tol: float, needed: int = 3) -> None:
        self.rel_tol = rel_tol
        self.needed = needed
        self.run = 0
        self.prev = math.inf

    def update(self, term_abs: float, sum_abs: float) -> bool:
        decaying = term_abs < self.prev or term_abs == 0.0
        self.prev = term_abs
        if term_abs <= self.rel_tol * sum_abs and decaying:
            self.run += 1
        else:
            self.run = 0
        return self.run >= self.needed


def _geometric_tail(last_abs: float, ratio: float) -> float:
    if ratio >= 1.0:
        return math.inf
    return last_abs * ratio / (1.0 - ratio)


def classical_2f1(
    l1: float,
    l2: float,
    l3: float,
    z: float,
    rel_tol: float = EPS,
    term_cap: int = DEFAULT_TERM_CAP,
) -> EvalResult:
    """Gauss hypergeometric ₂F₁(λ₁, λ₂; λ₃; z) by its power series, |z| < 1."""
    if not abs(z) < 1.0:
        raise DomainError(f"classical_2f1 series needs |z| < 1, got {z!r}")
    if is_nonpositive_integer(l3):
        raise DomainError(f"λ₃ must not be a nonpositive integer, got {l3!r}")
    acc = CompensatedAccumulator()
    rule = SmallTermRule(rel_tol)
    term = 1.0
    weighted = 0.0
    ratio = 0.0
    for n in range(term_cap):
        acc.add(term)
        weighted += (n + 1) * abs(term)
        if term == 0.0:
            # (λ₁)ₙ or (λ₂)ₙ hit zero: the series terminated exactly.
            return EvalResult(
                acc.value, acc.rounding_bound() + 4 * EPS * weighted, n + 1, acc.max_abs
            )
        if rule.update(abs(term), abs(acc.value)):
            tail = _geometric_tail(abs(term), max(ratio, abs(z)))
            err = tail + acc.rounding_bound() + 4 * EPS * weighted
            return EvalResult(acc.value, err, n + 1, acc.max_abs)
        nxt = term * (l1 + n) * (l2 + n) / ((l3 + n) * (n + 1)) * z
        ratio = abs(nxt / term)
        term = nxt
    raise ConvergenceError(f"classical_2f1 did not converge in {term_cap} terms at z={z!r}")


def _phi_direct(a: float, b: float, z: float, rel_tol: float, term_cap: int) -> EvalResult:
    acc = CompensatedAccumulator()
    rule = SmallTermRule(rel_tol)
    term = 1.0
    weighted = 0.0
    ratio = 0.0
    for n in range(term_cap):
        acc.add(term)
        weighted += (n + 1) * abs(term)
        if term == 0.0:
            return EvalResult(
                acc.value, acc.rounding_bound() + 4 * EPS * weighted, n + 1, acc.max_abs
            )
        if rule.update(abs(term), abs(acc.value)):
            err = _geometric_tail(abs(term), ratio) + acc.rounding_bound() + 4 * EPS * weighted
            return EvalResult(acc.value, err, n + 1, acc.max_abs)
        nxt = term * (a + n) / ((b + n) * (n + 1)) * z
        ratio = abs(nxt / term)
        term = nxt
    raise ConvergenceError(f"classical_phi did not converge in {term_cap} terms at z={z!r}")


def _phi_kummer_scaled(a: float, b: float, x: float, rel_tol: float, term_cap: int) -> EvalResult:
    """Φ(a; b; −x) = e^{−x} Φ(b−a; b; x), with the e^{−x} folded into each term."""
    c = b - a
    acc = CompensatedAccumulator()
    rule = SmallTermRule(rel_tol)
    log_mag = -x
    sign = 1.0
    weighted = 0.0
    prev = 0.0
    lx = math.log(x)
    for n in range(term_cap):
        term = sign * math.exp(log_mag)
        acc.add(term)
        weighted += (n + 1 + x) * abs(term)
        if rule.update(abs(term), abs(acc.value)) and n > x:
            ratio = abs(term / prev) if prev else 0.0
            err = _geometric_tail(abs(term), ratio) + acc.rounding_bound() + 4 * EPS * weighted
            return EvalResult(acc.value, err, n + 1, acc.max_abs)
        prev = term
        f = (c + n) / ((b + n) * (n + 1))
        if f == 0.0:
            return EvalResult(
                acc.value, acc.rounding_bound() + 4 * EPS * weighted, n + 1, acc.max_abs
            )
        if f < 0.0:
            sign = -sign
        log_mag += math.log(abs(f)) + lx
    raise ConvergenceError(f"classical_phi did not converge in {term_cap} terms at z={-x!r}")


def _phi_large_negative(a: float, b: float, x: float) -> EvalResult | None:
    """Large-x expansion of Φ(a; b; −x); ``None`` when it cannot reach full accuracy."""
    if is_nonpositive_integer(b - a):
        return None
    lg_ba, s_ba = log_abs_gamma(b - a)
    lg_b, s_b = log_abs_gamma(b)
    # size of the exponentially small companion relative to the algebraic part
    if not is_nonpositive_integer(a):
        lg_a, _ = log_abs_gamma(a)
        companion = lg_ba - lg_a - x + (2 * a - b) * math.log(x)
        if companion > math.log(EPS * 1e-2):
            return None
    acc = CompensatedAccumulator()
    term = 1.0
    prev_abs = math.inf
    weighted = 0.0
    c = 1.0 + a - b
    for n in range(200):
        if abs(term) > prev_abs:
            return None
        acc.add(term)
        weighted += (n + 1) * abs(term)
        nxt = term * (a + n) * (c + n) / ((n + 1) * x)
        if abs(nxt) <= EPS * 0.25 * abs(acc.value):
            scale = s_b * s_ba * math.exp(lg_b - lg_ba - a * math.log(x))
            exponent_err = 2 * EPS * (abs(lg_b) + abs(lg_ba) + abs(a * math.log(x)))
            rel = abs(nxt) / abs(acc.value) + 4 * EPS * weighted / abs(acc.value) + 8 * EPS
            rel += exponent_err
            value = scale * acc.value
            return EvalResult(value, abs(value) * rel, n + 1, abs(scale) * acc.max_abs)
        prev_abs = abs(term)
        term = nxt
    return None


def classical_phi(
    l2: float,
    l3: float,
    z: float,
    rel_tol: float = EPS,
    term_cap: int = DEFAULT_TERM_CAP,
) -> EvalResult:
    """Kummer confluent hypergeometric Φ(λ₂; λ₃; z) = ₁F₁(λ₂; λ₃; z).

    Non-negative and small negative z use the power series directly. For
    z < 0 the routine switches to Kummer's relation (which makes the terms
    one-signed), to the terminating polynomial when λ₃−λ₂ is a nonpositive
    integer, and to the large-argument expansion when that is already
    accurate to working precision.
    """
    a, b = l2, l3
    if is_nonpositive_integer(b):
        raise DomainError(f"λ₃ must not be a nonpositive integer, got {b!r}")
    if z >= -1.0 or is_nonpositive_integer(a):
        return _phi_direct(a, b, z, rel_tol, term_cap)
    x = -z
    if x > 30.0 and not is_nonpositive_integer(b - a):
        asym = _phi_large_negative(a, b, x)
        if asym is not None:
            return asym
    return _phi_kummer_scaled(a, b, x, rel_tol, term_cap)
