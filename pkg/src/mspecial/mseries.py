"""The generalized M-series and its use as an integral kernel.

    M(z) = Σₘ (κ₁)ₘ…(κ_p)ₘ / ((μ₁)ₘ…(μ_q)ₘ) · zᵐ / Γ(αm + β)

:func:`m_series` sums the series itself. It uses double precision with
compensated summation first. When the terms cancel heavily (large negative
z) it re-sums in multiple precision, with the working precision sized from
the observed cancellation.

:func:`m_series_kernel` is what the integral layers call. On top of the
series it adds a decay floor (arguments far down the negative axis return
zero with a bound) and an integral continuation for parameter sets built
by :meth:`ParameterSet.appended`. The continuation covers regions where
the series diverges or would be too expensive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .errors import ConvergenceError, DivergenceError, DomainError, InvalidParameters
from .quadrature import QuadratureConfig, integrate_half_line, integrate_unit
from .results import EvalResult
from .scalar_core import (
    EPS,
    CompensatedAccumulator,
    SmallTermRule,
    is_nonpositive_integer,
    log_abs_gamma,
    log_gamma,
    rgamma,
)

DEFAULT_REL_TOL = 1e-13
DEFAULT_KERNEL_TOL = 1e-12
DEFAULT_TERM_CAP = 100_000
DEFAULT_Z_FLOOR = -746.0
ESCALATION_RATIO = 1e6
CONTINUATION_THRESHOLD = 64.0
# appended sets switch to the integral form before the direct sum gets this costly
MAX_PEAK_NATS = 700.0
# largest kernel magnitude at the decay floor for which the cut counts as exact
FLOOR_NEGLIGIBLE = 1e-60
AFFORDABLE_SCAN = 4000
# below this argument double precision is skipped: the cancellation is certain
DIRECT_EXTENDED_BELOW = -20.0

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ParameterSet:
    """Shape of an M-series: upper κ, lower μ, and the Γ(αm+β) exponents.

    ``z_floor`` is the decay floor used when the series serves as a kernel.
    Sets produced by :meth:`appended` remember the set they were built from,
    which enables the integral continuation in :func:`m_series_kernel`.
    """

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    alpha: float = 1.0
    beta: float = 1.0
    z_floor: float = DEFAULT_Z_FLOOR
    parent: "ParameterSet | None" = field(default=None, repr=False)
    added_upper: tuple[float, ...] = field(default=(), repr=False)
    added_lower: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        upper = tuple(float(v) for v in self.upper)
        lower = tuple(float(v) for v in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "z_floor", float(self.z_floor))
        object.__setattr__(self, "added_upper", tuple(float(v) for v in self.added_upper))
        object.__setattr__(self, "added_lower", tuple(float(v) for v in self.added_lower))
        for v in upper + lower + (self.alpha, self.beta):
            if not math.isfinite(v):
                raise InvalidParameters(f"parameters must be finite, got {v!r}")
        for v in upper + lower:
            if is_nonpositive_integer(v):
                raise InvalidParameters(f"κ and μ must not be nonpositive integers, got {v!r}")
        if not self.alpha > 0.0:
            raise InvalidParameters(f"alpha must be positive, got {self.alpha!r}")
        if len(upper) > len(lower) + 1:
            raise InvalidParameters(
                f"p = {len(upper)} exceeds q + 1 = {len(lower) + 1}; the series diverges for every z != 0"
            )
        if not self.z_floor < 0.0:
            raise InvalidParameters(f"z_floor must be negative, got {self.z_floor!r}")

    @classmethod
    def classical(cls) -> "ParameterSet":
        """κ = μ = 1, α = β = 1: the kernel is exp(z)."""
        return cls((1.0,), (1.0,), 1.0, 1.0)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def appended(self, upper: tuple = (), lower: tuple = ()) -> "ParameterSet":
        """A new set with extra upper/lower parameters; ``self`` is untouched."""
        return ParameterSet(
            self.upper + tuple(upper),
            self.lower + tuple(lower),
            self.alpha,
            self.beta,
            self.z_floor,
            parent=self,
            added_upper=tuple(upper),
            added_lower=tuple(lower),
        )

    def to_record(self) -> dict:
        return {
            "upper": list(self.upper),
            "lower": list(self.lower),
            "alpha": self.alpha,
            "beta": self.beta,
        }

    def label(self) -> str:
        up = ",".join(f"{v:g}" for v in self.upper)
        lo = ",".join(f"{v:g}" for v in self.lower)
        return f"M[{up};{lo};a={self.alpha:g},b={self.beta:g}]"


def check_convergence_region(params: ParameterSet, z: float) -> None:
    """Raise :class:`DivergenceError` when the series does not converge at z."""
    if z == 0.0 or params.p <= params.q:
        return
    # p = q + 1: term ratio behaves like z·m^{1-α}
    if params.alpha > 1.0:
        return
    if params.alpha == 1.0:
        if abs(z) < 1.0:
            return
        raise DivergenceError(f"p = q + 1 with alpha = 1 needs |z| < 1, got z={z!r}")
    raise DivergenceError(f"p = q + 1 with alpha < 1 diverges for every z != 0 (z={z!r})")


def _validate_tol(rel_tol: float) -> None:
    if not 1e-15 < rel_tol < 1e-2:
        raise DomainError(f"rel_tol must lie in (1e-15, 1e-2), got {rel_tol!r}")


# ---------------------------------------------------------------- standard tier


def _term_ratio_decreasing(params: ParameterSet) -> bool:
    return params.p - params.q - params.alpha < 0.0


class _NeedsExtended(Exception):
    """Internal signal: double precision cannot represent the terms."""


def _standard(params: ParameterSet, z: float, rel_tol: float, term_cap: int, small_terms: int):
    upper, lower, alpha, beta = params.upper, params.lower, params.alpha, params.beta
    lz = math.log(abs(z))
    zneg = z < 0.0
    log_a = 0.0
    log_a_err = 0.0
    sign_a = 1.0
    acc = CompensatedAccumulator()
    rule = SmallTermRule(rel_tol, small_terms)
    rounding = 0.0
    prev_abs = 0.0
    last_abs = 0.0
    for m in range(term_cap):
        arg = alpha * m + beta
        if not is_nonpositive_integer(arg):
            lg, sg = log_abs_gamma(arg)
            big = log_a - lg
            if big > 700.0:
                raise _NeedsExtended
            term = sign_a * sg * math.exp(big)
            mag = abs(term)
            rounding += mag * (log_a_err + EPS * (4.0 * abs(lg) + abs(big) + 2.0))
            acc.add(term)
            prev_abs, last_abs = last_abs, mag
            if rule.update(mag, abs(acc.value)):
                ratio = mag / prev_abs if prev_abs else 0.0
                if not _term_ratio_decreasing(params):
                    ratio = max(ratio, abs(z))
                tail = mag * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
                err = tail + rounding + acc.rounding_bound()
                return acc.value, err, m + 1, acc.max_abs
        step = lz
        pieces = abs(lz)
        flip = zneg
        for k in upper:
            v = k + m
            lv = math.log(abs(v))
            step += lv
            pieces += abs(lv)
            if v < 0.0:
                flip = not flip
        for k in lower:
            v = k + m
            lv = math.log(abs(v))
            step -= lv
            pieces += abs(lv)
            if v < 0.0:
                flip = not flip
        log_a += step
        log_a_err += EPS * (pieces + abs(log_a))
        if flip:
            sign_a = -sign_a
    raise ConvergenceError(f"M-series did not converge within {term_cap} terms at z={z!r}")


def _log_peak(params: ParameterSet, z: float, term_cap: int) -> float:
    """Largest ln|term| of the series, found by scanning the log magnitudes."""
    lz = math.log(abs(z))
    log_a = 0.0
    best = -math.inf
    falling = 0
    for m in range(term_cap):
        arg = params.alpha * m + params.beta
        if not is_nonpositive_integer(arg):
            cur = log_a - log_abs_gamma(arg)[0]
            if cur > best:
                best = cur
                falling = 0
            else:
                falling += 1
                if falling > 8 and cur < best - 40.0:
                    return best
        log_a += lz
        for k in params.upper:
            log_a += math.log(abs(k + m))
        for k in params.lower:
            log_a -= math.log(abs(k + m))
    return best


# ---------------------------------------------------------------- extended tier


def _rational_alpha(alpha: float) -> tuple[int, int] | None:
    frac = Fraction(alpha).limit_denominator(16)
    if float(frac) == alpha and frac.numerator <= 64:
        return frac.numerator, frac.denominator
    return None


def _mp_rgamma(x):
    if x <= 0 and x == gmpy2.floor(x):
        return mpfr(0)
    return 1 / gmpy2.gamma(x)


class _ReciprocalGamma:
    """1/Γ(αm+β) for m = 0, 1, 2, ... at the active mpfr precision.

    For α = a/b with small a, b the values are chained through
    Γ(x + a) = (x)_a Γ(x) along b interleaved sequences; otherwise each value
    is computed directly.
    """

    def __init__(self, alpha: float, beta: float) -> None:
        self.alpha = mpfr(alpha)
        self.beta = mpfr(beta)
        self.chain = _rational_alpha(alpha)
        self.history: list = []

    def next(self, m: int):
        arg = self.alpha * m + self.beta
        chain = self.chain
        if chain is not None and m >= chain[1]:
            num, den = chain
            x0 = arg - num
            if x0 > 0:
                prod = x0
                for j in range(1, num):
                    prod *= x0 + j
                rg = self.history[m - den] / prod
                self.history.append(rg)
                return rg
        rg = _mp_rgamma(arg)
        self.history.append(rg)
        return rg


def _extended_sum(params: ParameterSet, z: float, precision: int, rel_tol: float, term_cap: int, small_terms: int):
    """Sum the series at ``precision`` bits; returns (sum, error bound, terms, peak)."""
    with gmpy2.context(gmpy2.get_context(), precision=precision):
        zz = mpfr(z)
        upper = [mpfr(v) for v in params.upper]
        lower = [mpfr(v) for v in params.lower]
        rg = _ReciprocalGamma(params.alpha, params.beta)
        a = mpfr(1)
        total = mpfr(0)
        weighted = mpfr(0)
        peak = mpfr(0)
        run = 0
        prev = None
        cutoff = mpfr(rel_tol) * mpfr("1e-3")
        for m in range(term_cap):
            term = a * rg.next(m)
            total += term
            mag = abs(term)
            weighted += (m + 1) * mag
            if mag > peak:
                peak = mag
            if m > 0 and mag <= cutoff * abs(total) and (mag < prev or mag == 0):
                run += 1
                if run >= small_terms:
                    extra = params.p + params.q + 6
                    bound = weighted * extra * gmpy2.exp2(-precision) + 2 * mag
                    return total, bound, m + 1, peak
            else:
                run = 0
            prev = mag
            step = zz
            for k in upper:
                step *= k + m
            for k in lower:
                step /= k + m
            a *= step
    raise ConvergenceError(f"M-series did not converge within {term_cap} terms at z={z!r}")


def _extended(params: ParameterSet, z: float, rel_tol: float, term_cap: int, small_terms: int, log_peak: float):
    """Multiple-precision sum; returns (value, error, terms, peak, converged).

    Rational α uses the fixed-point integer sum, any other α the mpfr sum.
    The first pass runs with just enough bits to resolve the peak term to
    64 bits (mpfr) or with a resolution guessed from e^z (fixed point);
    once the magnitude of the result is known, the working precision is
    sized from the measured cancellation.
    """
    if _rational_alpha(params.alpha) is not None:
        return _extended_fixed(params, z, rel_tol, term_cap, small_terms, log_peak)
    tol_bits = -math.log2(rel_tol)
    peak_bits = max(0.0, log_peak) / _LN2
    precision = int(peak_bits + 64)
    for _ in range(8):
        total, bound, used, peak = _extended_sum(params, z, precision, rel_tol, term_cap, small_terms)
        if total != 0 and bound <= abs(total) * (rel_tol * 0.25):
            return float(total), float(bound), used, float(peak), True
        if total != 0 and bound < abs(total) * 1e-3:
            cancel_bits = float(gmpy2.log2(peak / abs(total)))
            precision = max(precision + 16, int(cancel_bits + tol_bits + 40 + math.log2(used)))
        else:
            precision += int(peak_bits) + 64
    return float(total), float(bound), used, float(peak), False


def _fixed_point_sum(params: ParameterSet, z: float, frac_bits: int, rel_tol: float, term_cap: int, small_terms: int):
    """Sum the series as integers scaled by 2**frac_bits.

    For α = a/b the ratio between the terms m and m + b is a ratio of
    integers once every double parameter is written as an exact fraction,
    so each step is one multiplication and one floor division. The sum of
    the integers is exact. Each division adds at most one unit of error,
    which later steps scale with the term itself; per chain this makes the
    relative error grow by at most 1/|T| at every step; the error of the
    sum is bounded by Σ (relative error · |T| + 1) over the terms.

    Returns (scaled sum, error bound in units, terms, peak in units).
    """
    num_a, den_b = _rational_alpha(params.alpha)
    zn, zd = z.as_integer_ratio()
    ups = tuple(k.as_integer_ratio() for k in params.upper)
    lows = tuple(k.as_integer_ratio() for k in params.lower)
    bn, bd = params.beta.as_integer_ratio()
    # chains start once every Γ argument in the step is positive
    start = 0
    while params.alpha * start + params.beta <= 0.0:
        start += 1
    seed_count = start + den_b
    cutoff_bits = int(math.ceil(-math.log2(rel_tol * 1e-3))) + 1
    mpz = gmpy2.mpz
    ldexp = math.ldexp

    seeds = []
    prec = max(frac_bits, 0) + 256
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        zz = mpfr(z)
        a = mpfr(1)
        unit = gmpy2.exp2(frac_bits)
        for m in range(seed_count):
            term = a * _mp_rgamma(mpfr(params.alpha) * m + mpfr(params.beta))
            seeds.append(mpz(gmpy2.rint(term * unit)))
            step = zz
            for k in params.upper:
                step *= mpfr(k) + m
            for k in params.lower:
                step /= mpfr(k) + m
            a *= step
    seed_rel = ldexp(1.0, 8 - prec)

    ld_prod = 1
    for _, d in lows:
        ld_prod *= d
    kd_prod = 1
    for _, d in ups:
        kd_prod *= d
    step_numer = zn * ld_prod
    step_denom = zd * kd_prod
    gamma_numer = (den_b * bd) ** num_a

    rel = [seed_rel] * den_b
    prev_chain = [mpz(0)] * den_b
    total = mpz(0)
    err_units = 0.0
    err_big = mpfr(0)
    peak = mpz(0)
    run = 0
    prev_bits = None
    for m in range(term_cap):
        if m < seed_count:
            t_int = seeds[m]
            slot = m % den_b
            if m >= start:
                rel[slot] = seed_rel + (ldexp(1.0, 1 - t_int.bit_length()) if t_int else 0.0)
        else:
            base = m - den_b
            slot = m % den_b
            numer = gamma_numer
            denom = 1
            for i in range(base, m):
                numer *= step_numer
                denom *= step_denom
                for kn, kd in ups:
                    numer *= kn + i * kd
                for ln, ld in lows:
                    denom *= ln + i * ld
            for j in range(num_a):
                denom *= num_a * base * bd + den_b * bn + j * den_b * bd
            t_int = (prev_chain[slot] * numer) // denom
            bits = t_int.bit_length()
            rel[slot] += ldexp(1.0, 1 - bits) if bits else 1.0
        total += t_int
        mag = abs(t_int)
        if mag > peak:
            peak = mag
        bits = mag.bit_length()
        if bits:
            try:
                err_units += ldexp(rel[slot], bits) + 1.0
            except OverflowError:
                err_big += gmpy2.mul_2exp(mpfr(rel[slot]), bits) + 1
        if m >= seed_count and bits + cutoff_bits <= total.bit_length() and (prev_bits is None or bits <= prev_bits):
            run += 1
            if run >= small_terms:
                err = err_big + err_units + 2 * mag
                return total, err, m + 1, peak
        else:
            run = 0
        prev_bits = bits
        prev_chain[slot] = t_int
    raise ConvergenceError(f"M-series did not converge within {term_cap} terms at z={z!r}")


def _int_to_float(value, frac_bits: int) -> float:
    """``value * 2**-frac_bits`` rounded once to a double; overflow gives inf."""
    return float(gmpy2.mul_2exp(mpfr(value), -frac_bits))


def _extended_fixed(params: ParameterSet, z: float, rel_tol: float, term_cap: int, small_terms: int, log_peak: float):
    tol_bits = -math.log2(rel_tol)
    peak_bits = max(0.0, log_peak) / _LN2
    # first guess: the result is no smaller than e^z
    guess = max(0.0, -z) / _LN2
    frac_bits = int(peak_bits + guess + tol_bits + 48 + math.log2(max(16.0, abs(z) * 3.0)))
    for _ in range(8):
        total, err_units, used, peak = _fixed_point_sum(params, z, frac_bits, rel_tol, term_cap, small_terms)
        mag = abs(mpfr(total))
        if total != 0 and err_units <= mag * (rel_tol * 0.25):
            value = _int_to_float(total, frac_bits)
            err = float(gmpy2.mul_2exp(err_units, -frac_bits))
            return value, err, used, _int_to_float(peak, frac_bits), True
        if total != 0 and err_units < mag * 1e-3:
            result_bits = int(abs(total)).bit_length() - frac_bits
            frac_bits = max(frac_bits + 32, int(peak_bits - result_bits + tol_bits + 40 + math.log2(used)))
        else:
            frac_bits += int(peak_bits) + 64
    value = _int_to_float(total, frac_bits)
    err = float(gmpy2.mul_2exp(err_units, -frac_bits))
    return value, err, used, _int_to_float(peak, frac_bits), False


# ---------------------------------------------------------------- public series


def m_series(
    params: ParameterSet,
    z: float,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    term_cap: int = DEFAULT_TERM_CAP,
    small_terms: int = 3,
    escalation_ratio: float = ESCALATION_RATIO,
) -> EvalResult:
    """Sum the M-series at real z.

    Parameters
    ----------
    params
        The series shape.
    z
        Real argument; must lie in the convergence region of ``params``.
    rel_tol
        Target relative accuracy, in (1e-15, 1e-2).
    term_cap, small_terms
        Term budget and the number of consecutive small terms required
        before truncating.
    escalation_ratio
        For z < 0, a ratio ``max_term / |value|`` above this triggers the
        multiple-precision re-summation.

    Raises
    ------
    DivergenceError
        z lies outside the convergence region.
    ConvergenceError
        The term cap was reached.
    """
    _validate_tol(rel_tol)
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}")
    check_convergence_region(params, z)
    if z == 0.0:
        value = rgamma(params.beta)
        return EvalResult(value, EPS * abs(value), 1, abs(value))
    try:
        if z <= DIRECT_EXTENDED_BELOW:
            raise _NeedsExtended
        value, err, used, peak = _standard(params, z, rel_tol, term_cap, small_terms)
    except _NeedsExtended:
        log_peak = _log_peak(params, z, term_cap)
    else:
        cancels = z < 0.0 and peak > escalation_ratio * abs(value)
        if not cancels and err <= rel_tol * abs(value):
            return EvalResult(value, err, used, peak, "standard", True)
        log_peak = math.log(peak) if peak > 0.0 else 0.0
    value, err, used, peak, ok = _extended(params, z, rel_tol, term_cap, small_terms, log_peak)
    if math.isinf(value):
        raise DomainError(f"M-series value overflows double precision at z={z!r}")
    # subnormal results carry an absolute representation error
    err = max(err, EPS * abs(value), 2.0**-1074)
    return EvalResult(value, err, used, peak, "extended", ok)


# ---------------------------------------------------------------- kernel layer


@lru_cache(maxsize=4096)
def _continuation(params: ParameterSet) -> tuple[str, ParameterSet, float, float] | None:
    """How to write ``params`` as an integral over a simpler kernel.

    Returns ``(kind, base, a, b)``:

    * ``"gamma"``: (a)ₘ = ∫ e^{-r} r^{a+m-1} dr / Γ(a), so
      M(z) = ∫₀^∞ e^{-r} r^{a-1} M_base(z r) dr / Γ(a).
    * ``"beta"``: (a)ₘ/(b)ₘ = ∫₀¹ r^{a+m-1}(1-r)^{b-a-1} dr / B(a, b-a), so
      M(z) = ∫₀¹ r^{a-1}(1-r)^{b-a-1} M_base(z r) dr / B(a, b-a).

    Appended parameters are peeled first; otherwise any upper/lower pair
    with b > a > 0 is used.
    """
    if params.parent is not None:
        up, lo = params.added_upper, params.added_lower
        if len(up) == 1 and not lo and up[0] > 0.0:
            return "gamma", params.parent, up[0], 0.0
        if len(up) == 1 and len(lo) == 1 and lo[0] > up[0] > 0.0:
            return "beta", params.parent, up[0], lo[0]
    if params.p == params.q + 1 and params.alpha == 1.0:
        positive = [k for k in params.upper if k > 0.0]
        if positive:
            a = max(positive)
            rest = list(params.upper)
            rest.remove(a)
            base = ParameterSet(tuple(rest), params.lower, params.alpha, params.beta, params.z_floor)
            return "gamma", base, a, 0.0
    for a in params.upper:
        for b in params.lower:
            if b > a > 0.0:
                upper, lower = list(params.upper), list(params.lower)
                upper.remove(a)
                lower.remove(b)
                base = ParameterSet(tuple(upper), tuple(lower), params.alpha, params.beta, params.z_floor)
                return "beta", base, a, b
    return None


def _needs_continuation(params: ParameterSet, z: float) -> bool:
    if z >= 0.0:
        return False
    if params.p == params.q + 1 and params.alpha == 1.0 and z <= -0.5:
        return True
    if _continuation(params) is None:
        return False
    return z < -CONTINUATION_THRESHOLD or not _series_affordable(params, z)


@lru_cache(maxsize=4096)
def _series_affordable(params: ParameterSet, z: float) -> bool:
    """True when the terms at ``z`` peak below ``MAX_PEAK_NATS`` and fall off within the scan."""
    lz = math.log(abs(z))
    log_a = 0.0
    best = -math.inf
    for m in range(AFFORDABLE_SCAN):
        arg = params.alpha * m + params.beta
        if not is_nonpositive_integer(arg):
            cur = log_a - log_abs_gamma(arg)[0]
            if cur > MAX_PEAK_NATS:
                return False
            best = max(best, cur)
            if cur < best - 40.0:
                return True
        log_a += lz
        for k in params.upper:
            log_a += math.log(abs(k + m))
        for k in params.lower:
            log_a -= math.log(abs(k + m))
    return False


def _vanishes(k: EvalResult) -> bool:
    # Past the decay floor the base kernel is below every representable
    # contribution; its bound times a huge weight would only inflate the error.
    return k.method == "decay_floor" or (k.value == 0.0 and k.abs_error_estimate == 0.0)


def _continued_value(params: ParameterSet, z: float, rel_tol: float) -> EvalResult:
    plan = _continuation(params)
    if plan is None:
        raise DivergenceError(f"no convergent representation of {params.label()} at z={z!r}")
    kind, base, a, b = plan
    x = -z
    quad_tol = max(rel_tol, 1e-13)
    state = {"ok": True}

    def base_kernel(arg: float) -> EvalResult:
        res = m_series_kernel(base, arg, rel_tol)
        if not res.converged:
            state["ok"] = False
        return res

    if kind == "gamma":
        def integrand(v: float):
            k = base_kernel(-v)
            if _vanishes(k):
                return 0.0
            w = math.exp((a - 1.0) * math.log(v) - v / x)
            return w * k.value, w * k.abs_error_estimate

        quad = integrate_half_line(integrand, QuadratureConfig(rel_tol=quad_tol, scheme="half_line"))
        scale = math.exp(-a * math.log(x) - log_gamma(a))
        pieces = [quad]
    else:
        c = b - a
        log_norm = log_gamma(a) + log_gamma(c) - log_gamma(b)
        if x <= CONTINUATION_THRESHOLD:
            def integrand(r: float, rc: float):
                k = base_kernel(-x * r)
                if _vanishes(k):
                    return 0.0
                w = math.exp((a - 1.0) * math.log(r) + (c - 1.0) * math.log(rc))
                return w * k.value, w * k.abs_error_estimate

            quad = integrate_unit(integrand, QuadratureConfig(rel_tol=quad_tol), with_complement=True)
            scale = math.exp(-log_norm)
            pieces = [quad]
        else:
            split = CONTINUATION_THRESHOLD

            def near(r: float, rc: float):
                v = split * r
                k = base_kernel(-v)
                if _vanishes(k):
                    return 0.0
                w = math.exp((a - 1.0) * math.log(v) + (c - 1.0) * math.log1p(-v / x))
                return w * k.value, w * k.abs_error_estimate

            first = integrate_unit(near, QuadratureConfig(rel_tol=quad_tol), with_complement=True)
            span = x - split
            end = -base.z_floor
            # the base kernel vanishes past its decay floor, so stop the far piece there
            truncated = end < x and not _needs_continuation(base, -x)
            if truncated:
                span = max(end - split, 0.0)

            def far(r: float, rc: float):
                v = split + span * r
                k = base_kernel(-v)
                if _vanishes(k):
                    return 0.0
                tail = math.log1p(-v / x) if truncated else math.log(span * rc / x)
                w = math.exp((a - 1.0) * math.log(v) + (c - 1.0) * tail)
                return w * k.value, w * k.abs_error_estimate

            abs_tol = quad_tol * abs(first.value) / max(split, span)
            second = integrate_unit(
                far, QuadratureConfig(rel_tol=quad_tol, abs_tol=abs_tol), with_complement=True
            )
            second = type(second)(
                second.value * span, second.abs_error_estimate * span, second.nodes_evaluated, second.converged
            )
            first = type(first)(
                first.value * split, first.abs_error_estimate * split, first.nodes_evaluated, first.converged
            )
            pieces = [first, second]
            scale = math.exp(-a * math.log(x) - log_norm)
    value = scale * sum(p.value for p in pieces)
    err = scale * sum(p.abs_error_estimate for p in pieces) + 4 * EPS * abs(value)
    converged = state["ok"] and all(p.converged for p in pieces)
    nodes = sum(p.nodes_evaluated for p in pieces)
    return EvalResult(value, err, 0, 0.0, "standard", converged, nodes, "continuation")


@lru_cache(maxsize=4096)
def decay_floor_bound(params: ParameterSet, rel_tol: float = DEFAULT_KERNEL_TOL) -> float:
    """Magnitude of the kernel at its decay floor, used as the error bound below it."""
    res = m_series(params, params.z_floor, rel_tol)
    return abs(res.value) + res.abs_error_estimate


def floor_tolerance(params: ParameterSet, rel_tol: float = DEFAULT_KERNEL_TOL) -> float:
    """Kernel magnitude below which integrals over it cannot be resolved.

    Zero for sets that are continued through an integral instead of
    reaching their decay floor.
    """
    if _needs_continuation(params, params.z_floor):
        return 0.0
    return decay_floor_bound(params, rel_tol)


@lru_cache(maxsize=1 << 19)
def _kernel_cached(params: ParameterSet, z: float, rel_tol: float) -> EvalResult:
    if _needs_continuation(params, z):
        return _continued_value(params, z, rel_tol)
    if z < params.z_floor:
        bound = decay_floor_bound(params, rel_tol)
        # a kernel that is still sizeable at the floor decays too slowly for the cut
        resolved = bound <= FLOOR_NEGLIGIBLE
        return EvalResult(0.0, bound, 0, 0.0, "standard", resolved, 0, "decay_floor")
    return m_series(params, z, rel_tol)


def m_series_kernel(params: ParameterSet, z: float, rel_tol: float = DEFAULT_KERNEL_TOL) -> EvalResult:
    """The M-series as used inside the modified-function integrals.

    Identical to :func:`m_series` inside the convergence region down to the
    decay floor ``params.z_floor``; below the floor the result is zero with
    error bound |M(z_floor)|. Sets built with :meth:`ParameterSet.appended`
    (one extra positive upper parameter, or an extra upper/lower pair with
    lower > upper > 0) are evaluated far down the negative axis through the
    integral representation over their base set, and so is any set with
    an upper/lower pair μ > κ > 0. The same applies to any set with
    p = q + 1 and α = 1 once z ≤ −1/2, which extends that series beyond
    its unit radius. A kernel still larger than ``FLOOR_NEGLIGIBLE`` at the
    floor is reported as not converged below it.
    """
    _validate_tol(rel_tol)
    return _kernel_cached(params, float(z), float(rel_tol))


def m_series_kernel_beta(
    params: ParameterSet,
    t: float,
    rho: float,
    rel_tol: float = DEFAULT_KERNEL_TOL,
    *,
    complement: float | None = None,
) -> EvalResult:
    """Kernel factor of the modified beta integrand, M(−ρ/(t(1−t))).

    ``complement`` may carry an accurately computed 1 − t.
    """
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t!r}")
    if not rho >= 0.0:
        raise DomainError(f"rho must be >= 0, got {rho!r}")
    tc = 1.0 - t if complement is None else complement
    if rho == 0.0:
        return m_series_kernel(params, 0.0, rel_tol)
    return m_series_kernel(params, -rho / (t * tc), rel_tol)


def clear_caches() -> None:
    _kernel_cached.cache_clear()
    decay_floor_bound.cache_clear()
    _series_affordable.cache_clear()
    _continuation.cache_clear()
