"""Default tolerances, in one table.

Every suite and command reads its tolerances from :func:`tolerances`. The
relative tolerances of the identity checks (transforms, derivatives, gamma
products) can be overridden together through the ``MSPECIAL_REL_TOL``
environment variable; the ``--rel-tol`` flag overrides both. Reduction
families keep their own tolerances unless ``reductions --rel-tol`` is given.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import DomainError

ENV_REL_TOL = "MSPECIAL_REL_TOL"


@dataclass(frozen=True)
class Tolerances:
    # pass/fail policy for identity checks: |L − R| ≤ abs + rel·max(|L|,|R|) + scale·(e_L + e_R)
    check_rel: float = 1e-5
    check_abs: float = 0.0
    error_scale: float = 3.0
    # accuracy requested from each modified-function evaluation
    eval_tol: float = 1e-10
    # outer integral of a numerical transform
    transform_tol: float = 1e-8
    # reductions, per family
    classic_rel: float = 1e-8
    chaudhry_rel: float = 1e-7
    ozergin_rel: float = 1e-5
    # identity properties
    derivative_rel: float = 1e-5
    product_rel: float = 1e-4
    binomial_abs: float = 1e-6

    def with_check_rel(self, rel: float) -> "Tolerances":
        """Override every relative identity tolerance with one value."""
        return replace(self, check_rel=rel, derivative_rel=rel, product_rel=rel)


def _parse_positive(text: str, source: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise DomainError(f"{source} must be a number, got {text!r}") from exc
    if not value > 0.0:
        raise DomainError(f"{source} must be positive, got {text!r}")
    return value


def tolerances(environ: dict | None = None) -> Tolerances:
    """The default table, with the environment override applied."""
    env = os.environ if environ is None else environ
    table = Tolerances()
    raw = env.get(ENV_REL_TOL)
    if raw:
        table = table.with_check_rel(_parse_positive(raw, ENV_REL_TOL))
    return table
