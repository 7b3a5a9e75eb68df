"""Result records shared by the evaluation layers."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class EvalResult:
    """A computed value together with its error estimate and diagnostics.

    ``method`` names the evaluation route (``series``, ``decay_floor``,
    ``continuation``, ``quadrature``, ...); ``nodes_evaluated`` counts
    quadrature nodes when a quadrature was involved.
    """

    value: float
    abs_error_estimate: float
    terms_used: int = 0
    max_term_magnitude: float = 0.0
    precision_tier: str = "standard"
    converged: bool = True
    nodes_evaluated: int = 0
    method: str = "series"

    def to_record(self) -> dict:
        return asdict(self)
