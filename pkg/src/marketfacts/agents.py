"""Agent designs: fundamentalist and chartist excess demands, plus the
two-agent (chartist + fundamentalist) aggregation with additive noise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

PerStep = Union[float, Sequence[float]]


def _at(value: PerStep, step: int) -> float:
    """Resolve a constant-or-per-step parameter at a given step."""
    if np.isscalar(value):
        return float(value)
    seq = np.asarray(value, dtype=float)
    return float(seq[step])


@dataclass(frozen=True)
class FundamentalistParams:
    """Reaction weight a and fundamental log value (constant or per-step)."""

    a: float
    log_fundamental: PerStep = 0.0

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError(f"reaction weight a must be > 0, got {self.a}")


@dataclass(frozen=True)
class ChartistParams:
    """Extrapolation weight b on the last log-price change."""

    b: float

    def __post_init__(self):
        if self.b <= 0.0:
            raise ValueError(f"extrapolation weight b must be > 0, got {self.b}")


@dataclass(frozen=True)
class FWParams:
    """Two-agent market: weights (constant or per-step), fundamental value
    and the std of the Gaussian noise added to the aggregated demand.

    Weights may be zero here so that single-agent-type closed loops can be
    expressed; endogenous strategy switching is out of scope.
    """

    a: PerStep = 1.0
    b: PerStep = 1.0
    log_fundamental: PerStep = 0.0
    noise_std: float = 0.0

    def __post_init__(self):
        if self.noise_std < 0.0:
            raise ValueError(f"noise_std must be >= 0, got {self.noise_std}")

    def weights_at(self, step: int) -> tuple[float, float]:
        return _at(self.a, step), _at(self.b, step)

    def fundamental_at(self, step: int) -> float:
        return _at(self.log_fundamental, step)


def fundamentalist_demand(params: FundamentalistParams, log_price: float, step: int = 0) -> float:
    """a * (P_F - P): buy below the fundamental value, sell above it."""
    return params.a * (_at(params.log_fundamental, step) - log_price)


def chartist_demand(params: ChartistParams, log_price_now: float, log_price_prev: float) -> float:
    """b * (P_k - P_{k-1}): extrapolate the most recent log-price change."""
    return params.b * (log_price_now - log_price_prev)


def franke_westerhoff_ED(ed_chartist: float, ed_fundamentalist: float,
                         params: FWParams, noise_draw: float = 0.0) -> float:
    """Equal-weight aggregation of the two demands plus additive noise.

    ``noise_draw`` is a standard normal draw from the run's RNG stream
    (pass 0 when noise_std == 0).
    """
    return 0.5 * (ed_chartist + ed_fundamentalist) + params.noise_std * noise_draw
