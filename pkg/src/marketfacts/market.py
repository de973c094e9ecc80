"""Price adjustment: aggregated excess demand and the disequilibrium
log-price update S' = S + F(S, ED) + G(S, ED) * eta."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NoAgents, NumericalBlowup

# guard before exp() overflows when converting log price back to price
LOG_PRICE_LIMIT = 700.0

CONSTANT = "constant"
PROPORTIONAL = "proportional"


@dataclass(frozen=True)
class MarketState:
    """Log price S_k, step counter k and step size dt of a running market."""

    log_price: float
    step_index: int = 0
    dt: float = 1.0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")

    @property
    def price(self) -> float:
        return math.exp(self.log_price)


@dataclass(frozen=True)
class PriceRule:
    """Drift F and noise amplitude G of the price update.

    Built-ins: linear drift F = gamma * dt * ED (market-maker speed gamma),
    and either constant noise G = sigma0 * sqrt(dt) or ED-proportional noise
    G = delta * sqrt(dt) * |ED|.  The sqrt(dt) scaling keeps dt-refinement
    consistent with a diffusion limit.  ``drift_fn`` / ``noise_fn`` override
    the built-ins with arbitrary pure functions of (log_price, ed, dt).
    """

    gamma: float = 0.0
    noise: str = CONSTANT
    sigma0: float = 0.0
    delta: float = 0.0
    drift_fn: Optional[Callable[[float, float, float], float]] = None
    noise_fn: Optional[Callable[[float, float, float], float]] = None

    def __post_init__(self):
        if self.gamma < 0.0 or self.sigma0 < 0.0 or self.delta < 0.0:
            raise ValueError("gamma, sigma0 and delta must be >= 0")
        if self.noise not in (CONSTANT, PROPORTIONAL):
            raise ValueError(f"unknown noise spec {self.noise!r}")

    def drift(self, log_price: float, ed: float, dt: float) -> float:
        if self.drift_fn is not None:
            return self.drift_fn(log_price, ed, dt)
        return self.gamma * dt * ed

    def noise_amplitude(self, log_price: float, ed: float, dt: float) -> float:
        if self.noise_fn is not None:
            return self.noise_fn(log_price, ed, dt)
        if self.noise == CONSTANT:
            return self.sigma0 * math.sqrt(dt)
        return self.delta * math.sqrt(dt) * abs(ed)


def aggregate_excess_demand(demands) -> float:
    """Mean of the individual excess demands."""
    demands = np.asarray(demands, dtype=float)
    if demands.size == 0:
        raise NoAgents("cannot aggregate an empty demand list")
    return float(demands.mean())


def price_step(state: MarketState, ed: float, rule: PriceRule, eta: float) -> MarketState:
    """One update of the log price; ``eta`` is a standard normal draw
    supplied by the caller's RNG stream."""
    s = state.log_price
    s_next = s + rule.drift(s, ed, state.dt) + rule.noise_amplitude(s, ed, state.dt) * eta
    if not math.isfinite(s_next) or abs(s_next) > LOG_PRICE_LIMIT:
        raise NumericalBlowup(
            f"log price {s_next} out of range at step {state.step_index}",
            step_index=state.step_index,
        )
    return MarketState(log_price=s_next, step_index=state.step_index + 1, dt=state.dt)
