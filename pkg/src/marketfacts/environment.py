"""Threshold-herding environment: agents hold a position sign in {-1, +1}
and accumulate pressure while their position opposes the aggregated excess
demand; crossing an individual threshold flips the position.

The population is stored as flat numpy arrays so a 10^5-step run over 10^3
agents stays fast; :class:`HerdingAgent` is the per-agent value view.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoAgents


@dataclass(frozen=True)
class HerdingAgent:
    """Position sign, accumulated pressure and switching threshold."""

    sigma: int
    pressure: float = 0.0
    threshold: float = 1.0

    def __post_init__(self):
        if self.sigma not in (-1, 1):
            raise ValueError(f"sigma must be -1 or +1, got {self.sigma}")
        if self.pressure < 0.0:
            raise ValueError(f"pressure must be >= 0, got {self.pressure}")
        if self.threshold <= 0.0:
            raise ValueError(f"threshold must be > 0, got {self.threshold}")


class HerdingPopulation:
    """Immutable array-of-agents; updates return a new population."""

    __slots__ = ("sigma", "pressure", "threshold")

    def __init__(self, sigma, pressure, threshold, _validate: bool = True):
        self.sigma = np.asarray(sigma, dtype=float)
        self.pressure = np.asarray(pressure, dtype=float)
        self.threshold = np.asarray(threshold, dtype=float)
        if _validate:
            n = self.sigma.size
            if n == 0:
                raise NoAgents("herding population must be non-empty")
            if self.pressure.size != n or self.threshold.size != n:
                raise ValueError("sigma, pressure and threshold lengths differ")
            if not np.all(np.abs(self.sigma) == 1.0):
                raise ValueError("every sigma must be -1 or +1")
            if np.any(self.pressure < 0.0):
                raise ValueError("pressures must be >= 0")
            if np.any(self.threshold <= 0.0):
                raise ValueError("thresholds must be > 0")
        for arr in (self.sigma, self.pressure, self.threshold):
            arr.setflags(write=False)

    @classmethod
    def from_agents(cls, agents) -> "HerdingPopulation":
        agents = list(agents)
        return cls(
            [a.sigma for a in agents],
            [a.pressure for a in agents],
            [a.threshold for a in agents],
        )

    @classmethod
    def random(cls, n: int, rng: np.random.Generator,
               threshold_band: tuple[float, float] = (1.0, 2.0)) -> "HerdingPopulation":
        """Uniform random signs, zero pressure, thresholds uniform in the band.

        Draw order (signs first, then thresholds) is part of the
        reproducibility contract.
        """
        if n < 1:
            raise NoAgents(f"population size must be >= 1, got {n}")
        lo, hi = threshold_band
        if not 0.0 < lo <= hi:
            raise ValueError(f"invalid threshold band [{lo}, {hi}]")
        sigma = rng.choice([-1.0, 1.0], size=n)
        threshold = rng.uniform(lo, hi, size=n)
        return cls(sigma, np.zeros(n), threshold)

    def __len__(self) -> int:
        return int(self.sigma.size)

    def agents(self) -> list[HerdingAgent]:
        return [
            HerdingAgent(sigma=int(s), pressure=float(p), threshold=float(t))
            for s, p, t in zip(self.sigma, self.pressure, self.threshold)
        ]


def population_excess_demand(pop: HerdingPopulation) -> float:
    """Aggregated excess demand with ed_i = sigma_i: the mean position."""
    if len(pop) == 0:
        raise NoAgents("empty population")
    return float(pop.sigma.mean())


def herding_step(pop: HerdingPopulation, ed: float, dt: float) -> HerdingPopulation:
    """Synchronous herding update driven by the pre-step value of ED.

    Agents whose sign opposes ED (strict inequality: ED == 0 accrues
    nothing) gain dt * |ED| pressure; any pressure at or above its
    threshold flips the sign and resets to zero.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    sigma = pop.sigma.copy()
    pressure = pop.pressure.copy()
    minority = sigma * ed < 0.0
    pressure[minority] += dt * abs(ed)
    switch = pressure >= pop.threshold
    sigma[switch] *= -1.0
    pressure[switch] = 0.0
    return HerdingPopulation(sigma, pressure, pop.threshold, _validate=False)


def switch_count(before: HerdingPopulation, after: HerdingPopulation) -> int:
    """Number of agents whose sign differs between two population states."""
    return int(np.count_nonzero(before.sigma != after.sigma))
