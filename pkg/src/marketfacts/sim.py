"""Seeded Monte-Carlo simulation runs wiring agents, environment and the
price rule together.

Reproducibility contract
------------------------
The RNG is numpy's PCG64 via ``np.random.default_rng(seed)``; replication r
of an ensemble uses ``seed + r``.  All stochastic draws come from the run's
single stream in this fixed order:

* initialization (cross_herding): position signs, then thresholds;
* each step: the model's demand noise first (the FW additive noise, or the
  cross model's ED perturbation; drawn only when its std is > 0), then the
  price noise eta (always drawn).

Given (config, seed) every output bit is determined, independent of how
many ensemble workers run in parallel.
"""

from __future__ import annotations

import dataclasses
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .agents import FWParams, franke_westerhoff_ED
from .environment import (
    HerdingPopulation,
    herding_step,
    population_excess_demand,
    switch_count,
)
from .errors import ConfigError, NumericalBlowup
from .market import MarketState, PriceRule, price_step
from .timeseries import RAW, ReturnSeries

FW_TWO_AGENT = "fw_two_agent"
CROSS_HERDING = "cross_herding"
CUSTOM = "custom"


@dataclass(frozen=True)
class HerdingConfig:
    """Environment parameters of the cross_herding model.

    ``ed_noise_std`` perturbs the herding signal only (exogenous order
    flow seen by the agents); the price responds to the population's true
    aggregate position.  Without this perturbation the herding rule
    freezes in full consensus.
    """

    n_agents: int = 1000
    threshold_min: float = 1.0
    threshold_max: float = 2.0
    ed_noise_std: float = 1.0

    def __post_init__(self):
        if self.n_agents < 1:
            raise ConfigError("must be >= 1", field="herding.n_agents")
        if not 0.0 < self.threshold_min <= self.threshold_max:
            raise ConfigError(
                f"invalid band [{self.threshold_min}, {self.threshold_max}]",
                field="herding.threshold_min",
            )
        if self.ed_noise_std < 0.0:
            raise ConfigError("must be >= 0", field="herding.ed_noise_std")


@dataclass(frozen=True)
class RunConfig:
    """Full description of one simulation run."""

    model: str
    steps: int
    dt: float = 1.0
    seed: int = 0
    initial_log_price: float = 0.0
    burn_in: Optional[int] = None  # None -> 10% of steps
    price_rule: PriceRule = field(default_factory=PriceRule)
    fw: FWParams = field(default_factory=FWParams)
    herding: HerdingConfig = field(default_factory=HerdingConfig)

    def __post_init__(self):
        if self.model not in (FW_TWO_AGENT, CROSS_HERDING, CUSTOM):
            raise ConfigError(f"unknown model {self.model!r}", field="model")
        if self.steps < 1:
            raise ConfigError("must be >= 1", field="steps")
        if self.dt <= 0.0:
            raise ConfigError("must be > 0", field="dt")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("must be a 64-bit unsigned integer", field="seed")
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", self.steps // 10)
        if self.burn_in < 0:
            raise ConfigError("must be >= 0", field="burn_in")
        if self.steps <= self.burn_in:
            raise ConfigError(
                f"steps ({self.steps}) must exceed burn_in ({self.burn_in})",
                field="burn_in",
            )


@dataclass(frozen=True)
class SimOutput:
    """Trajectory, post-burn-in returns and per-run diagnostics."""

    log_prices: np.ndarray
    returns: ReturnSeries
    diagnostics: dict
    seed: int


def _parse_section(d: dict, path: str, cls, allowed: dict):
    unknown = set(d) - set(allowed)
    if unknown:
        raise ConfigError(
            f"unknown key(s) {sorted(unknown)}", field=path
        )
    kwargs = {}
    for key, typ in allowed.items():
        if key in d:
            try:
                kwargs[key] = typ(d[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(str(exc), field=f"{path}.{key}") from exc
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), field=path) from exc


def _per_step(v):
    """Accept a scalar or a list for per-step parameters."""
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    return float(v)


def config_from_dict(d: dict) -> RunConfig:
    """Build a RunConfig from a plain (JSON-decoded) dictionary."""
    if not isinstance(d, dict):
        raise ConfigError("config document must be a JSON object")
    top = {
        "model": str,
        "steps": int,
        "dt": float,
        "seed": int,
        "initial_log_price": float,
        "burn_in": int,
    }
    kwargs = {}
    for key, typ in top.items():
        if key in d:
            try:
                kwargs[key] = typ(d[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(str(exc), field=key) from exc
    if "model" not in kwargs:
        raise ConfigError("required", field="model")
    if "steps" not in kwargs:
        raise ConfigError("required", field="steps")
    if "price_rule" in d:
        kwargs["price_rule"] = _parse_section(
            d["price_rule"], "price_rule", PriceRule,
            {"gamma": float, "noise": str, "sigma0": float, "delta": float},
        )
    if "fw" in d:
        kwargs["fw"] = _parse_section(
            d["fw"], "fw", FWParams,
            {"a": _per_step, "b": _per_step,
             "log_fundamental": _per_step, "noise_std": float},
        )
    if "herding" in d:
        kwargs["herding"] = _parse_section(
            d["herding"], "herding", HerdingConfig,
            {"n_agents": int, "threshold_min": float,
             "threshold_max": float, "ed_noise_std": float},
        )
    unknown = set(d) - set(top) - {"price_rule", "fw", "herding"}
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)}")
    return RunConfig(**kwargs)


def config_to_dict(config: RunConfig) -> dict:
    d = dataclasses.asdict(config)
    # callables are API-only, never serialized
    d["price_rule"].pop("drift_fn", None)
    d["price_rule"].pop("noise_fn", None)
    return d


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"not valid JSON: {exc}") from exc
    return config_from_dict(doc)


def cross_herding_defaults(seed: int = 0, steps: int = 100_000) -> RunConfig:
    """Calibrated default configuration producing fat tails and volatility
    clustering in the threshold-herding market."""
    return RunConfig(
        model=CROSS_HERDING,
        steps=steps,
        dt=0.02,
        seed=seed,
        price_rule=PriceRule(gamma=0.0, noise="proportional", delta=0.03),
        herding=HerdingConfig(
            n_agents=1000, threshold_min=1.0, threshold_max=2.0, ed_noise_std=1.0
        ),
    )


def _run_fw(config: RunConfig, rng: np.random.Generator) -> tuple[np.ndarray, dict]:
    fw = config.fw
    rule = config.price_rule
    log_prices = np.empty(config.steps + 1)
    state = MarketState(config.initial_log_price, step_index=0, dt=config.dt)
    log_prices[0] = state.log_price
    prev = state.log_price  # no invented pre-history: initial chartist demand 0
    for k in range(config.steps):
        a_k, b_k = fw.weights_at(k)
        ed_f = a_k * (fw.fundamental_at(k) - state.log_price)
        ed_c = b_k * (state.log_price - prev)
        noise_draw = rng.standard_normal() if fw.noise_std > 0.0 else 0.0
        ed = franke_westerhoff_ED(ed_c, ed_f, fw, noise_draw)
        eta = rng.standard_normal()
        prev = state.log_price
        state = price_step(state, ed, rule, eta)
        log_prices[k + 1] = state.log_price
    return log_prices, {}


def _run_cross(config: RunConfig, rng: np.random.Generator) -> tuple[np.ndarray, dict]:
    h = config.herding
    rule = config.price_rule
    pop = HerdingPopulation.random(
        h.n_agents, rng, threshold_band=(h.threshold_min, h.threshold_max)
    )
    log_prices = np.empty(config.steps + 1)
    state = MarketState(config.initial_log_price, step_index=0, dt=config.dt)
    log_prices[0] = state.log_price
    switches = 0
    for k in range(config.steps):
        ed = population_excess_demand(pop)
        ed_env = ed
        if h.ed_noise_std > 0.0:
            ed_env = ed + h.ed_noise_std * rng.standard_normal()
        new_pop = herding_step(pop, ed_env, config.dt)
        switches += switch_count(pop, new_pop)
        pop = new_pop
        eta = rng.standard_normal()
        state = price_step(state, ed, rule, eta)
        log_prices[k + 1] = state.log_price
    return log_prices, {"switch_count": switches, "n_agents": h.n_agents}


def run_simulation(config: RunConfig, custom_step=None) -> SimOutput:
    """Run one seeded simulation and return its trajectory and returns.

    ``custom_step`` (model == "custom" only) is a callable
    ``(state, log_prices_so_far, rng) -> ed`` supplying the aggregated
    excess demand each step; it may draw from ``rng``.
    """
    rng = np.random.default_rng(config.seed)
    diagnostics = {"model": config.model, "steps": config.steps, "blowup": None}
    try:
        if config.model == FW_TWO_AGENT:
            log_prices, extra = _run_fw(config, rng)
        elif config.model == CROSS_HERDING:
            log_prices, extra = _run_cross(config, rng)
        else:
            if custom_step is None:
                raise ConfigError(
                    "model 'custom' needs a custom_step callable", field="model"
                )
            log_prices, extra = _run_custom(config, rng, custom_step)
    except NumericalBlowup as exc:
        exc.args = (f"{exc} (seed {config.seed})",)
        raise
    diagnostics.update(extra)
    returns = ReturnSeries(
        np.diff(log_prices[config.burn_in:]),
        kind=RAW,
        origin=f"{config.model} seed={config.seed}",
    )
    return SimOutput(
        log_prices=log_prices,
        returns=returns,
        diagnostics=diagnostics,
        seed=config.seed,
    )


def _run_custom(config: RunConfig, rng, custom_step) -> tuple[np.ndarray, dict]:
    rule = config.price_rule
    log_prices = np.empty(config.steps + 1)
    state = MarketState(config.initial_log_price, step_index=0, dt=config.dt)
    log_prices[0] = state.log_price
    for k in range(config.steps):
        ed = custom_step(state, log_prices[: k + 1], rng)
        eta = rng.standard_normal()
        state = price_step(state, ed, rule, eta)
        log_prices[k + 1] = state.log_price
    return log_prices, {}


def _run_replication(args) -> SimOutput:
    config, r = args
    return run_simulation(replace(config, seed=config.seed + r))


def run_ensemble(config: RunConfig, replications: int, workers: int = 1) -> list[SimOutput]:
    """Independent replications with seeds base_seed + r, r = 0..R-1.

    Results come back in replication order regardless of completion order,
    so parallel and sequential execution are interchangeable.
    """
    if replications < 1:
        raise ConfigError("replications must be >= 1", field="replications")
    jobs = [(config, r) for r in range(replications)]
    if workers <= 1:
        return [_run_replication(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_replication, jobs))


def _fmt(x: float) -> str:
    return repr(float(x))


def write_sim_output(output: SimOutput, out_dir, stem: str) -> list[str]:
    """Write log-price and return CSVs plus a JSON diagnostics sidecar.

    Full double precision; no timestamps, so identical runs produce
    byte-identical files.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    path = os.path.join(out_dir, f"{stem}_logprices.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("step,log_price\n")
        for k, s in enumerate(output.log_prices):
            fh.write(f"{k},{_fmt(s)}\n")
    paths.append(path)

    path = os.path.join(out_dir, f"{stem}_returns.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,log_return\n")
        for k, r in enumerate(output.returns.values):
            fh.write(f"{k},{_fmt(r)}\n")
    paths.append(path)

    path = os.path.join(out_dir, f"{stem}_diagnostics.json")
    doc = dict(output.diagnostics)
    doc["seed"] = output.seed
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(path)
    return paths
