"""Monte Carlo journey simulator: the independent check on every analytic
expectation in the package.

Estimates are chunked, with one RNG substream per chunk keyed by (seed,
chunk index), so results are bit-identical for a fixed seed no matter how
the chunks would be distributed across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .arrivals import ArrivalModel
from .expectation import Scenario, expected_tt, expected_tt_wait_forever
from .intermediate import WalkAndWaitPlan, expected_tt_plan

CHUNK = 1 << 16


@dataclass(frozen=True)
class WaitForever:
    pass


@dataclass(frozen=True)
class WalkNow:
    pass


@dataclass(frozen=True)
class WaitThenWalk:
    t_wait: float


@dataclass(frozen=True)
class WalkAndWait:
    plan: WalkAndWaitPlan


Strategy = Union[WaitForever, WalkNow, WaitThenWalk, WalkAndWait]


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    stderr: float
    n: int


def simulate_once(
    scenario: Scenario,
    model: ArrivalModel,
    strategy: Strategy,
    rng: np.random.Generator,
) -> float:
    """One journey's travel time in minutes.

    Draw order is fixed: the bus arrival first, then (only when a bus passes
    during the walking leg of a WalkAndWait plan) one uniform for the catch.
    """
    tau = float(model.sample(rng))
    if isinstance(strategy, WalkNow):
        return scenario.walk_time
    if isinstance(strategy, WaitForever):
        return tau + scenario.bus_time
    if isinstance(strategy, WaitThenWalk):
        if tau <= strategy.t_wait:
            return tau + scenario.bus_time
        return strategy.t_wait + scenario.walk_time
    if isinstance(strategy, WalkAndWait):
        plan = strategy.plan
        t1 = plan.t1(scenario)
        if tau < t1:
            if rng.random() < plan.p_catch:
                return tau + scenario.bus_time
            return scenario.walk_time
        if tau <= t1 + plan.t_wait:
            return tau + scenario.bus_time
        return scenario.walk_time + plan.t_wait
    raise TypeError(f"unknown strategy {strategy!r}")


def _travel_times(
    scenario: Scenario,
    model: ArrivalModel,
    strategy: Strategy,
    rng: np.random.Generator,
    size: int,
) -> np.ndarray:
    tau = np.asarray(model.sample(rng, size), dtype=float)
    if isinstance(strategy, WalkNow):
        return np.full(size, scenario.walk_time)
    if isinstance(strategy, WaitForever):
        return tau + scenario.bus_time
    if isinstance(strategy, WaitThenWalk):
        return np.where(
            tau <= strategy.t_wait,
            tau + scenario.bus_time,
            strategy.t_wait + scenario.walk_time,
        )
    if isinstance(strategy, WalkAndWait):
        plan = strategy.plan
        t1 = plan.t1(scenario)
        out = np.where(
            tau <= t1 + plan.t_wait,
            tau + scenario.bus_time,
            scenario.walk_time + plan.t_wait,
        )
        passing = tau < t1
        if passing.any():
            caught = rng.random(int(passing.sum())) < plan.p_catch
            walked = np.flatnonzero(passing)[~caught]
            out[walked] = scenario.walk_time
        return out
    raise TypeError(f"unknown strategy {strategy!r}")


def estimate(
    scenario: Scenario,
    model: ArrivalModel,
    strategy: Strategy,
    n: int,
    seed: int,
) -> SimEstimate:
    """Mean travel time over n independent journeys, with its standard error.

    Deterministic for a fixed (n, seed).
    """
    if n < 2:
        raise ValueError("need at least two samples")
    total_n = 0
    mean = 0.0
    m2 = 0.0
    for chunk_idx, start in enumerate(range(0, n, CHUNK)):
        size = min(CHUNK, n - start)
        rng = np.random.default_rng([seed, chunk_idx])
        x = _travel_times(scenario, model, strategy, rng, size)
        c_mean = float(x.mean())
        c_m2 = float(((x - c_mean) ** 2).sum())
        # Chan et al. pairwise merge
        delta = c_mean - mean
        new_n = total_n + size
        m2 += c_m2 + delta * delta * total_n * size / new_n
        mean += delta * size / new_n
        total_n = new_n
    stderr = math.sqrt(m2 / (total_n - 1) / total_n)
    return SimEstimate(mean=mean, stderr=stderr, n=total_n)


def analytic_expectation(
    scenario: Scenario, model: ArrivalModel, strategy: Strategy
) -> float:
    """The closed/quadrature expectation matching a simulated strategy."""
    if isinstance(strategy, WalkNow):
        return scenario.walk_time
    if isinstance(strategy, WaitForever):
        return expected_tt_wait_forever(scenario, model)
    if isinstance(strategy, WaitThenWalk):
        return expected_tt(scenario, model, strategy.t_wait)
    if isinstance(strategy, WalkAndWait):
        return expected_tt_plan(scenario, model, strategy.plan)
    raise TypeError(f"unknown strategy {strategy!r}")
