"""Stationary waiting times and the globally optimal simple strategy.

Stationary points of the expected travel time occur where the appearance
rate crosses 1/t_delta; a crossing on a falling rate is a minimum, on a
rising rate a maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrivals import ArrivalModel, Exponential
from .expectation import Scenario, expected_tt, expected_tt_wait_forever

SCAN_POINTS = 4096
BISECT_WIDTH = 1e-10
RESIDUAL_TOL = 1e-9
FLAT_TOL = 1e-12
TIE_TOL = 1e-12


@dataclass(frozen=True)
class StationaryPoint:
    t_wait: float
    kind: str  # "minimum" | "maximum" | "flat"
    expected_tt: float


@dataclass(frozen=True)
class PolicyChoice:
    strategy: str  # "wait_forever" | "walk_now" | "wait_then_walk"
    expected_tt: float
    t_wait: float | None = None


def default_horizon(model: ArrivalModel) -> float:
    """Search horizon covering all mass relevant at the working tolerances."""
    if math.isfinite(model.support_end):
        return model.support_end
    if isinstance(model, Exponential):
        return model.mean() + 10.0 / model.rate
    return model.quad_bound()


def find_stationary_points(
    scenario: Scenario,
    model: ArrivalModel,
    horizon: float | None = None,
) -> list[StationaryPoint]:
    """Locate sign changes of lambda(t) - 1/t_delta and classify each one.

    Scans a fixed grid and bisects every bracketed crossing; crossings caused
    by a density jump (where the rate itself never equals 1/t_delta) are
    discarded.  A rate that is flat at exactly 1/t_delta yields a single
    "flat" marker at t = 0.
    """
    if horizon is None:
        horizon = default_horizon(model)
    if not horizon > 0.0:
        raise ValueError("horizon must be positive")
    td = scenario.t_delta
    target = 1.0 / td
    end = min(horizon, model.support_end)

    def g(t: float) -> float:
        return model.appearance_rate(t) - target

    ts = np.linspace(0.0, end, SCAN_POINTS + 2)[1:-1]
    gs = []
    grid = []
    for t in ts:
        if model.survival(t) <= 1e-15:
            break
        grid.append(t)
        gs.append(g(t))
    if not grid:
        return []
    if max(abs(v) for v in gs) < FLAT_TOL:
        return [StationaryPoint(0.0, "flat", expected_tt(scenario, model, 0.0))]

    points: list[StationaryPoint] = []
    for (a, ga), (b, gb) in zip(zip(grid, gs), zip(grid[1:], gs[1:])):
        if ga == 0.0:
            root = a
        elif ga * gb < 0.0:
            lo, hi = a, b
            glo = ga
            while hi - lo > BISECT_WIDTH:
                mid = 0.5 * (lo + hi)
                gm = g(mid)
                if gm == 0.0:
                    lo = hi = mid
                    break
                if glo * gm < 0.0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            root = 0.5 * (lo + hi)
        else:
            continue
        # reject jump-discontinuity brackets: the rate never hits the target
        residual = abs(model.survival(root) - td * model.density(root))
        if residual > RESIDUAL_TOL:
            continue
        slope = model.appearance_rate_slope(root)
        if abs(slope) < FLAT_TOL:
            kind = "flat"
        elif slope < 0.0:
            kind = "minimum"
        else:
            kind = "maximum"
        points.append(
            StationaryPoint(root, kind, expected_tt(scenario, model, root))
        )
    return points


def optimal_policy(
    scenario: Scenario,
    model: ArrivalModel,
    horizon: float | None = None,
) -> PolicyChoice:
    """Best of walk-now, wait-forever, and every interior minimum.

    Ties within 1e-12 min go to walk_now, then wait_forever, then the
    smallest finite wait.
    """
    candidates = [
        PolicyChoice("walk_now", expected_tt(scenario, model, 0.0)),
        PolicyChoice("wait_forever", expected_tt_wait_forever(scenario, model)),
    ]
    minima = [
        sp
        for sp in find_stationary_points(scenario, model, horizon)
        if sp.kind == "minimum"
    ]
    for sp in sorted(minima, key=lambda sp: sp.t_wait):
        candidates.append(
            PolicyChoice("wait_then_walk", sp.expected_tt, t_wait=sp.t_wait)
        )
    best = candidates[0]
    for cand in candidates[1:]:
        if cand.expected_tt < best.expected_tt - TIE_TOL:
            best = cand
    return best


def compare_wait_walk(scenario: Scenario, model: ArrivalModel) -> str:
    """"wait" if the mean arrival beats t_delta, "walk" if not, else tied."""
    diff = model.mean() - scenario.t_delta
    if abs(diff) < 1e-12:
        return "indifferent"
    return "wait" if diff < 0.0 else "walk"


def classify_uniform(scenario: Scenario, headway: float) -> str:
    """The three uniform-headway regimes, plus the knife-edge between 2 and 3."""
    if not headway > 0.0:
        raise ValueError("headway must be positive")
    td = scenario.t_delta
    if abs(headway - 2.0 * td) < 1e-12:
        return "marginal"
    if headway < td:
        return "case1_wait"
    if headway < 2.0 * td:
        return "case2_wait_with_interior_max"
    return "case3_walk"
