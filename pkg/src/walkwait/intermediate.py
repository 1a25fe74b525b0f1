"""Walk-and-wait plans: walk to an intermediate stop, maybe catch a bus
en route, then wait there for a bounded time.

While walking a distance d1 the traveller's head start over the bus shrinks
by t1 = d1 * q minutes; a bus passing in that window is caught with
probability p_catch.  Caught-bus travel times are clocked by the bus's
arrival at the *starting* point, since the arrival density refers to a fixed
point on the route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arrivals import ArrivalModel
from .expectation import (
    QUAD_TOL,
    GradientPair,
    Scenario,
    expected_tt,
    expected_tt_wait_forever,
)
from .quadrature import integrate_piecewise


@dataclass(frozen=True)
class WalkAndWaitPlan:
    """Walk d1 km (catching a passing bus with probability p_catch), then
    wait up to t_wait minutes at the intermediate stop."""

    d1: float
    t_wait: float
    p_catch: float

    def __post_init__(self):
        if self.d1 < 0.0:
            raise ValueError("d1 must be nonnegative")
        if self.t_wait < 0.0:
            raise ValueError("t_wait must be nonnegative")
        if not 0.0 <= self.p_catch <= 1.0:
            raise ValueError("p_catch must lie in [0, 1]")

    def t1(self, scenario: Scenario) -> float:
        """Head start eroded while walking to the stop (minutes)."""
        return self.d1 * scenario.q

    def t_delta1(self, scenario: Scenario) -> float:
        """Break-even wait from the intermediate stop."""
        return scenario.t_delta - self.t1(scenario)


def _check_plan(scenario: Scenario, plan: WalkAndWaitPlan) -> None:
    if plan.d1 > scenario.d:
        raise ValueError("d1 cannot exceed the journey distance")


def prob_miss(
    scenario: Scenario, model: ArrivalModel, plan: WalkAndWaitPlan
) -> float:
    """Probability a bus passes before the intermediate stop is reached."""
    _check_plan(scenario, plan)
    return model.cdf(plan.t1(scenario))


def expected_tt_plan(
    scenario: Scenario, model: ArrivalModel, plan: WalkAndWaitPlan
) -> float:
    """Expected travel time of a walk-and-wait plan (minutes)."""
    _check_plan(scenario, plan)
    if plan.d1 == 0.0:
        # no walking leg: identical to waiting t_wait at the origin
        return expected_tt(scenario, model, plan.t_wait)
    t1 = plan.t1(scenario)
    bus = scenario.bus_time
    walk = scenario.walk_time
    rest_walk = (scenario.d - plan.d1) / scenario.v_w
    rest_bus = (scenario.d - plan.d1) / scenario.v_b
    breaks = model.breakpoints()

    # bus passes en route and is caught: total time is its arrival at the
    # starting point plus the full bus ride
    caught = plan.p_catch * integrate_piecewise(
        lambda tau: (bus + tau) * model.density(tau), 0.0, min(t1, model.quad_bound()),
        breaks, QUAD_TOL,
    )
    missed = (1.0 - plan.p_catch) * model.cdf(t1) * walk

    # no bus en route: wait-then-walk from the stop, offset by t1
    upper = min(t1 + plan.t_wait, model.quad_bound())
    boarded = integrate_piecewise(
        lambda tau: (rest_bus + (tau - t1)) * model.density(tau), t1, upper,
        breaks, QUAD_TOL,
    )
    at_stop = plan.d1 / scenario.v_w * model.survival(t1) + boarded
    if math.isfinite(plan.t_wait):
        at_stop += model.survival(t1 + plan.t_wait) * (rest_walk + plan.t_wait)
    return caught + missed + at_stop


def plan_gradient_tw(
    scenario: Scenario, model: ArrivalModel, plan: WalkAndWaitPlan
) -> GradientPair:
    """Derivatives of the plan's expected time in t_wait.

    Same structure as the origin-stop gradient, shifted by t1 and with the
    reduced break-even wait t_delta1.
    """
    _check_plan(scenario, plan)
    t = plan.t1(scenario) + plan.t_wait
    td1 = plan.t_delta1(scenario)
    p = model.density(t)
    first = model.survival(t) - td1 * p
    second = -p - td1 * model.density_slope(t)
    return GradientPair(first=first, second=second, one_sided=model.is_kink(t))


def plan_gradient_d1(
    scenario: Scenario, model: ArrivalModel, plan: WalkAndWaitPlan
) -> float:
    """Derivative of the plan's expected time in d1 (minutes per km)."""
    _check_plan(scenario, plan)
    t1 = plan.t1(scenario)
    q = scenario.q
    return (
        q
        * q
        * (scenario.d - plan.d1)
        * ((1.0 - plan.p_catch) * model.density(t1) - model.density(t1 + plan.t_wait))
    )


def expected_tt_walk_vigilant(
    scenario: Scenario, model: ArrivalModel, p_catch: float
) -> float:
    """Expected time when walking the whole way, alert for passing buses.

    This is the best walk-and-wait plan: d1 = d, no terminal waiting.
    """
    if not 0.0 <= p_catch <= 1.0:
        raise ValueError("p_catch must lie in [0, 1]")
    td = scenario.t_delta
    saving = integrate_piecewise(
        lambda tau: (td - tau) * model.density(tau),
        0.0,
        min(td, model.quad_bound()),
        model.breakpoints(),
        QUAD_TOL,
    )
    return scenario.walk_time - p_catch * saving


def walk_vs_wait_advantage(
    scenario: Scenario, model: ArrivalModel, p_catch: float
) -> float:
    """Expected minutes saved by vigilant walking over waiting at the origin.

    Positive favours walking.  Computed from the regrouped difference
    formula; equals expected_tt_wait_forever - expected_tt_walk_vigilant.
    """
    if not 0.0 <= p_catch <= 1.0:
        raise ValueError("p_catch must lie in [0, 1]")
    td = scenario.t_delta
    early_mean = integrate_piecewise(
        lambda tau: tau * model.density(tau),
        0.0,
        min(td, model.quad_bound()),
        model.breakpoints(),
        QUAD_TOL,
    )
    late_mean = model.mean() - early_mean
    return (
        p_catch * td * model.cdf(td)
        + (1.0 - p_catch) * early_mean
        + late_mean
        - td
    )


def uniform_pc_threshold(headway_ratio: float) -> float | None:
    """Minimum catch probability for vigilant walking to beat waiting, for a
    uniform headway with ratio = headway / t_delta.

    Returns None when no probability in [0, 1] suffices (ratio below 1).
    """
    if not headway_ratio > 0.0:
        raise ValueError("headway ratio must be positive")
    if headway_ratio < 1.0:
        return None
    if headway_ratio > 2.0:
        return 0.0
    return 2.0 * headway_ratio - headway_ratio * headway_ratio
