"""walkwait: wait-for-the-bus versus walk decision analysis.

Expected travel times under arbitrary bus arrival-time distributions,
optimal waiting times via appearance-rate analysis, intermediate-stop
walk-and-wait plans, and a seeded Monte Carlo verifier.
"""

from .arrivals import (
    ArrivalModel,
    Exponential,
    LateBusMixture,
    PiecewiseLinearDensity,
    UndefinedRateError,
    Uniform,
    model_from_config,
)
from .expectation import (
    GradientPair,
    Scenario,
    expected_tt,
    expected_tt_gradient,
    expected_tt_wait_forever,
    t_delta,
)
from .intermediate import (
    WalkAndWaitPlan,
    expected_tt_plan,
    expected_tt_walk_vigilant,
    plan_gradient_d1,
    plan_gradient_tw,
    prob_miss,
    uniform_pc_threshold,
    walk_vs_wait_advantage,
)
from .mcsim import (
    SimEstimate,
    Strategy,
    WaitForever,
    WaitThenWalk,
    WalkAndWait,
    WalkNow,
    analytic_expectation,
    estimate,
    simulate_once,
)
from .optimizer import (
    PolicyChoice,
    StationaryPoint,
    classify_uniform,
    compare_wait_walk,
    find_stationary_points,
    optimal_policy,
)

__all__ = [
    "ArrivalModel",
    "Exponential",
    "GradientPair",
    "LateBusMixture",
    "PiecewiseLinearDensity",
    "PolicyChoice",
    "Scenario",
    "SimEstimate",
    "StationaryPoint",
    "Strategy",
    "UndefinedRateError",
    "Uniform",
    "WaitForever",
    "WaitThenWalk",
    "WalkAndWait",
    "WalkAndWaitPlan",
    "WalkNow",
    "analytic_expectation",
    "classify_uniform",
    "compare_wait_walk",
    "estimate",
    "expected_tt",
    "expected_tt_gradient",
    "expected_tt_plan",
    "expected_tt_wait_forever",
    "expected_tt_walk_vigilant",
    "find_stationary_points",
    "model_from_config",
    "optimal_policy",
    "plan_gradient_d1",
    "plan_gradient_tw",
    "prob_miss",
    "simulate_once",
    "t_delta",
    "uniform_pc_threshold",
    "walk_vs_wait_advantage",
]

__version__ = "0.1.0"
