"""Expected travel time under a wait-then-walk policy, with derivatives.

The traveller waits up to ``t_wait`` minutes for a bus, boarding if it comes,
and otherwise walks the whole way.  ``t_wait = math.inf`` means wait forever;
``t_wait = 0`` means walk immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arrivals import ArrivalModel, Exponential, Uniform
from .quadrature import integrate_piecewise

QUAD_TOL = 1e-12


@dataclass(frozen=True)
class Scenario:
    """Journey distance (km) and the two speeds (km/min), bus faster than foot."""

    d: float
    v_w: float
    v_b: float

    def __post_init__(self):
        if not self.d > 0.0:
            raise ValueError("distance must be positive")
        if not self.v_w > 0.0:
            raise ValueError("walking speed must be positive")
        if not self.v_b > self.v_w:
            raise ValueError("bus speed must exceed walking speed")

    @property
    def walk_time(self) -> float:
        return self.d / self.v_w

    @property
    def bus_time(self) -> float:
        return self.d / self.v_b

    @property
    def t_delta(self) -> float:
        """Walking time minus bus time: the break-even expected wait."""
        return self.d / self.v_w - self.d / self.v_b

    @property
    def q(self) -> float:
        """Pace difference 1/v_w - 1/v_b (min/km)."""
        return 1.0 / self.v_w - 1.0 / self.v_b


@dataclass(frozen=True)
class GradientPair:
    """First and second derivative of expected travel time in the wait time."""

    first: float
    second: float
    one_sided: bool = False


def t_delta(scenario: Scenario) -> float:
    return scenario.t_delta


def _check_wait(t_wait: float) -> float:
    t_wait = float(t_wait)
    if t_wait < 0.0:
        raise ValueError("wait time must be nonnegative")
    return t_wait


def _uniform_closed(scenario: Scenario, headway: float, t_wait: float) -> float:
    w = min(t_wait, headway)
    frac = w / headway
    return (
        frac * scenario.bus_time
        + w * w / (2.0 * headway)
        + (1.0 - frac) * (scenario.walk_time + w)
    )


def _exponential_closed(scenario: Scenario, rate: float, t_wait: float) -> float:
    # E = bus + 1/rate + exp(-rate*W) * (t_delta - 1/rate)
    if math.isinf(t_wait):
        return scenario.bus_time + 1.0 / rate
    decay = math.exp(-rate * t_wait)
    return scenario.bus_time + 1.0 / rate + decay * (scenario.t_delta - 1.0 / rate)


def expected_tt(
    scenario: Scenario,
    model: ArrivalModel,
    t_wait: float,
    method: str = "auto",
) -> float:
    """Expected travel time (minutes) when waiting up to t_wait, then walking.

    method: "auto" uses closed forms for uniform and exponential models and
    quadrature otherwise; "closed" and "quadrature" force one route.
    """
    t_wait = _check_wait(t_wait)
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method != "quadrature":
        if isinstance(model, Uniform):
            return _uniform_closed(scenario, model.headway, t_wait)
        if isinstance(model, Exponential):
            return _exponential_closed(scenario, model.rate, t_wait)
        if method == "closed":
            raise ValueError(f"no closed form for {type(model).__name__}")
    if math.isinf(t_wait):
        return expected_tt_wait_forever(scenario, model)
    bus = scenario.bus_time
    upper = min(t_wait, model.quad_bound())
    boarded = integrate_piecewise(
        lambda tau: (bus + tau) * model.density(tau),
        0.0,
        upper,
        model.breakpoints(),
        QUAD_TOL,
    )
    return boarded + model.survival(t_wait) * (scenario.walk_time + t_wait)


def expected_tt_wait_forever(scenario: Scenario, model: ArrivalModel) -> float:
    """Expected travel time when committed to waiting for the bus."""
    return scenario.bus_time + model.mean()


def expected_tt_gradient(
    scenario: Scenario, model: ArrivalModel, t_wait: float
) -> GradientPair:
    """d/dW and d2/dW2 of expected_tt at t_wait.

    At a density kink the second component uses the right-hand density slope
    and the result is flagged one_sided.
    """
    t_wait = _check_wait(t_wait)
    td = scenario.t_delta
    p = model.density(t_wait)
    first = model.survival(t_wait) - td * p
    one_sided = model.is_kink(t_wait)
    second = -p - td * model.density_slope(t_wait)
    return GradientPair(first=first, second=second, one_sided=one_sided)
