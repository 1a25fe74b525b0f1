"""Bus arrival-time distributions.

Each model exposes the density p(t), the survival function R(t) = Pr{bus not
yet arrived by t}, the appearance rate lambda(t) = p(t)/R(t) together with
its slope, the mean arrival time, and seeded sampling for the simulator.
Time is measured in minutes throughout.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

# step for the finite-difference fallback on the density slope
FD_STEP = 1e-5
# survival below this is treated as "bus has certainly arrived"
SURVIVAL_FLOOR = 1e-12


class UndefinedRateError(ValueError):
    """Appearance rate requested where the survival function is zero."""


def _check_time(t: float) -> float:
    t = float(t)
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return t


class ArrivalModel(ABC):
    """A bus arrival-time distribution on a subset of [0, inf)."""

    @property
    @abstractmethod
    def support_end(self) -> float:
        """Upper end of the support (math.inf for unbounded models)."""

    @abstractmethod
    def density(self, t: float) -> float:
        """p(t); zero outside the support. Raises on negative t."""

    @abstractmethod
    def cdf(self, t: float) -> float:
        """Pr{arrival <= t}."""

    @abstractmethod
    def mean(self) -> float:
        """Expected arrival time."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, size=None):
        """Draw arrival times; deterministic given the generator state."""

    def breakpoints(self) -> tuple[float, ...]:
        """Times where the density or its slope is discontinuous."""
        return ()

    def density_slope(self, t: float) -> float:
        """p'(t), right-continuous at kinks.

        Default is a central finite difference; analytic variants override.
        """
        t = _check_time(t)
        if self.is_kink(t):
            return (self.density(t + FD_STEP) - self.density(t)) / FD_STEP
        lo = max(t - FD_STEP, 0.0)
        return (self.density(t + FD_STEP) - self.density(lo)) / (t + FD_STEP - lo)

    def survival(self, t: float) -> float:
        return 1.0 - self.cdf(t)

    def appearance_rate(self, t: float) -> float:
        t = _check_time(t)
        r = self.survival(t)
        if r <= 0.0:
            raise UndefinedRateError(f"survival is zero at t={t}")
        return self.density(t) / r

    def appearance_rate_slope(self, t: float) -> float:
        """lambda'(t) = (p'(t) R(t) + p(t)^2) / R(t)^2."""
        t = _check_time(t)
        r = self.survival(t)
        if r <= 0.0:
            raise UndefinedRateError(f"survival is zero at t={t}")
        p = self.density(t)
        return (self.density_slope(t) * r + p * p) / (r * r)

    def is_kink(self, t: float, tol: float = 1e-9) -> bool:
        return any(abs(t - k) <= tol for k in self.breakpoints())

    def quad_bound(self) -> float:
        """Finite time beyond which remaining mass is negligible."""
        return self.support_end


@dataclass(frozen=True)
class Uniform(ArrivalModel):
    """Punctual service with unknown phase: arrival uniform on [0, headway]."""

    headway: float

    def __post_init__(self):
        if not self.headway > 0.0:
            raise ValueError("headway must be positive")

    @property
    def support_end(self) -> float:
        return self.headway

    def density(self, t):
        t = _check_time(t)
        return 1.0 / self.headway if t < self.headway else 0.0

    def density_slope(self, t):
        _check_time(t)
        return 0.0

    def cdf(self, t):
        t = _check_time(t)
        return min(t / self.headway, 1.0)

    def appearance_rate(self, t):
        t = _check_time(t)
        if t >= self.headway:
            raise UndefinedRateError(f"survival is zero at t={t}")
        return 1.0 / (self.headway - t)

    def appearance_rate_slope(self, t):
        t = _check_time(t)
        if t >= self.headway:
            raise UndefinedRateError(f"survival is zero at t={t}")
        return 1.0 / (self.headway - t) ** 2

    def mean(self):
        return self.headway / 2.0

    def sample(self, rng, size=None):
        return rng.uniform(0.0, self.headway, size)

    def breakpoints(self):
        return (0.0, self.headway)


@dataclass(frozen=True)
class Exponential(ArrivalModel):
    """Poisson arrivals: constant appearance rate."""

    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError("rate must be positive")

    @property
    def support_end(self) -> float:
        return math.inf

    def density(self, t):
        t = _check_time(t)
        return self.rate * math.exp(-self.rate * t)

    def density_slope(self, t):
        t = _check_time(t)
        return -self.rate * self.rate * math.exp(-self.rate * t)

    def cdf(self, t):
        t = _check_time(t)
        return -math.expm1(-self.rate * t)

    def survival(self, t):
        t = _check_time(t)
        return math.exp(-self.rate * t)

    def appearance_rate(self, t):
        _check_time(t)
        return self.rate

    def appearance_rate_slope(self, t):
        _check_time(t)
        return 0.0

    def mean(self):
        return 1.0 / self.rate

    def sample(self, rng, size=None):
        return rng.exponential(1.0 / self.rate, size)

    def quad_bound(self):
        # survival ~ 4e-18 here, far below every tolerance in use
        return 40.0 / self.rate


@dataclass(frozen=True)
class LateBusMixture(ArrivalModel):
    """Arriving after the scheduled time of a possibly-late bus.

    With probability ``still_coming_prob`` the current bus is still on its
    way, arriving with a decreasing triangular density on [0, late_window];
    otherwise it already passed and the next bus arrives uniformly on
    [next_headway_offset, next_headway_offset + late_window].  The triangular
    head gives a falling appearance rate over the first window.
    """

    still_coming_prob: float
    late_window: float
    next_headway_offset: float

    def __post_init__(self):
        if not 0.0 <= self.still_coming_prob <= 1.0:
            raise ValueError("still_coming_prob must lie in [0, 1]")
        if not self.late_window > 0.0:
            raise ValueError("late_window must be positive")
        if not self.next_headway_offset > self.late_window:
            raise ValueError("next_headway_offset must exceed late_window")

    @property
    def support_end(self) -> float:
        return self.next_headway_offset + self.late_window

    def density(self, t):
        t = _check_time(t)
        w, L, H = self.still_coming_prob, self.late_window, self.next_headway_offset
        if t < L:
            return w * 2.0 * (L - t) / (L * L)
        if t < H:
            return 0.0
        if t < H + L:
            return (1.0 - w) / L
        return 0.0

    def density_slope(self, t):
        t = _check_time(t)
        w, L = self.still_coming_prob, self.late_window
        if t < L:
            return -2.0 * w / (L * L)
        return 0.0

    def cdf(self, t):
        t = _check_time(t)
        w, L, H = self.still_coming_prob, self.late_window, self.next_headway_offset
        if t < L:
            u = t / L
            return w * (2.0 * u - u * u)
        if t < H:
            return w
        if t < H + L:
            return w + (1.0 - w) * (t - H) / L
        return 1.0

    def mean(self):
        w, L, H = self.still_coming_prob, self.late_window, self.next_headway_offset
        return w * L / 3.0 + (1.0 - w) * (H + L / 2.0)

    def sample(self, rng, size=None):
        w, L, H = self.still_coming_prob, self.late_window, self.next_headway_offset
        coming = rng.random(size) < w
        u = rng.random(size)
        early = L * (1.0 - np.sqrt(1.0 - u))  # inverse triangular CDF
        late = H + L * u
        return np.where(coming, early, late)

    def breakpoints(self):
        L, H = self.late_window, self.next_headway_offset
        return (0.0, L, H, H + L)


class PiecewiseLinearDensity(ArrivalModel):
    """Density given by linear interpolation between knots, auto-normalized.

    Knots are (time, density) pairs with nondecreasing times; a repeated time
    encodes a jump.  The knot densities are scaled at construction so the
    total mass is one.
    """

    def __init__(self, knots):
        knots = [(float(t), float(y)) for t, y in knots]
        if len(knots) < 2:
            raise ValueError("need at least two knots")
        ts = [t for t, _ in knots]
        ys = [y for _, y in knots]
        if ts[0] < 0.0:
            raise ValueError("knot times must be nonnegative")
        if any(b < a for a, b in zip(ts, ts[1:])):
            raise ValueError("knot times must be nondecreasing")
        if any(y < 0.0 for y in ys):
            raise ValueError("knot densities must be nonnegative")
        total = sum(
            0.5 * (y0 + y1) * (t1 - t0)
            for (t0, y0), (t1, y1) in zip(knots, knots[1:])
        )
        if total <= 0.0:
            raise ValueError("knot densities integrate to zero; cannot normalize")
        self._ts = np.array(ts)
        self._ys = np.array(ys) / total
        # pieces with positive width: (t0, t1, y0, y1, cumulative mass at t0)
        pieces = []
        cum = 0.0
        for i in range(len(ts) - 1):
            t0, t1 = self._ts[i], self._ts[i + 1]
            if t1 > t0:
                y0, y1 = self._ys[i], self._ys[i + 1]
                pieces.append((t0, t1, y0, y1, cum))
                cum += 0.5 * (y0 + y1) * (t1 - t0)
        self._pieces = pieces

    @property
    def support_end(self) -> float:
        return float(self._ts[-1])

    def _piece_at(self, t):
        for t0, t1, y0, y1, cum in self._pieces:
            if t0 <= t < t1:
                return t0, t1, y0, y1, cum
        return None

    def density(self, t):
        t = _check_time(t)
        piece = self._piece_at(t)
        if piece is None:
            return 0.0
        t0, t1, y0, y1, _ = piece
        return y0 + (y1 - y0) * (t - t0) / (t1 - t0)

    def density_slope(self, t):
        t = _check_time(t)
        piece = self._piece_at(t)
        if piece is None:
            return 0.0
        t0, t1, y0, y1, _ = piece
        return (y1 - y0) / (t1 - t0)

    def cdf(self, t):
        t = _check_time(t)
        if t >= self.support_end:
            return 1.0
        piece = self._piece_at(t)
        if piece is None:
            # before the support starts
            return 0.0
        t0, t1, y0, y1, cum = piece
        x = t - t0
        slope = (y1 - y0) / (t1 - t0)
        return cum + y0 * x + 0.5 * slope * x * x

    def mean(self):
        total = 0.0
        for t0, t1, y0, y1, _ in self._pieces:
            h = t1 - t0
            slope = (y1 - y0) / h
            a = y0 - slope * t0  # density = a + slope * t on the piece
            total += a / 2.0 * (t1**2 - t0**2) + slope / 3.0 * (t1**3 - t0**3)
        return total

    def sample(self, rng, size=None):
        masses = np.array(
            [0.5 * (y0 + y1) * (t1 - t0) for t0, t1, y0, y1, _ in self._pieces]
        )
        edges = np.concatenate([[0.0], np.cumsum(masses)])
        edges[-1] = 1.0
        u = np.atleast_1d(rng.random(size))
        idx = np.minimum(np.searchsorted(edges, u, side="right") - 1, len(masses) - 1)
        t0 = np.array([p[0] for p in self._pieces])[idx]
        t1 = np.array([p[1] for p in self._pieces])[idx]
        y0 = np.array([p[2] for p in self._pieces])[idx]
        y1 = np.array([p[3] for p in self._pieces])[idx]
        m = u - edges[idx]
        slope = (y1 - y0) / (t1 - t0)
        # solve y0*x + slope/2 * x^2 = m for x in [0, t1 - t0]
        with np.errstate(divide="ignore", invalid="ignore"):
            disc = np.sqrt(np.maximum(y0 * y0 + 2.0 * slope * m, 0.0))
            x = np.where(
                np.abs(slope) > 1e-300,
                (disc - y0) / slope,
                np.divide(m, y0, out=np.zeros_like(m), where=y0 > 0),
            )
        out = t0 + np.clip(x, 0.0, t1 - t0)
        if size is None:
            return float(out[0])
        return out

    def breakpoints(self):
        return tuple(sorted(set(float(t) for t in self._ts)))

    def __repr__(self):
        knots = list(zip(self._ts.tolist(), self._ys.tolist()))
        return f"PiecewiseLinearDensity({knots})"


def model_from_config(config: dict) -> ArrivalModel:
    """Build a model from a dict with a `kind` discriminator."""
    if not isinstance(config, dict):
        raise ValueError("model config must be an object")
    kind = config.get("kind")
    if kind == "uniform":
        return Uniform(headway=config["headway"])
    if kind == "exponential":
        return Exponential(rate=config["rate"])
    if kind == "late_bus_mixture":
        return LateBusMixture(
            still_coming_prob=config["still_coming_prob"],
            late_window=config["late_window"],
            next_headway_offset=config["next_headway_offset"],
        )
    if kind == "piecewise":
        return PiecewiseLinearDensity(config["knots"])
    raise ValueError(f"unknown model kind: {kind!r}")
