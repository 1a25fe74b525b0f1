"""Command-line front end: analyze, optimize, sweep, simulate.

Configs are JSON with human-friendly units (km, km/h); everything internal
runs in km and minutes.  Exit codes: 0 success, 2 bad input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arrivals import ArrivalModel, model_from_config
from .expectation import Scenario, expected_tt, expected_tt_gradient, expected_tt_wait_forever
from .intermediate import (
    WalkAndWaitPlan,
    expected_tt_plan,
    expected_tt_walk_vigilant,
    plan_gradient_d1,
    walk_vs_wait_advantage,
)
from .mcsim import (
    WaitForever,
    WaitThenWalk,
    WalkAndWait,
    WalkNow,
    analytic_expectation,
    estimate,
)
from .optimizer import compare_wait_walk, find_stationary_points, optimal_policy

ANALYZE_SCHEMA = {
    "type": "object",
    "required": [
        "t_delta_min",
        "walk_time_min",
        "bus_time_min",
        "mean_arrival_min",
        "expected_wait_forever_min",
        "expected_walk_now_min",
        "verdict",
    ],
    "properties": {
        "t_delta_min": {"type": "number"},
        "walk_time_min": {"type": "number"},
        "bus_time_min": {"type": "number"},
        "mean_arrival_min": {"type": "number"},
        "expected_wait_forever_min": {"type": "number"},
        "expected_walk_now_min": {"type": "number"},
        "verdict": {"enum": ["wait", "walk", "indifferent"]},
    },
    "additionalProperties": False,
}


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def load_config(path: str) -> tuple[Scenario, ArrivalModel, float]:
    """Read a scenario config; returns (scenario, model, p_catch)."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(path, f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(path, f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(path, "config must be a JSON object")

    def number(field, minimum=None):
        if field not in raw:
            raise ConfigError(field, "missing required field")
        value = raw[field]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(field, "must be a number")
        if minimum is not None and not value > minimum:
            raise ConfigError(field, f"must be > {minimum}")
        return float(value)

    d = number("distance_km", 0.0)
    v_w = number("walk_speed_kmh", 0.0) / 60.0
    v_b = number("bus_speed_kmh", 0.0) / 60.0
    if v_b <= v_w:
        raise ConfigError("bus_speed_kmh", "must exceed walk_speed_kmh")
    try:
        scenario = Scenario(d=d, v_w=v_w, v_b=v_b)
    except ValueError as exc:
        raise ConfigError("scenario", str(exc)) from exc
    if "model" not in raw:
        raise ConfigError("model", "missing required field")
    try:
        model = model_from_config(raw["model"])
    except (KeyError, TypeError) as exc:
        raise ConfigError("model", f"missing or bad parameter: {exc}") from exc
    except ValueError as exc:
        raise ConfigError("model", str(exc)) from exc
    p_catch = raw.get("p_catch", 0.0)
    if not isinstance(p_catch, (int, float)) or not 0.0 <= p_catch <= 1.0:
        raise ConfigError("p_catch", "must be a number in [0, 1]")
    return scenario, model, float(p_catch)


def _analyze_payload(scenario: Scenario, model: ArrivalModel) -> dict:
    return {
        "t_delta_min": scenario.t_delta,
        "walk_time_min": scenario.walk_time,
        "bus_time_min": scenario.bus_time,
        "mean_arrival_min": model.mean(),
        "expected_wait_forever_min": expected_tt_wait_forever(scenario, model),
        "expected_walk_now_min": scenario.walk_time,
        "verdict": compare_wait_walk(scenario, model),
    }


def cmd_analyze(args) -> int:
    scenario, model, _ = load_config(args.config)
    payload = _analyze_payload(scenario, model)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(f"break-even wait (t_delta): {payload['t_delta_min']:.6g} min")
    print(f"walking time:              {payload['walk_time_min']:.6g} min")
    print(f"bus riding time:           {payload['bus_time_min']:.6g} min")
    print(f"mean bus arrival:          {payload['mean_arrival_min']:.6g} min")
    print(f"E[wait forever]:           {payload['expected_wait_forever_min']:.6g} min")
    print(f"E[walk now]:               {payload['expected_walk_now_min']:.6g} min")
    print(f"verdict:                   {payload['verdict']}")
    return 0


def cmd_optimize(args) -> int:
    scenario, model, _ = load_config(args.config)
    points = find_stationary_points(scenario, model, args.horizon)
    policy = optimal_policy(scenario, model, args.horizon)
    if args.json:
        print(
            json.dumps(
                {
                    "stationary_points": [
                        {"t_wait": p.t_wait, "kind": p.kind, "expected_tt": p.expected_tt}
                        for p in points
                    ],
                    "policy": {
                        "strategy": policy.strategy,
                        "t_wait": policy.t_wait,
                        "expected_tt": policy.expected_tt,
                    },
                },
                indent=2,
            )
        )
        return 0
    if points:
        for p in points:
            print(f"stationary {p.kind} at t_wait={p.t_wait:.6g} min, E={p.expected_tt:.6g} min")
    else:
        print("no stationary points")
    wait = "" if policy.t_wait is None else f" (t_wait={policy.t_wait:.6g} min)"
    print(f"policy: {policy.strategy}{wait}, E={policy.expected_tt:.6g} min")
    return 0


def cmd_sweep(args) -> int:
    scenario, model, p_catch = load_config(args.config)
    if args.steps < 2:
        raise ConfigError("steps", "must be at least 2")
    if not args.stop > args.start:
        raise ConfigError("to", "must exceed --from")
    span = args.stop - args.start
    xs = [args.start + span * i / (args.steps - 1) for i in range(args.steps)]
    if args.var == "tw":
        header = "x,expected_tt,derivative"
        rows = [
            (x, expected_tt(scenario, model, x), expected_tt_gradient(scenario, model, x).first)
            for x in xs
        ]
    elif args.var == "d1":
        header = "x,expected_tt,derivative"
        rows = []
        for x in xs:
            plan = WalkAndWaitPlan(d1=x, t_wait=args.tw, p_catch=p_catch)
            rows.append(
                (
                    x,
                    expected_tt_plan(scenario, model, plan),
                    plan_gradient_d1(scenario, model, plan),
                )
            )
    elif args.var == "pc":
        header = "x,expected_tt,advantage"
        rows = [
            (
                x,
                expected_tt_walk_vigilant(scenario, model, x),
                walk_vs_wait_advantage(scenario, model, x),
            )
            for x in xs
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError("var", f"unknown sweep variable {args.var!r}")
    lines = [header] + [",".join(f"{v:.12g}" for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


def parse_strategy(text: str):
    name, _, params = text.partition(":")
    try:
        if name == "wait_forever":
            return WaitForever()
        if name == "walk_now":
            return WalkNow()
        if name == "wait_then_walk":
            return WaitThenWalk(t_wait=float(params))
        if name == "walk_and_wait":
            d1, tw, pc = (float(v) for v in params.split(","))
            return WalkAndWait(plan=WalkAndWaitPlan(d1=d1, t_wait=tw, p_catch=pc))
    except ValueError as exc:
        raise ConfigError("strategy", f"bad parameters in {text!r}: {exc}") from exc
    raise ConfigError("strategy", f"unknown strategy {text!r}")


def cmd_simulate(args) -> int:
    scenario, model, _ = load_config(args.config)
    strategy = parse_strategy(args.strategy)
    if args.n < 2:
        raise ConfigError("n", "must be at least 2")
    result = estimate(scenario, model, strategy, args.n, args.seed)
    analytic = analytic_expectation(scenario, model, strategy)
    z = (result.mean - analytic) / result.stderr if result.stderr > 0 else 0.0
    if args.json:
        print(
            json.dumps(
                {
                    "mean": result.mean,
                    "stderr": result.stderr,
                    "n": result.n,
                    "analytic": analytic,
                    "z": z,
                },
                indent=2,
            )
        )
        return 0
    print(f"mean:     {result.mean:.12g} min")
    print(f"stderr:   {result.stderr:.12g} min")
    print(f"n:        {result.n}")
    print(f"analytic: {analytic:.12g} min")
    print(f"z-score:  {z:.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkwait",
        description="Wait-for-the-bus versus walk decision analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="break-even summary and wait/walk verdict")
    p.add_argument("config")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("optimize", help="stationary waiting times and best policy")
    p.add_argument("config")
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="tabulate a curve to CSV")
    p.add_argument("config")
    p.add_argument("--var", choices=["tw", "d1", "pc"], required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tw", type=float, default=0.0, help="wait time for d1 sweeps")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo estimate vs analytic value")
    p.add_argument("config")
    p.add_argument("--strategy", required=True)
    p.add_argument("--n", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
