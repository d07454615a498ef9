"""Command-line front end: posture calculators, curve emitters, simulators.

Subcommands::

    blockade likelihood|solve-n|solve-p|indifference|budget-curve|optimize
    delay    trajectory|min-defenses|likelihood|solve-n|indifference|surface|optimize
    simulate blockade|whack|stealth
    risk

Scalar answers print as a bare number; curves default to CSV; optimizer
verdicts and simulation estimates default to JSON. ``--format csv|json``
overrides, ``--out`` redirects to a file, ``--precision`` sets significant
digits (default 9).

Any flag may instead come from a config file of ``key = value`` lines
(``#`` starts a comment; keys are the flag names without leading dashes,
e.g. ``tau-a = 1``). Command-line flags override config values. When
``--config`` is absent, the environment variable ``DEPTH_PLANNER_CONFIG``
may name a default config file.

Exit codes: 0 success; 2 invalid arguments or domain errors; 3 infeasible
target, or an underspending verdict under ``--require-feasible``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .blockade import (
    BlockadePosture,
    CostModel,
    SpendClass,
    blockade_likelihood,
    budget_curve,
    indifference_curve,
    optimize_blockade,
    solve_defense_count,
    solve_failure_prob,
)
from .core import RiskInput, ThreatModel, risk
from .delay import (
    DelayCostModel,
    DelayTimescales,
    DetectionModel,
    min_defenses_whackamole,
    optimize_delay,
    solve_stealth_defense_count,
    stealth_indifference,
    stealth_likelihood,
    stealth_surface,
    trajectory,
)
from .errors import DomainError, InfeasibleTarget
from .output import (
    emit,
    format_number,
    render_json,
    render_table,
    series_table,
    tool_provenance,
)
from .simulation import (
    SimulationConfig,
    simulate_blockade,
    simulate_stealth,
    simulate_whackamole,
)

__all__ = ["run", "main"]


@dataclass(frozen=True, slots=True)
class _Opt:
    """One command-line flag, also addressable from a config file."""

    flag: str
    kind: str  # float | int | str | bool | choice
    help: str
    required: bool = False
    default: object = None
    choices: tuple = ()

    @property
    def key(self) -> str:
        return self.flag.lstrip("-")

    @property
    def dest(self) -> str:
        return self.key.replace("-", "_")


def _f(flag, help, *, required=False, default=None):
    return _Opt(flag, "float", help, required, default)


def _i(flag, help, *, required=False, default=None):
    return _Opt(flag, "int", help, required, default)


def _b(flag, help):
    return _Opt(flag, "bool", help, False, False)


_OUTPUT = (
    _Opt("--format", "choice", "serialize as csv or json instead of the default",
         choices=("csv", "json")),
    _Opt("--out", "str", "write to this file instead of stdout"),
    _Opt("--precision", "int", "significant digits for printed numbers", default=9),
    _Opt("--config", "str", "file of 'key = value' flag defaults"),
)
_THREAT = (
    _i("--N", "number of attackers", default=1),
    _f("--g", "attacker dependence factor, 1 = independent", default=1.0),
)
_SIM = (
    _i("--trials", "Monte Carlo trials", default=100_000),
    _i("--seed", "RNG seed; fixes the output bytes", default=1),
    _i("--workers", "worker threads; never changes the results", default=1),
)
_TIMESCALES = (
    _f("--tf", "mean time for an attacker to find a defense", required=True),
    _f("--tb", "mean time to break a found defense", required=True),
    _f("--td", "mean time to detect a broken defense", required=True),
    _f("--tr", "mean time to repair a detected defense", required=True),
)

# Flags that shape presentation or scheduling, not the scenario; these are
# left out of the JSON "inputs" echo so output bytes cannot depend on them.
_NON_SCENARIO = {"format", "out", "precision", "config", "workers", "require-feasible"}


@dataclass(slots=True)
class _Outcome:
    """A handler's result plus every rendering of it."""

    outputs: dict
    table: tuple  # (header, rows) for CSV
    scalar: object = None  # bare value for the plain default
    seed: object = None  # provenance seed for stochastic results
    exit_code: int = 0
    inputs: dict = field(default_factory=dict)


def _scalar(name, value) -> _Outcome:
    return _Outcome(outputs={name: value}, table=((name,), ((value,),)), scalar=value)


def _series(series) -> _Outcome:
    header, rows = series_table(series)
    outputs = {"labels": list(header), "points": [list(row) for row in rows]}
    return _Outcome(outputs=outputs, table=(header, rows))


def _record(fields: dict, seed=None, exit_code=0) -> _Outcome:
    return _Outcome(
        outputs=dict(fields),
        table=(tuple(fields), (tuple(fields.values()),)),
        seed=seed,
        exit_code=exit_code,
    )


def _threat_of(v) -> ThreatModel:
    return ThreatModel(v["N"], v["g"])


def _timescales_of(v) -> DelayTimescales:
    return DelayTimescales(v["tf"], v["tb"], v["td"], v["tr"])


def _sim_config_of(v) -> SimulationConfig:
    return SimulationConfig(v["trials"], v["seed"], v["workers"])


def _verdict_exit(v, classification) -> int:
    if v["require_feasible"] and classification is SpendClass.UNDERSPENDING:
        sys.stderr.write(
            "depth-planner: budget is below the minimal feasible cost (underspending)\n"
        )
        return 3
    return 0


def _cmd_blockade_likelihood(v) -> _Outcome:
    posture = BlockadePosture(v["n"], v["p"], v["f"])
    return _scalar("L", float(blockade_likelihood(posture, _threat_of(v))))


def _cmd_blockade_solve_n(v) -> _Outcome:
    return _scalar("n", solve_defense_count(v["p"], v["L"], _threat_of(v), v["f"]))


def _cmd_blockade_solve_p(v) -> _Outcome:
    return _scalar("p", float(solve_failure_prob(v["n"], v["L"], _threat_of(v))))


def _cmd_blockade_indifference(v) -> _Outcome:
    series = indifference_curve(
        v["L"], _threat_of(v), v["f"], (v["p_min"], v["p_max"]), v["steps"]
    )
    return _series(series)


def _cmd_blockade_budget_curve(v) -> _Outcome:
    cost_model = CostModel(v["A"], v["p_best"], v["budget"])
    return _series(budget_curve(cost_model, (v["p_min"], v["p_max"]), v["steps"]))


def _cmd_blockade_optimize(v) -> _Outcome:
    cost_model = CostModel(v["A"], v["p_best"], v["budget"])
    verdict = optimize_blockade(
        v["L"], _threat_of(v), v["f"], cost_model, integer_mode=v["integer"]
    )
    fields = {
        "classification": verdict.classification.value,
        "p": verdict.optimal_posture.failure_prob,
        "n": verdict.optimal_posture.defense_count,
        "cost": verdict.minimal_cost,
        "surplus": verdict.surplus,
    }
    return _record(fields, exit_code=_verdict_exit(v, verdict.classification))


def _cmd_delay_trajectory(v) -> _Outcome:
    return _series(trajectory(_timescales_of(v), v["N"], v["t_max"], v["steps"]))


def _cmd_delay_min_defenses(v) -> _Outcome:
    return _scalar("n_min", min_defenses_whackamole(_timescales_of(v), v["N"]))


def _cmd_delay_likelihood(v) -> _Outcome:
    detection = DetectionModel(v["lambda"], v["tau_a"])
    return _scalar("L", float(stealth_likelihood(detection, v["n"], _threat_of(v))))


def _cmd_delay_solve_n(v) -> _Outcome:
    detection = DetectionModel(v["lambda"], v["tau_a"])
    return _scalar("n", solve_stealth_defense_count(v["L"], detection, _threat_of(v)))


def _cmd_delay_indifference(v) -> _Outcome:
    series = stealth_indifference(
        v["L"], _threat_of(v), (v["x_min"], v["x_max"]), v["steps"]
    )
    return _series(series)


def _cmd_delay_surface(v) -> _Outcome:
    series = stealth_surface(
        v["L"],
        _threat_of(v),
        (v["lambda_min"], v["lambda_max"]),
        v["lambda_steps"],
        (v["tau_a_min"], v["tau_a_max"]),
        v["tau_a_steps"],
    )
    return _series(series)


def _cmd_delay_optimize(v) -> _Outcome:
    cost_model = DelayCostModel(v["A"], v["x_best"], v["budget"])
    verdict = optimize_delay(
        v["L"], _threat_of(v), cost_model, integer_mode=v["integer"]
    )
    fields = {
        "classification": verdict.classification.value,
        "x": verdict.capability,
        "n": verdict.defense_count,
        "cost": verdict.minimal_cost,
        "surplus": verdict.surplus,
    }
    return _record(fields, exit_code=_verdict_exit(v, verdict.classification))


def _cmd_simulate_blockade(v) -> _Outcome:
    posture = BlockadePosture(float(v["n"]), v["p"], v["f"])
    estimate = simulate_blockade(posture, _threat_of(v), _sim_config_of(v))
    fields = {
        "mean": estimate.mean,
        "std_error": estimate.std_error,
        "trials": estimate.trials,
    }
    return _record(fields, seed=v["seed"])


def _cmd_simulate_stealth(v) -> _Outcome:
    detection = DetectionModel(v["lambda"], v["tau_a"])
    estimate = simulate_stealth(detection, float(v["n"]), _threat_of(v), _sim_config_of(v))
    fields = {
        "mean": estimate.mean,
        "std_error": estimate.std_error,
        "trials": estimate.trials,
    }
    return _record(fields, seed=v["seed"])


def _cmd_simulate_whack(v) -> _Outcome:
    if v["steps"] < 2:
        raise DomainError(f"steps must be an integer >= 2, got {v['steps']!r}")
    sample_times = np.linspace(0.0, v["t_max"], v["steps"])
    result = simulate_whackamole(
        _timescales_of(v), v["n"], v["N"], v["t_max"], sample_times, _sim_config_of(v)
    )
    header = ("t", "n_broken", "std_error")
    rows = tuple((t, est.mean, est.std_error) for t, est in result.trajectory)
    outputs = {
        "trajectory": {"labels": list(header), "points": [list(row) for row in rows]},
        "breach_prob": {
            "mean": result.breach_prob.mean,
            "std_error": result.breach_prob.std_error,
            "note": "simulation-only",
        },
        "trials": result.breach_prob.trials,
    }
    return _Outcome(outputs=outputs, table=(header, rows), seed=v["seed"])


def _cmd_risk(v) -> _Outcome:
    return _scalar("R", risk(RiskInput(v["I"], v["L"])))


@dataclass(frozen=True, slots=True)
class _Command:
    path: tuple
    help: str
    options: tuple
    handler: object
    default_format: str  # plain | csv | json


_COMMANDS = (
    _Command(
        ("blockade", "likelihood"),
        "breach likelihood of an n-defense posture",
        (
            _f("--p", "per-defense failure probability", required=True),
            _f("--n", "number of defenses (may be fractional)", required=True),
            _f("--f", "defense dependence factor, 1 = independent", default=1.0),
            *_THREAT,
            *_OUTPUT,
        ),
        _cmd_blockade_likelihood,
        "plain",
    ),
    _Command(
        ("blockade", "solve-n"),
        "defenses needed to reach a target likelihood",
        (
            _f("--p", "per-defense failure probability", required=True),
            _f("--L", "target breach likelihood", required=True),
            _f("--f", "defense dependence factor, 1 = independent", default=1.0),
            *_THREAT,
            *_OUTPUT,
        ),
        _cmd_blockade_solve_n,
        "plain",
    ),
    _Command(
        ("blockade", "solve-p"),
        "per-defense failure probability meeting a target (independent defenses)",
        (
            _f("--n", "number of defenses (may be fractional)", required=True),
            _f("--L", "target breach likelihood", required=True),
            *_THREAT,
            *_OUTPUT,
        ),
        _cmd_blockade_solve_p,
        "plain",
    ),
    _Command(
        ("blockade", "indifference"),
        "equal-likelihood (p, n) curve",
        (
            _f("--L", "target breach likelihood", required=True),
            _f("--f", "defense dependence factor, 1 = independent", default=1.0),
            *_THREAT,
            _f("--p-min", "low end of the p grid", required=True),
            _f("--p-max", "high end of the p grid", required=True),
            _i("--steps", "number of grid points", default=50),
            *_OUTPUT,
        ),
        _cmd_blockade_indifference,
        "csv",
    ),
    _Command(
        ("blockade", "budget-curve"),
        "defense count a budget affords at each p",
        (
            _f("--A", "price scale per defense", default=1.0),
            _f("--p-best", "best achievable failure probability (price asymptote)",
               default=0.0),
            _f("--budget", "total budget", required=True),
            _f("--p-min", "low end of the p grid", required=True),
            _f("--p-max", "high end of the p grid", required=True),
            _i("--steps", "number of grid points", default=50),
            *_OUTPUT,
        ),
        _cmd_blockade_budget_curve,
        "csv",
    ),
    _Command(
        ("blockade", "optimize"),
        "cheapest posture meeting the target, classified against the budget",
        (
            _f("--L", "target breach likelihood", required=True),
            _f("--f", "defense dependence factor, 1 = independent", default=1.0),
            *_THREAT,
            _f("--A", "price scale per defense", default=1.0),
            _f("--p-best", "best achievable failure probability (price asymptote)",
               default=0.0),
            _f("--budget", "total budget", required=True),
            _b("--integer", "restrict to whole defense counts"),
            _b("--require-feasible", "exit 3 when the budget cannot meet the target"),
            *_OUTPUT,
        ),
        _cmd_blockade_optimize,
        "json",
    ),
    _Command(
        ("delay", "trajectory"),
        "mean broken-defense count over time",
        (
            *_TIMESCALES,
            _i("--N", "number of attackers", default=1),
            _f("--t-max", "end of the time grid", required=True),
            _i("--steps", "number of grid points", default=50),
            *_OUTPUT,
        ),
        _cmd_delay_trajectory,
        "csv",
    ),
    _Command(
        ("delay", "min-defenses"),
        "fewest defenses that outlast continual breakage",
        (
            *_TIMESCALES,
            _i("--N", "number of attackers", default=1),
            *_OUTPUT,
        ),
        _cmd_delay_min_defenses,
        "plain",
    ),
    _Command(
        ("delay", "likelihood"),
        "stealth breach likelihood of an n-stage posture",
        (
            _f("--lambda", "detection rate while a defense is under attack",
               required=True),
            _f("--tau-a", "attacker time spent per defense", required=True),
            _f("--n", "number of defenses (may be fractional)", required=True),
            *_THREAT,
            *_OUTPUT,
        ),
        _cmd_delay_likelihood,
        "plain",
    ),
    _Command(
        ("delay", "solve-n"),
        "defenses needed to reach a target stealth likelihood",
        (
            _f("--lambda", "detection rate while a defense is under attack",
               required=True),
            _f("--tau-a", "attacker time spent per defense", required=True),
            _f("--L", "target breach likelihood", required=True),
            *_THREAT,
            *_OUTPUT,
        ),
        _cmd_delay_solve_n,
        "plain",
    ),
    _Command(
        ("delay", "indifference"),
        "equal-likelihood (x, n) curve over capability x = lambda*tau_a",
        (
            _f("--L", "target breach likelihood", required=True),
            *_THREAT,
            _f("--x-min", "low end of the capability grid", required=True),
            _f("--x-max", "high end of the capability grid", required=True),
            _i("--steps", "number of grid points", default=50),
            *_OUTPUT,
        ),
        _cmd_delay_indifference,
        "csv",
    ),
    _Command(
        ("delay", "surface"),
        "required defenses over a (lambda, tau_a) grid",
        (
            _f("--L", "target breach likelihood", required=True),
            *_THREAT,
            _f("--lambda-min", "low end of the detection-rate grid", required=True),
            _f("--lambda-max", "high end of the detection-rate grid", required=True),
            _i("--lambda-steps", "detection-rate grid points", default=20),
            _f("--tau-a-min", "low end of the stage-time grid", required=True),
            _f("--tau-a-max", "high end of the stage-time grid", required=True),
            _i("--tau-a-steps", "stage-time grid points", default=20),
            *_OUTPUT,
        ),
        _cmd_delay_surface,
        "csv",
    ),
    _Command(
        ("delay", "optimize"),
        "cheapest capability-and-count mix meeting the target",
        (
            _f("--L", "target breach likelihood", required=True),
            *_THREAT,
            _f("--A", "price scale per defense", default=1.0),
            _f("--x-best", "best achievable capability (price asymptote)",
               required=True),
            _f("--budget", "total budget", required=True),
            _b("--integer", "restrict to whole defense counts"),
            _b("--require-feasible", "exit 3 when the budget cannot meet the target"),
            *_OUTPUT,
        ),
        _cmd_delay_optimize,
        "json",
    ),
    _Command(
        ("simulate", "blockade"),
        "Monte Carlo breach frequency for the blockade chain",
        (
            _f("--p", "per-defense failure probability", required=True),
            _i("--n", "number of defenses", required=True),
            _f("--f", "defense dependence factor, 1 = independent", default=1.0),
            *_THREAT,
            *_SIM,
            *_OUTPUT,
        ),
        _cmd_simulate_blockade,
        "json",
    ),
    _Command(
        ("simulate", "whack"),
        "event-driven break/repair race with a defense cap",
        (
            *_TIMESCALES,
            _i("--n", "installed defense count", required=True),
            _i("--N", "number of attackers", default=1),
            _f("--t-max", "simulation horizon", required=True),
            _i("--steps", "sample times across the horizon", default=50),
            *_SIM,
            *_OUTPUT,
        ),
        _cmd_simulate_whack,
        "json",
    ),
    _Command(
        ("simulate", "stealth"),
        "Monte Carlo stage-by-stage detection race",
        (
            _f("--lambda", "detection rate while a defense is under attack",
               required=True),
            _f("--tau-a", "attacker time spent per defense", required=True),
            _i("--n", "number of defenses", required=True),
            *_THREAT,
            *_SIM,
            *_OUTPUT,
        ),
        _cmd_simulate_stealth,
        "json",
    ),
    _Command(
        ("risk",),
        "expected loss: impact times likelihood",
        (
            _f("--I", "impact of a breach (any unit)", required=True),
            _f("--L", "breach likelihood", required=True),
            *_OUTPUT,
        ),
        _cmd_risk,
        "plain",
    ),
)

_GROUP_HELP = {
    "blockade": "stop every attacker outright: likelihoods, inversions, curves, optimizer",
    "delay": "buy time instead: trajectories, stealth likelihoods, curves, optimizer",
    "simulate": "independent Monte Carlo checks of the closed forms",
}


def _attach(subparser: argparse.ArgumentParser, command: _Command) -> None:
    for opt in command.options:
        help_text = opt.help + (" (required)" if opt.required else "")
        if opt.kind == "bool":
            subparser.add_argument(
                opt.flag, action="store_true", default=None, help=help_text
            )
        elif opt.kind == "choice":
            subparser.add_argument(
                opt.flag, choices=list(opt.choices), default=None, help=help_text
            )
        elif opt.kind in ("float", "int"):
            subparser.add_argument(
                opt.flag,
                type=float if opt.kind == "float" else int,
                default=None,
                metavar=opt.dest.upper(),
                help=help_text,
            )
        else:
            subparser.add_argument(
                opt.flag, default=None, metavar=opt.dest.upper(), help=help_text
            )
    subparser.set_defaults(_command=command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depth-planner",
        description="Plan and check defense-in-depth postures: closed forms, "
        "inversions, budget optimizers, and seeded Monte Carlo validation.",
    )
    top = parser.add_subparsers(metavar="command")
    groups: dict = {}
    for command in _COMMANDS:
        if len(command.path) == 1:
            sub = top.add_parser(command.path[0], help=command.help)
            _attach(sub, command)
            continue
        group, name = command.path
        if group not in groups:
            group_parser = top.add_parser(group, help=_GROUP_HELP[group])
            groups[group] = group_parser.add_subparsers(metavar="subcommand")
        sub = groups[group].add_parser(name, help=command.help)
        _attach(sub, command)
    return parser


def _to_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _convert(text: str, opt: _Opt):
    try:
        if opt.kind == "float":
            return float(text)
        if opt.kind == "int":
            return int(text)
        if opt.kind == "bool":
            return _to_bool(text)
        if opt.kind == "choice" and text not in opt.choices:
            raise ValueError(f"must be one of {', '.join(opt.choices)}")
        return text
    except ValueError as exc:
        raise DomainError(f"config value {opt.key} = {text!r}: {exc}") from exc


def _load_config(path: str | None) -> dict:
    if path is None:
        path = os.environ.get("DEPTH_PLANNER_CONFIG") or None
    if path is None:
        return {}
    entries: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise DomainError(
                    f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
                )
            entries[key] = value
    return entries


def _resolve_values(args: argparse.Namespace, command: _Command) -> dict:
    config = _load_config(getattr(args, "config", None))
    values = {}
    for opt in command.options:
        value = getattr(args, opt.dest, None)
        if value is None and opt.key in config:
            value = _convert(config[opt.key], opt)
        if value is None:
            value = opt.default
        if value is None and opt.required:
            raise DomainError(f"{' '.join(command.path)}: --{opt.key} is required")
        values[opt.dest] = value
    return values


def _scenario_inputs(command: _Command, values: dict) -> dict:
    return {
        opt.key: values[opt.dest]
        for opt in command.options
        if opt.key not in _NON_SCENARIO and values[opt.dest] is not None
    }


def _write(outcome: _Outcome, command: _Command, values: dict) -> None:
    chosen = values.get("format") or command.default_format
    precision = values["precision"]
    if chosen == "plain":
        value = outcome.scalar
        text = (value if isinstance(value, str) else format_number(value, precision)) + "\n"
    elif chosen == "csv":
        header, rows = outcome.table
        text = render_table(header, rows, precision)
    else:
        text = render_json(
            outcome.inputs, outcome.outputs, tool_provenance(outcome.seed), precision
        )
    emit(text, values.get("out"))


def run(argv=None) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote its diagnostic
        return int(exc.code) if exc.code else 0
    command = getattr(args, "_command", None)
    if command is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("depth-planner: a subcommand is required\n")
        return 2
    try:
        values = _resolve_values(args, command)
        outcome = command.handler(values)
        outcome.inputs = _scenario_inputs(command, values)
        _write(outcome, command, values)
        return outcome.exit_code
    except InfeasibleTarget as exc:
        sys.stderr.write(f"depth-planner: {exc}\n")
        return 3
    except DomainError as exc:
        sys.stderr.write(f"depth-planner: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"depth-planner: {exc}\n")
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
