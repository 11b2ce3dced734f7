"""Command-line front end: single-instance solve, Monte-Carlo deadline sweep,
and closed-form-vs-oracle validation.

Configuration is a single flat JSON object whose keys are SystemParams,
SweepConfig and SearchConfig field names (plus optional explicit channel
gains gamma_1f/gamma_2f/gamma_1b/gamma_2b for `solve`); command-line flags
override file values, and everything defaults to the reference operating
point.

Exit codes: 0 success, 1 infeasible instance, 2 validation failure,
3 I/O or configuration error.
"""

import argparse
import dataclasses
import json
import sys

from .model import ChannelRealization, InfeasibleError, SystemParams
from .montecarlo import (SweepConfig, channels_for_trial, run_sweep, run_validation,
                         solve_single)
from .oracle import OracleConfig
from .search import SCHEMES, SearchConfig

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_VALIDATION = 2
EXIT_CONFIG = 3

_PARAM_KEYS = {f.name for f in dataclasses.fields(SystemParams)}
_SWEEP_KEYS = {"t_min", "t_max", "t_points", "n_trials", "seed", "avg_power_loss"}
_SEARCH_KEYS = {"pr_min", "pr_max", "grid_points", "refine_iters", "scheme"}
_CHANNEL_KEYS = {"gamma_1f", "gamma_2f", "gamma_1b", "gamma_2b"}


class ConfigError(ValueError):
    pass


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a flat JSON object")
    unknown = set(cfg) - _PARAM_KEYS - _SWEEP_KEYS - _SEARCH_KEYS - _CHANNEL_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _build(cfg, keys, cls):
    picked = {k: cfg[k] for k in keys if k in cfg}
    try:
        return cls(**picked)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {cls.__name__} values: {exc}") from exc


def _channels(cfg, seed, avg_power_loss, sigma2):
    present = _CHANNEL_KEYS & set(cfg)
    if present:
        if present != _CHANNEL_KEYS:
            raise ConfigError("either all four gamma_* keys or none")
        return ChannelRealization(**{k: cfg[k] for k in _CHANNEL_KEYS})
    return channels_for_trial(seed, 0, avg_power_loss, sigma2)


def _emit(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_solve(args):
    cfg = _load_config(args.config)
    params = _build(cfg, _PARAM_KEYS, SystemParams)
    search = _build(cfg, _SEARCH_KEYS, SearchConfig)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    scheme = args.scheme or cfg.get("scheme", "proposed")
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}")
    chan = _channels(cfg, seed, float(cfg.get("avg_power_loss", 1e-6)),
                     params.noise_power_sigma2)
    try:
        report = solve_single(params, chan, scheme, search)
    except InfeasibleError as exc:
        _emit({"error": "infeasible", "detail": str(exc),
               "deadline_T": params.deadline_T, "scheme": scheme}, args.output)
        return EXIT_INFEASIBLE
    _emit(report, args.output)
    return EXIT_OK


def _cmd_sweep(args):
    cfg = _load_config(args.config)
    params = _build(cfg, _PARAM_KEYS, SystemParams)
    search = _build(cfg, _SEARCH_KEYS, SearchConfig)
    fields = {k: cfg[k] for k in _SWEEP_KEYS if k in cfg}
    for flag, key in ((args.seed, "seed"), (args.trials, "n_trials"),
                      (args.t_min, "t_min"), (args.t_max, "t_max"),
                      (args.t_points, "t_points")):
        if flag is not None:
            fields[key] = flag
    # the scheme key configures single solves; sweeps always run all three
    fields.pop("scheme", None)
    try:
        sweep = SweepConfig(params=params, search=dataclasses.replace(search, scheme="proposed"),
                            **fields)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad SweepConfig values: {exc}") from exc
    try:
        run_sweep(sweep, csv_path=args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def _cmd_validate(args):
    cfg = _load_config(args.config)
    params = _build(cfg, _PARAM_KEYS, SystemParams)
    search = _build(cfg, _SEARCH_KEYS, SearchConfig)
    seed = int(cfg.get("seed", 0))
    summary = run_validation(params, seed=seed, n_instances=args.instances,
                             rel_tol=args.tol,
                             avg_power_loss=float(cfg.get("avg_power_loss", 1e-6)),
                             search_config=dataclasses.replace(search, scheme="proposed"),
                             oracle_config=OracleConfig())
    _emit(summary, None)
    return EXIT_OK if summary["all_passed"] else EXIT_VALIDATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twrmec",
        description="Energy-optimal two-way-relay MEC scheduling: solver, "
                    "Monte-Carlo sweep and oracle validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance, emit a JSON report")
    p.add_argument("--config", help="flat JSON config file")
    p.add_argument("--seed", type=int, help="seed for the channel draw")
    p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--output", help="JSON output path ('-' for stdout)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="energy-vs-deadline Monte-Carlo sweep to CSV")
    p.add_argument("--config", help="flat JSON config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--t-points", type=int)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate", help="closed form vs brute-force oracle")
    p.add_argument("--config", help="flat JSON config file")
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--tol", type=float, default=0.01)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as exc:
        print(f"error: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
