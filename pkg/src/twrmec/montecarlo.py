"""Monte-Carlo harness: Rayleigh fading draws, deadline sweeps and oracle
validation runs.

Reproducibility contract: channel draws for trial i come from a PCG64
generator seeded with SeedSequence([seed, i]), drawing the four gains in the
fixed order (user1 forward, user2 forward, user1 backward, user2 backward).
Trials are therefore independent of execution order, and all schemes and all
deadlines of a sweep share the same draws (common random numbers).
"""

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .model import ChannelRealization, InfeasibleError, SystemParams, check_feasible
from .oracle import OracleConfig, validate
from .search import SCHEMES, SearchConfig, solve, solve_baseline


@dataclass(frozen=True)
class SweepConfig:
    t_min: float = 0.7
    t_max: float = 1.5
    t_points: int = 9
    n_trials: int = 500
    seed: int = 20240817
    avg_power_loss: float = 1e-6
    params: SystemParams = field(default_factory=SystemParams)
    search: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self):
        if self.t_min <= 0.0 or self.t_max < self.t_min:
            raise ValueError("SweepConfig requires 0 < t_min <= t_max")
        if self.t_points < 2:
            raise ValueError("SweepConfig requires t_points >= 2")
        if self.n_trials < 1:
            raise ValueError("SweepConfig requires n_trials >= 1")
        if self.seed < 0:
            raise ValueError("SweepConfig requires a nonnegative seed")

    @property
    def deadlines(self):
        step = (self.t_max - self.t_min) / (self.t_points - 1)
        return tuple(self.t_min + i * step for i in range(self.t_points))


@dataclass(frozen=True)
class SweepRecord:
    deadline_T: float
    scheme: str
    mean_energy: float        # over feasible trials only
    feasible_fraction: float
    n_trials: int
    seed: int


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    deadlines: tuple
    # scheme -> array of shape (t_points, n_trials); NaN marks infeasible trials
    trial_energy: dict


CSV_HEADER = "deadline_T,scheme,mean_energy,feasible_fraction,n_trials,seed"


def sample_channels(rng: np.random.Generator, avg_power_loss: float,
                    sigma2: float) -> ChannelRealization:
    """One fading draw: |h|^2 i.i.d. exponential with mean avg_power_loss
    (Rayleigh amplitudes), normalized by the noise power."""
    gains = rng.exponential(avg_power_loss, 4)
    return ChannelRealization(
        gamma_1f=gains[0] / sigma2,
        gamma_2f=gains[1] / sigma2,
        gamma_1b=gains[2] / sigma2,
        gamma_2b=gains[3] / sigma2,
    )


def channels_for_trial(seed: int, trial: int, avg_power_loss: float,
                       sigma2: float) -> ChannelRealization:
    """Deterministic per-trial draw; see the module docstring for the recipe."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
    return sample_channels(rng, avg_power_loss, sigma2)


def _solve_one(params: SystemParams, chan: ChannelRealization, scheme: str,
               search_config: SearchConfig):
    if scheme == "proposed":
        return solve(params, chan, search_config)
    return solve_baseline(params, chan, scheme, search_config)


def run_sweep(config: SweepConfig, csv_path=None) -> SweepResult:
    """Average energy of the three schemes over common channel draws for each
    deadline on the grid. Infeasible trials stay NaN, are excluded from the
    mean and counted through feasible_fraction."""
    deadlines = config.deadlines
    energy = {s: np.full((config.t_points, config.n_trials), math.nan) for s in SCHEMES}
    for trial in range(config.n_trials):
        chan = channels_for_trial(config.seed, trial, config.avg_power_loss,
                                  config.params.noise_power_sigma2)
        for i_t, T in enumerate(deadlines):
            params = dataclasses.replace(config.params, deadline_T=T)
            for scheme in SCHEMES:
                try:
                    sol = _solve_one(params, chan, scheme, config.search)
                except InfeasibleError:
                    continue
                energy[scheme][i_t, trial] = sol.energy.total

    records = []
    for i_t, T in enumerate(deadlines):
        for scheme in SCHEMES:
            row = energy[scheme][i_t]
            feasible = np.isfinite(row)
            n_ok = int(feasible.sum())
            mean = float(row[feasible].mean()) if n_ok else math.nan
            records.append(SweepRecord(
                deadline_T=T, scheme=scheme, mean_energy=mean,
                feasible_fraction=n_ok / config.n_trials,
                n_trials=config.n_trials, seed=config.seed))
    result = SweepResult(records=tuple(records), deadlines=deadlines,
                         trial_energy=energy)
    if csv_path is not None:
        write_sweep_csv(result.records, csv_path)
    return result


def write_sweep_csv(records, path):
    """Stable schema, deterministic row order (deadline ascending, scheme in
    fixed order), shortest round-trip float formatting: identical records give
    byte-identical files."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(f"{r.deadline_T!r},{r.scheme},{r.mean_energy!r},"
                     f"{r.feasible_fraction!r},{r.n_trials},{r.seed}")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def solve_single(params: SystemParams, chan: ChannelRealization, scheme: str,
                 search_config: SearchConfig = SearchConfig()) -> dict:
    """Solve one instance and return a JSON-ready report."""
    sol = _solve_one(params, chan, scheme, search_config)
    report = check_feasible(params, chan, sol.schedule,
                            tol_abs=1e-9 * max(params.deadline_T, 1.0))
    return {
        "scheme": sol.scheme,
        "candidate_label": sol.candidate_label,
        "deadline_T": params.deadline_T,
        "schedule": dataclasses.asdict(sol.schedule),
        "energy": dataclasses.asdict(sol.energy),
        "feasibility": {"feasible": report.feasible,
                        "violations": list(report.violations)},
        "channel": dataclasses.asdict(chan),
    }


def run_validation(params: SystemParams, seed: int, n_instances: int,
                   rel_tol: float = 0.01, avg_power_loss: float = 1e-6,
                   search_config: SearchConfig = SearchConfig(),
                   oracle_config: OracleConfig = OracleConfig()) -> dict:
    """Closed form vs brute-force oracle on seeded fading instances."""
    reports = []
    for i in range(n_instances):
        chan = channels_for_trial(seed, i, avg_power_loss, params.noise_power_sigma2)
        rep = validate(params, chan, rel_tol, search_config, oracle_config)
        reports.append({
            "instance": i,
            "closed_form_energy": rep.closed_form_energy,
            "oracle_energy": rep.oracle_energy,
            "gap": rep.gap,
            "passed": rep.passed,
            "candidate_label": rep.candidate_label,
        })
    gaps = [r["gap"] for r in reports]
    return {
        "n_instances": n_instances,
        "seed": seed,
        "rel_tol": rel_tol,
        "deadline_T": params.deadline_T,
        "max_gap": max(gaps) if gaps else math.nan,
        "all_passed": all(r["passed"] for r in reports),
        "instances": reports,
    }
