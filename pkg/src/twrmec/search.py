"""One-dimensional search over the relay transmit power, plus the two
fixed-partition baseline schemes.

The partition subproblem is solved in closed form per power value; the outer
problem is handled with a dense log-spaced grid followed by golden-section
refinement of the best bracket (unimodality near the optimum is assumed, not
proven; the dense grid bounds the damage of a wrong assumption).
"""

import math
from dataclasses import dataclass

from . import _kernels
from .model import (ChannelRealization, EnergyBreakdown, InfeasibleError, Schedule,
                    SystemParams)
from .partition import CandidateResult, evaluate_candidate, solve_given_pr

SCHEMES = ("proposed", "relay_computing", "local_computing")

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchConfig:
    pr_min: float = 1e-4       # W
    pr_max: float = 10.0       # W
    grid_points: int = 200
    refine_iters: int = 40
    scheme: str = "proposed"

    def __post_init__(self):
        if not 0.0 < self.pr_min < self.pr_max:
            raise ValueError("SearchConfig requires 0 < pr_min < pr_max")
        if self.grid_points < 16:
            raise ValueError("SearchConfig requires grid_points >= 16")
        if self.refine_iters < 0:
            raise ValueError("SearchConfig requires refine_iters >= 0")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")


@dataclass(frozen=True)
class OptimalSolution:
    schedule: Schedule
    energy: EnergyBreakdown
    scheme: str
    candidate_label: str

    @property
    def power_relay(self) -> float:
        return self.schedule.power_relay_Pr


def _pr_grid(config: SearchConfig):
    n = config.grid_points
    la, lb = math.log(config.pr_min), math.log(config.pr_max)
    return [math.exp(la + (lb - la) * i / (n - 1)) for i in range(n)]


def _golden_refine(f, lo, hi, iters, best):
    """Golden-section minimization on log(Pr) within [lo, hi]; returns the best
    (pr, energy) over all evaluated points, seeded with `best`."""
    a, b = math.log(lo), math.log(hi)
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc = f(math.exp(c))
    fd = f(math.exp(d))
    best_pr, best_e = best
    if fc < best_e:
        best_pr, best_e = math.exp(c), fc
    if fd < best_e:
        best_pr, best_e = math.exp(d), fd
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(math.exp(c))
            if fc < best_e:
                best_pr, best_e = math.exp(c), fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(math.exp(d))
            if fd < best_e:
                best_pr, best_e = math.exp(d), fd
    return best_pr, best_e


def _grid_then_refine(f, config: SearchConfig):
    grid = _pr_grid(config)
    energies = [f(pr) for pr in grid]
    i_best = min(range(len(grid)), key=lambda i: (energies[i], i))
    if not math.isfinite(energies[i_best]):
        raise InfeasibleError("every relay-power grid point is infeasible")
    lo = grid[max(i_best - 1, 0)]
    hi = grid[min(i_best + 1, len(grid) - 1)]
    best = (grid[i_best], energies[i_best])
    if config.refine_iters > 0 and hi > lo:
        best = _golden_refine(f, lo, hi, config.refine_iters, best)
    return best


def _proposed_energy_at(params, chan, pr):
    out = _kernels._solve_pr(
        pr, params.deadline_T, chan.gamma_1f, chan.gamma_2f,
        chan.gamma_1b, chan.gamma_2b, params.task_bits_L1, params.task_bits_L2,
        params.bandwidth_B, params.cycles_per_bit_k, params.cpu_user_Fu,
        params.cpu_relay_Fr, params.eff_cap_user_eta_u, params.eff_cap_relay_eta_r)
    return out[1] if out[0] == 1.0 else math.inf


def _fixed_alpha_energy_at(params, chan, pr, alpha1):
    rb = params.bandwidth_B * math.log2(1.0 + pr * chan.gamma_b)
    out = _kernels._eval_candidate(
        alpha1, pr, rb, params.deadline_T, chan.gamma_1f, chan.gamma_2f,
        params.task_bits_L1, params.task_bits_L2, params.bandwidth_B,
        params.cycles_per_bit_k, params.cpu_user_Fu, params.cpu_relay_Fr,
        params.eff_cap_user_eta_u, params.eff_cap_relay_eta_r)
    return out[1] if out[0] == 1.0 else math.inf


def solve(params: SystemParams, chan: ChannelRealization,
          config: SearchConfig = SearchConfig()) -> OptimalSolution:
    """Jointly optimal schedule: closed-form partition per relay power, grid +
    golden-section search over the power."""
    pr_best, _ = _grid_then_refine(lambda pr: _proposed_energy_at(params, chan, pr),
                                   config)
    cand = solve_given_pr(params, chan, pr_best)
    return OptimalSolution(cand.schedule, cand.energy, "proposed", cand.label)


def solve_baseline(params: SystemParams, chan: ChannelRealization, scheme: str,
                   config: SearchConfig = SearchConfig()) -> OptimalSolution:
    """Fixed-partition comparison schemes.

    relay_computing pins alpha1 = alpha2 = 1 (nothing broadcast, so the relay
    power is irrelevant and stored as 0); local_computing pins the partition
    at its lower box bound and still searches the relay power, which prices
    the broadcast slot.
    """
    if scheme == "relay_computing":
        cand = evaluate_candidate(params, chan, 0.0, 1.0, "alpha_one")
        if not cand.feasible:
            raise InfeasibleError(
                f"relay_computing infeasible for T={params.deadline_T!r}")
        return OptimalSolution(cand.schedule, cand.energy, scheme, cand.label)
    if scheme == "local_computing":
        alpha1 = max(0.0, 1.0 - params.task_bits_L2 / params.task_bits_L1)
        pr_best, _ = _grid_then_refine(
            lambda pr: _fixed_alpha_energy_at(params, chan, pr, alpha1), config)
        cand = evaluate_candidate(params, chan, pr_best, alpha1, "alpha_zero")
        if not cand.feasible:
            raise InfeasibleError(
                f"local_computing infeasible for T={params.deadline_T!r}")
        return OptimalSolution(cand.schedule, cand.energy, scheme, cand.label)
    raise ValueError(f"solve_baseline: unknown scheme {scheme!r}")


def solve_scheme(params: SystemParams, chan: ChannelRealization,
                 config: SearchConfig = SearchConfig()) -> OptimalSolution:
    """Dispatch on config.scheme."""
    if config.scheme == "proposed":
        return solve(params, chan, config)
    return solve_baseline(params, chan, config.scheme, config)
