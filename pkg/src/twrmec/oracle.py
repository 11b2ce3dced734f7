"""Independent brute-force verifier for the closed-form solver.

Direct grid search over (relay power, partition factor, first offload slot)
using nothing but the system-model arithmetic: no KKT forms, no Lambert W, no
case analysis. The remaining decision variables are eliminated exactly: the
coupling constraint fixes alpha2, the computing times fix tau4, and the full
time budget is spent (tau1+tau2+tau3+tau4 = T), which the closed form also
uses and which a small inequality-budget grid spot-checks in the tests.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import (ChannelRealization, InfeasibleError, Schedule, SystemParams,
                    evaluate_schedule, power_for_duration)
from .search import SearchConfig, solve


@dataclass(frozen=True)
class OracleConfig:
    pr_points: int = 128
    alpha_points: int = 128
    tau_points: int = 128
    pr_min: float = 1e-4
    pr_max: float = 10.0

    def __post_init__(self):
        if min(self.pr_points, self.alpha_points, self.tau_points) < 32:
            raise ValueError("OracleConfig requires all grid counts >= 32")
        if not 0.0 < self.pr_min < self.pr_max:
            raise ValueError("OracleConfig requires 0 < pr_min < pr_max")


@dataclass(frozen=True)
class ValidationReport:
    closed_form_energy: float
    oracle_energy: float
    gap: float        # closed_form/oracle - 1; negative when the closed form wins
    rel_tol: float
    passed: bool
    candidate_label: str


def brute_force(params: SystemParams, chan: ChannelRealization,
                config: OracleConfig = OracleConfig()):
    """Minimum-energy schedule on the grid. Returns (Schedule, total energy).

    Ties break toward the lowest (pr, alpha1, tau1) grid indices, in that
    order, so results are deterministic.
    """
    L1, L2 = params.task_bits_L1, params.task_bits_L2
    B = params.bandwidth_B
    k = params.cycles_per_bit_k
    g1f, g2f = chan.gamma_1f, chan.gamma_2f
    T = params.deadline_T
    c1 = L1 * math.log(2.0) / B
    c2 = L2 * math.log(2.0) / B

    pr_grid = np.exp(np.linspace(math.log(config.pr_min), math.log(config.pr_max),
                                 config.pr_points))
    alpha_lo = max(0.0, 1.0 - L2 / L1)
    alpha = np.linspace(alpha_lo, 1.0, config.alpha_points)
    frac = np.arange(1, config.tau_points + 1) / (config.tau_points + 1.0)

    alpha2 = 1.0 - (1.0 - alpha) * L1 / L2
    user_bits = (1.0 - alpha) * L1
    relay_bits = alpha * L1 + alpha2 * L2
    t_u = k * user_bits / params.cpu_user_Fu
    cu = k * user_bits * params.eff_cap_user_eta_u * params.cpu_user_Fu ** 2
    cr = k * relay_bits * params.eff_cap_relay_eta_r * params.cpu_relay_Fr ** 2
    relay_cycles_time = k * relay_bits / params.cpu_relay_Fr

    best = (math.inf, -1, -1, -1)  # energy, pr idx, alpha idx, tau idx
    with np.errstate(over="ignore", invalid="ignore"):
        for ip, pr in enumerate(pr_grid):
            r_b = B * math.log2(1.0 + pr * chan.gamma_b)
            tau3 = np.where(user_bits > 0.0, user_bits / r_b, 0.0)
            tau4 = np.maximum(t_u, np.maximum(relay_cycles_time - tau3, 0.0))
            tau_hat = T - tau3 - tau4
            feasible = tau_hat > 0.0
            if not feasible.any():
                continue
            e_fixed = tau3 * pr + 2.0 * cu + cr
            tau1 = tau_hat[:, None] * frac[None, :]
            tau2 = tau_hat[:, None] - tau1
            e12 = (tau1 * np.expm1(c1 / tau1) / g1f
                   + tau2 * np.expm1(c2 / tau2) / g2f)
            total = e_fixed[:, None] + e12
            total[~feasible, :] = math.inf
            flat = int(np.argmin(total))
            ia, it = divmod(flat, config.tau_points)
            e = float(total[ia, it])
            if e < best[0]:
                best = (e, ip, ia, it)

    if best[1] < 0:
        raise InfeasibleError("oracle: no grid point admits a positive offload budget")

    _, ip, ia, it = best
    pr = float(pr_grid[ip])
    a1 = float(alpha[ia])
    a2 = float(alpha2[ia])
    r_b = B * math.log2(1.0 + pr * chan.gamma_b)
    tau3 = float(user_bits[ia] / r_b) if user_bits[ia] > 0.0 else 0.0
    tau4 = float(max(t_u[ia], max(relay_cycles_time[ia] - tau3, 0.0)))
    tau_hat = T - tau3 - tau4
    tau1 = tau_hat * float(frac[it])
    tau2 = tau_hat - tau1
    schedule = Schedule(
        alpha1=a1, alpha2=a2, tau1=tau1, tau2=tau2, tau3=tau3, tau4=tau4,
        power_user1_P1=power_for_duration(tau1, L1, g1f, B),
        power_user2_P2=power_for_duration(tau2, L2, g2f, B),
        power_relay_Pr=pr)
    breakdown = evaluate_schedule(params, chan, schedule)
    if abs(breakdown.total - best[0]) > 1e-9 * best[0]:
        raise RuntimeError(
            f"oracle self-check failed: scan {best[0]!r} vs model {breakdown.total!r}")
    return schedule, breakdown.total


def validate(params: SystemParams, chan: ChannelRealization, rel_tol: float = 0.01,
             search_config: SearchConfig = SearchConfig(),
             oracle_config: OracleConfig = OracleConfig()) -> ValidationReport:
    """Run both solvers and compare.

    The closed form may beat the discretized oracle; it must never be worse
    by more than grid slack, so the pass condition is
    closed_form <= oracle * (1 + rel_tol).
    """
    solution = solve(params, chan, search_config)
    _, oracle_energy = brute_force(params, chan, oracle_config)
    closed = solution.energy.total
    gap = closed / oracle_energy - 1.0
    return ValidationReport(
        closed_form_energy=float(closed),
        oracle_energy=float(oracle_energy),
        gap=float(gap),
        rel_tol=rel_tol,
        passed=bool(closed <= oracle_energy * (1.0 + rel_tol)),
        candidate_label=solution.candidate_label,
    )
