"""Optimal task partition for a fixed relay transmit power.

With the relay power given, the total energy splits into a constant, the
offload-energy term xi(alpha1) and a term linear in the relay's compute load.
Which node finishes computing last divides [alpha1_min, 1] in two at the
boundary 1 - phi:

  user-limited case  (alpha1 <= 1 - phi): offload budget T - omega*(1-alpha1)*L1
  relay-limited case (alpha1 >= 1 - phi): offload budget T - k*(2*alpha1*L1 - L1 + L2)/Fr

In each case xi is convex in alpha1, so the optimum is either a box bound,
the case boundary, or the interior stationary point, which reduces to a
one-dimensional fixed point in the inner dual variable solved by bisection.
Comparing those five candidates yields the optimum for this relay power.
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .inner import InnerSolution, split_budget
from .model import (ChannelRealization, EnergyBreakdown, InfeasibleError, Schedule,
                    SystemParams, broadcast_quantities, check_feasible,
                    evaluate_schedule)

CANDIDATE_LABELS = ("alpha_zero", "alpha_one", "alpha_phi_boundary",
                    "case_a_interior", "case_b_interior")


@dataclass(frozen=True)
class CaseCoefficients:
    """Scalar coefficients of the fixed-relay-power energy decomposition."""

    phi: float          # case boundary is alpha1 = 1 - phi
    varphi: float       # J/bit priced against the relay's compute load
    omega: float        # s/bit: broadcast + user-compute time per user-side bit
    omega_tilde: float  # s: d(tau1+tau2)/d(alpha1) in the relay-limited case
    psi_const: float    # J: alpha-independent part of the energy


@dataclass(frozen=True)
class CandidateResult:
    label: str
    alpha1: float
    schedule: Optional[Schedule]
    energy: Optional[EnergyBreakdown]
    feasible: bool


def compute_phi(params: SystemParams, r_b: float) -> float:
    """Fraction phi such that user and relay computing finish together at
    alpha1 = 1 - phi."""
    if r_b <= 0.0:
        raise ValueError("compute_phi: r_b must be > 0")
    k = params.cycles_per_bit_k
    num = k * (params.task_bits_L1 + params.task_bits_L2) / params.cpu_relay_Fr
    den = params.task_bits_L1 * (k / params.cpu_user_Fu + 1.0 / r_b
                                 + 2.0 * k / params.cpu_relay_Fr)
    return num / den


def compute_varphi(params: SystemParams, power_relay: float, r_b: float) -> float:
    """Marginal energy of moving one bit of compute load onto the relay:
    k*eta_r*Fr^2 - k*eta_u*Fu^2 - Pr/(2*r_b)."""
    if r_b <= 0.0:
        raise ValueError("compute_varphi: r_b must be > 0")
    k = params.cycles_per_bit_k
    return (k * params.eff_cap_relay_eta_r * params.cpu_relay_Fr ** 2
            - k * params.eff_cap_user_eta_u * params.cpu_user_Fu ** 2
            - 0.5 * power_relay / r_b)


def case_coefficients(params: SystemParams, power_relay: float,
                      r_b: float) -> CaseCoefficients:
    k = params.cycles_per_bit_k
    omega = 1.0 / r_b + k / params.cpu_user_Fu
    psi = (params.task_bits_L1 + params.task_bits_L2) * (
        k * params.eff_cap_user_eta_u * params.cpu_user_Fu ** 2
        + 0.5 * power_relay / r_b)
    return CaseCoefficients(
        phi=compute_phi(params, r_b),
        varphi=compute_varphi(params, power_relay, r_b),
        omega=omega,
        omega_tilde=-2.0 * k * params.task_bits_L1 / params.cpu_relay_Fr,
        psi_const=psi,
    )


def _r_b(params: SystemParams, chan: ChannelRealization, power_relay: float) -> float:
    return params.bandwidth_B * math.log2(1.0 + power_relay * chan.gamma_b)


def _chi(inner: InnerSolution, scale: float):
    denom = inner.vartheta1 + inner.vartheta2
    return scale * inner.vartheta1 / denom, scale * inner.vartheta2 / denom


def _xi_gradient(params, chan, inner, scale):
    c1 = params.task_bits_L1 * _kernels.LN2 / params.bandwidth_B
    c2 = params.task_bits_L2 * _kernels.LN2 / params.bandwidth_B
    chi1, chi2 = _chi(inner, scale)
    return -(chi1 * _kernels._neg_denergy_dtau(inner.tau1, chan.gamma_1f, c1)
             + chi2 * _kernels._neg_denergy_dtau(inner.tau2, chan.gamma_2f, c2))


def xi_gradient_case_a(params: SystemParams, chan: ChannelRealization,
                       inner: InnerSolution, power_relay: float) -> float:
    """d(E1+E2)/d(alpha1) in the user-limited case; negative there."""
    rb = _r_b(params, chan, power_relay)
    omega = 1.0 / rb + params.cycles_per_bit_k / params.cpu_user_Fu
    return _xi_gradient(params, chan, inner, omega * params.task_bits_L1)


def xi_gradient_case_b(params: SystemParams, chan: ChannelRealization,
                       inner: InnerSolution, power_relay: float) -> float:
    """d(E1+E2)/d(alpha1) in the relay-limited case; positive there."""
    scale = -2.0 * params.cycles_per_bit_k * params.task_bits_L1 / params.cpu_relay_Fr
    return _xi_gradient(params, chan, inner, scale)


def _alpha_min(params: SystemParams) -> float:
    """Lower box bound on alpha1: alpha2 >= 0 forces alpha1 >= 1 - L2/L1."""
    return max(0.0, 1.0 - params.task_bits_L2 / params.task_bits_L1)


def _boundary_theta(params, chan, power_relay, alpha1):
    """Inner dual value of a boundary candidate, used to seed the fixed point."""
    r = _kernels._eval_candidate(
        alpha1, power_relay, _r_b(params, chan, power_relay), params.deadline_T,
        chan.gamma_1f, chan.gamma_2f, params.task_bits_L1, params.task_bits_L2,
        params.bandwidth_B, params.cycles_per_bit_k, params.cpu_user_Fu,
        params.cpu_relay_Fr, params.eff_cap_user_eta_u, params.eff_cap_relay_eta_r)
    return r[9] if r[0] == 1.0 else None


def case_a_interior(params: SystemParams, chan: ChannelRealization,
                    power_relay: float) -> Optional[float]:
    """Interior stationary partition of the user-limited case, clipped to
    [alpha1_min, 1 - phi]. None when the region is empty/infeasible or no
    fixed-point bracket exists. Requires varphi > 0."""
    rb = _r_b(params, chan, power_relay)
    coeff = case_coefficients(params, power_relay, rb)
    if coeff.varphi <= 0.0:
        raise ValueError("case_a_interior requires varphi > 0")
    a_lo = _alpha_min(params)
    a_phi = 1.0 - coeff.phi
    if a_phi <= a_lo:
        return None
    seed = _boundary_theta(params, chan, power_relay, a_phi)
    if seed is None:
        return None
    c1 = params.task_bits_L1 * _kernels.LN2 / params.bandwidth_B
    c2 = params.task_bits_L2 * _kernels.LN2 / params.bandwidth_B
    theta, ok = _kernels._fp_solve(seed, chan.gamma_1f, chan.gamma_2f, c1, c2,
                                   params.task_bits_L1,
                                   coeff.omega * params.task_bits_L1, coeff.varphi)
    if not ok:
        return None
    tau1 = _kernels._tau_slot(theta, chan.gamma_1f, c1)
    tau2 = _kernels._tau_slot(theta, chan.gamma_2f, c2)
    alpha = 1.0 - (params.deadline_T - tau1 - tau2) / (coeff.omega * params.task_bits_L1)
    return min(max(alpha, a_lo), a_phi)


def case_b_interior(params: SystemParams, chan: ChannelRealization,
                    power_relay: float) -> Optional[float]:
    """Interior stationary partition of the relay-limited case, clipped to
    [max(1 - phi, alpha1_min), 1]. Requires varphi < 0."""
    rb = _r_b(params, chan, power_relay)
    coeff = case_coefficients(params, power_relay, rb)
    if coeff.varphi >= 0.0:
        raise ValueError("case_b_interior requires varphi < 0")
    a_lo = max(1.0 - coeff.phi, _alpha_min(params))
    if a_lo >= 1.0:
        return None
    seed = _boundary_theta(params, chan, power_relay, a_lo)
    if seed is None:
        seed = _boundary_theta(params, chan, power_relay, 1.0)
    if seed is None:
        return None
    c1 = params.task_bits_L1 * _kernels.LN2 / params.bandwidth_B
    c2 = params.task_bits_L2 * _kernels.LN2 / params.bandwidth_B
    theta, ok = _kernels._fp_solve(seed, chan.gamma_1f, chan.gamma_2f, c1, c2,
                                   params.task_bits_L1, coeff.omega_tilde, coeff.varphi)
    if not ok:
        return None
    tau1 = _kernels._tau_slot(theta, chan.gamma_1f, c1)
    tau2 = _kernels._tau_slot(theta, chan.gamma_2f, c2)
    k = params.cycles_per_bit_k
    alpha = -(params.deadline_T - tau1 - tau2
              + k * (params.task_bits_L1 - params.task_bits_L2) / params.cpu_relay_Fr
              ) / coeff.omega_tilde
    return min(max(alpha, a_lo), 1.0)


def evaluate_candidate(params: SystemParams, chan: ChannelRealization,
                       power_relay: float, alpha1: float, label: str) -> CandidateResult:
    """Build, price and feasibility-check the schedule implied by alpha1."""
    _, _, r_b = broadcast_quantities(params, chan, power_relay, min(max(alpha1, 0.0), 1.0))
    r = _kernels._eval_candidate(
        alpha1, power_relay, r_b, params.deadline_T,
        chan.gamma_1f, chan.gamma_2f, params.task_bits_L1, params.task_bits_L2,
        params.bandwidth_B, params.cycles_per_bit_k, params.cpu_user_Fu,
        params.cpu_relay_Fr, params.eff_cap_user_eta_u, params.eff_cap_relay_eta_r)
    if r[0] != 1.0:
        return CandidateResult(label, alpha1, None, None, False)
    _, _, tau1, tau2, tau3, tau4, p1, p2, alpha2, _ = r
    schedule = Schedule(alpha1=min(max(alpha1, 0.0), 1.0), alpha2=alpha2,
                        tau1=tau1, tau2=tau2, tau3=tau3, tau4=tau4,
                        power_user1_P1=p1, power_user2_P2=p2,
                        power_relay_Pr=power_relay)
    breakdown = evaluate_schedule(params, chan, schedule)
    feasible = check_feasible(params, chan, schedule,
                              tol_abs=1e-9 * max(params.deadline_T, 1.0)).feasible
    return CandidateResult(label, schedule.alpha1, schedule, breakdown, feasible)


def solve_given_pr(params: SystemParams, chan: ChannelRealization,
                   power_relay: float) -> CandidateResult:
    """Best feasible candidate for this relay power.

    Raises InfeasibleError when the deadline is below the minimum achievable
    delay at this power.
    """
    if power_relay < 0.0:
        raise ValueError("solve_given_pr: power_relay must be >= 0")
    out = _kernels._solve_pr(
        power_relay, params.deadline_T, chan.gamma_1f, chan.gamma_2f,
        chan.gamma_1b, chan.gamma_2b, params.task_bits_L1, params.task_bits_L2,
        params.bandwidth_B, params.cycles_per_bit_k, params.cpu_user_Fu,
        params.cpu_relay_Fr, params.eff_cap_user_eta_u, params.eff_cap_relay_eta_r)
    if out[0] != 1.0:
        raise InfeasibleError(
            f"no feasible partition at Pr={power_relay!r} for T={params.deadline_T!r}")
    label = CANDIDATE_LABELS[int(out[3])]
    result = evaluate_candidate(params, chan, power_relay, out[2], label)
    if not result.feasible:  # defensive: kernel and model disagree
        raise InfeasibleError(
            f"candidate at Pr={power_relay!r} failed model feasibility re-check")
    return result
