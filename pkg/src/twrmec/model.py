"""Scenario data types and the physical/energy model.

Two users exchange computation results through a two-way relay that hosts an
MEC server. A block of duration T is split into four slots: user-1 offload,
user-2 offload, network-coded relay broadcast, and computing. Each user's
task is partitioned between the relay and the opposite user; the same
broadcast codeword serves both directions, which couples the two partition
factors as (1-alpha1)*L1 = (1-alpha2)*L2.

Everything here is straight evaluation of the model: Shannon-rate offloading,
perspective-function transmit energies, CPU time/energy, feasibility. The
closed-form solvers live elsewhere and only this module is shared with the
brute-force oracle.
"""

import math
from dataclasses import dataclass

_LN2 = math.log(2.0)


class InfeasibleError(RuntimeError):
    """No feasible schedule exists for the requested instance."""


class ScheduleInconsistencyError(RuntimeError):
    """Stored powers/durations of a schedule disagree beyond tolerance."""


@dataclass(frozen=True)
class SystemParams:
    """Static scenario constants. Defaults are the simulation operating point."""

    bandwidth_B: float = 1e6            # Hz
    noise_power_sigma2: float = 1e-9    # W
    task_bits_L1: float = 1.8e5         # bits
    task_bits_L2: float = 1.8e5         # bits
    cycles_per_bit_k: float = 1e3       # CPU cycles per bit
    eff_cap_user_eta_u: float = 1e-28   # J/(cycle*Hz^2)
    eff_cap_relay_eta_r: float = 1e-28  # J/(cycle*Hz^2)
    cpu_user_Fu: float = 0.3e9          # Hz
    cpu_relay_Fr: float = 0.6e9         # Hz
    deadline_T: float = 1.0             # s

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"SystemParams.{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.task_bits_L1 < 1.0 or self.task_bits_L2 < 1.0:
            raise ValueError("task lengths must be at least 1 bit")


@dataclass(frozen=True)
class ChannelRealization:
    """Channel power gains normalized to the noise power (units 1/W)."""

    gamma_1f: float  # user 1 -> relay
    gamma_2f: float  # user 2 -> relay
    gamma_1b: float  # relay -> user 1
    gamma_2b: float  # relay -> user 2

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"ChannelRealization.{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, float(value))

    @property
    def gamma_b(self) -> float:
        """Bottleneck backward gain; the broadcast rate is set by the weaker link."""
        return min(self.gamma_1b, self.gamma_2b)


@dataclass(frozen=True)
class Schedule:
    """A full decision vector: partition factors, slot durations, transmit powers.

    Durations are ground truth; the stored powers must be reproducible from
    them (see evaluate_schedule).
    """

    alpha1: float
    alpha2: float
    tau1: float
    tau2: float
    tau3: float
    tau4: float
    power_user1_P1: float
    power_user2_P2: float
    power_relay_Pr: float


@dataclass(frozen=True)
class EnergyBreakdown:
    """The five energy terms and their total: e1 + e2 + e3 + 2*cu + cr."""

    e1_offload: float
    e2_offload: float
    e3_broadcast: float
    cu_local: float   # per user; counted twice in the total
    cr_relay: float
    total: float


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple = ()


def offload_rate(power: float, gamma: float, bandwidth: float) -> float:
    """Shannon rate B*log2(1 + power*gamma) in bits/s."""
    if power < 0.0 or gamma <= 0.0 or bandwidth <= 0.0:
        raise ValueError("offload_rate: power must be >= 0, gamma and bandwidth > 0")
    return bandwidth * math.log2(1.0 + power * gamma)


def power_for_duration(tau: float, bits: float, gamma: float, bandwidth: float) -> float:
    """Transmit power needed to move `bits` in time `tau`: (2^(bits/(B*tau)) - 1)/gamma.

    Inverse of offload_rate composed with tau = bits/rate. Returns inf when the
    required power overflows the floating-point range.
    """
    if tau <= 0.0:
        raise ValueError("power_for_duration: tau must be > 0")
    if bits < 0.0 or gamma <= 0.0 or bandwidth <= 0.0:
        raise ValueError("power_for_duration: bits >= 0, gamma and bandwidth > 0 required")
    try:
        return math.expm1(_LN2 * bits / (bandwidth * tau)) / gamma
    except OverflowError:
        return math.inf


def offload_energy(tau: float, bits: float, gamma: float, bandwidth: float) -> float:
    """Transmit energy tau*(2^(bits/(B*tau)) - 1)/gamma; convex in tau."""
    return tau * power_for_duration(tau, bits, gamma, bandwidth)


def broadcast_quantities(params: SystemParams, chan: ChannelRealization,
                         power_relay: float, alpha1: float):
    """Broadcast-slot duration, energy and rate for a given relay power.

    Returns (tau3, e3, r_b). With zero relay power and alpha1 < 1 the slot is
    infinitely long; that is reported as (inf, inf, 0.0) rather than raised,
    since it just marks an infeasible operating point.
    """
    if power_relay < 0.0:
        raise ValueError("broadcast_quantities: power_relay must be >= 0")
    if not 0.0 <= alpha1 <= 1.0:
        raise ValueError("broadcast_quantities: alpha1 must be in [0, 1]")
    r1 = offload_rate(power_relay, chan.gamma_1b, params.bandwidth_B)
    r2 = offload_rate(power_relay, chan.gamma_2b, params.bandwidth_B)
    r_b = min(r1, r2)
    bits = (1.0 - alpha1) * params.task_bits_L1
    if bits == 0.0:
        return 0.0, 0.0, r_b
    if r_b == 0.0:
        return math.inf, math.inf, 0.0
    tau3 = bits / r_b
    return tau3, tau3 * power_relay, r_b


def compute_times_and_energies(params: SystemParams, alpha1: float, alpha2: float,
                               tau3: float):
    """CPU times and energies for the computing phase.

    Returns (t_u, t_r, cu, cr). The relay computes during both the broadcast
    and computing slots, so its residual time t_r is clamped at zero when it
    finishes within tau3.
    """
    if tau3 < 0.0:
        raise ValueError("compute_times_and_energies: tau3 must be >= 0")
    k = params.cycles_per_bit_k
    user_bits = (1.0 - alpha1) * params.task_bits_L1
    relay_bits = alpha1 * params.task_bits_L1 + alpha2 * params.task_bits_L2
    t_u = k * user_bits / params.cpu_user_Fu
    t_r = max(0.0, k * relay_bits / params.cpu_relay_Fr - tau3)
    cu = k * user_bits * params.eff_cap_user_eta_u * params.cpu_user_Fu ** 2
    cr = k * relay_bits * params.eff_cap_relay_eta_r * params.cpu_relay_Fr ** 2
    return t_u, t_r, cu, cr


def evaluate_schedule(params: SystemParams, chan: ChannelRealization,
                      schedule: Schedule) -> EnergyBreakdown:
    """Recompute the five energy terms of a schedule from first principles.

    Durations are treated as ground truth: the user powers are rederived from
    (tau1, tau2) and the broadcast duration from (alpha1, Pr), and each must
    match the stored values to 1e-9 relative or ScheduleInconsistencyError is
    raised.
    """
    s = schedule
    p1 = power_for_duration(s.tau1, params.task_bits_L1, chan.gamma_1f, params.bandwidth_B)
    p2 = power_for_duration(s.tau2, params.task_bits_L2, chan.gamma_2f, params.bandwidth_B)
    for stored, derived, name in ((s.power_user1_P1, p1, "P1"), (s.power_user2_P2, p2, "P2")):
        if abs(stored - derived) > 1e-9 * max(abs(stored), abs(derived), 1e-300):
            raise ScheduleInconsistencyError(
                f"stored {name}={stored!r} does not match duration-derived {derived!r}")
    tau3, e3, _ = broadcast_quantities(params, chan, s.power_relay_Pr, s.alpha1)
    if abs(tau3 - s.tau3) > 1e-9 * max(tau3, s.tau3, 1e-300):
        raise ScheduleInconsistencyError(
            f"stored tau3={s.tau3!r} does not match broadcast-derived {tau3!r}")
    _, _, cu, cr = compute_times_and_energies(params, s.alpha1, s.alpha2, s.tau3)
    e1 = s.tau1 * p1
    e2 = s.tau2 * p2
    total = e1 + e2 + e3 + 2.0 * cu + cr  # fixed accumulation order, reproducible
    return EnergyBreakdown(e1, e2, e3, cu, cr, total)


def check_feasible(params: SystemParams, chan: ChannelRealization, schedule: Schedule,
                   tol_abs: float = 1e-9) -> FeasibilityReport:
    """Verify partition coupling, box bounds, nonnegativity and the deadline.

    The deadline check recomputes tau4 = max(t_u, t_r) from the partition and
    tau3, so an understated stored tau4 cannot fake feasibility.
    """
    s = schedule
    L1, L2 = params.task_bits_L1, params.task_bits_L2
    violations = []
    if abs((1.0 - s.alpha1) * L1 - (1.0 - s.alpha2) * L2) > 1e-12 * L1:
        violations.append("coupling")
    eps = 1e-12
    if not (-eps <= s.alpha1 <= 1.0 + eps) or not (-eps <= s.alpha2 <= 1.0 + eps):
        violations.append("alpha_range")
    if min(s.tau1, s.tau2, s.tau3, s.tau4) < -tol_abs:
        violations.append("negative_duration")
    if min(s.power_user1_P1, s.power_user2_P2, s.power_relay_Pr) < 0.0:
        violations.append("negative_power")
    a1 = min(max(s.alpha1, 0.0), 1.0)
    a2 = min(max(s.alpha2, 0.0), 1.0)
    t_u, t_r, _, _ = compute_times_and_energies(params, a1, a2, max(s.tau3, 0.0))
    tau4 = max(t_u, t_r)
    if abs(s.tau4 - tau4) > tol_abs:
        violations.append("tau4")
    if s.tau1 + s.tau2 + s.tau3 + tau4 > params.deadline_T + tol_abs:
        violations.append("deadline")
    return FeasibilityReport(feasible=not violations, violations=tuple(violations))
