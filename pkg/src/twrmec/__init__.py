"""Energy-optimal joint communication/computation scheduling for a two-user,
two-way-relay MEC system under a hard deadline.

Closed-form low-complexity solver (Lambert-W KKT durations, two-case task
partition, one-dimensional relay-power search), fixed-partition baselines,
an independent brute-force oracle, and a Monte-Carlo fading harness.
"""

from .inner import InnerSolution, split_budget, tau_of_theta, theta_sensitivity
from .lambertw import lambert_w0
from .model import (ChannelRealization, EnergyBreakdown, FeasibilityReport,
                    InfeasibleError, Schedule, ScheduleInconsistencyError,
                    SystemParams, broadcast_quantities, check_feasible,
                    compute_times_and_energies, evaluate_schedule, offload_energy,
                    offload_rate, power_for_duration)
from .montecarlo import (SweepConfig, SweepRecord, SweepResult, channels_for_trial,
                         run_sweep, run_validation, sample_channels, solve_single,
                         write_sweep_csv)
from .oracle import OracleConfig, ValidationReport, brute_force, validate
from .partition import (CandidateResult, CaseCoefficients, case_a_interior,
                        case_b_interior, case_coefficients, compute_phi,
                        compute_varphi, evaluate_candidate, solve_given_pr,
                        xi_gradient_case_a, xi_gradient_case_b)
from .search import (SCHEMES, OptimalSolution, SearchConfig, solve, solve_baseline,
                     solve_scheme)

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization", "EnergyBreakdown", "FeasibilityReport", "InfeasibleError",
    "Schedule", "ScheduleInconsistencyError", "SystemParams", "broadcast_quantities",
    "check_feasible", "compute_times_and_energies", "evaluate_schedule",
    "offload_energy", "offload_rate", "power_for_duration",
    "InnerSolution", "split_budget", "tau_of_theta", "theta_sensitivity",
    "lambert_w0",
    "CandidateResult", "CaseCoefficients", "case_a_interior", "case_b_interior",
    "case_coefficients", "compute_phi", "compute_varphi", "evaluate_candidate",
    "solve_given_pr", "xi_gradient_case_a", "xi_gradient_case_b",
    "SCHEMES", "OptimalSolution", "SearchConfig", "solve", "solve_baseline",
    "solve_scheme",
    "OracleConfig", "ValidationReport", "brute_force", "validate",
    "SweepConfig", "SweepRecord", "SweepResult", "channels_for_trial", "run_sweep",
    "run_validation", "sample_channels", "solve_single", "write_sweep_csv",
    "__version__",
]
