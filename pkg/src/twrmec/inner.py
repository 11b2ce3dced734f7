"""Inner convex subproblem: split a total offload budget between the two
offload slots.

For a fixed budget tau_hat = tau1 + tau2 the transmit-energy sum E1 + E2 is
convex in the split, and the KKT conditions give each duration in closed form
through the Lambert W function of the dual variable theta. The budget is then
met by bisection on theta, since both durations are strictly decreasing in it.
"""

import math
from dataclasses import dataclass

from . import _kernels
from .model import ChannelRealization, InfeasibleError, SystemParams

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class InnerSolution:
    """Optimal split of an offload budget plus dual information.

    vartheta1/vartheta2 are the sensitivities d(tau_i)/d(theta) (< 0), needed
    by the outer partition derivative.
    """

    tau1: float
    tau2: float
    theta: float
    vartheta1: float
    vartheta2: float


def tau_of_theta(theta: float, gamma: float, bits: float, bandwidth: float) -> float:
    """KKT-optimal slot duration L*ln2 / (B*(W((theta*gamma - 1)/e) + 1))."""
    if theta <= 0.0:
        raise ValueError("tau_of_theta: theta must be > 0")
    if gamma <= 0.0 or bits <= 0.0 or bandwidth <= 0.0:
        raise ValueError("tau_of_theta: gamma, bits, bandwidth must be > 0")
    return _kernels._tau_slot(theta, gamma, bits * _LN2 / bandwidth)


def theta_sensitivity(theta: float, gamma: float, bits: float, bandwidth: float) -> float:
    """d(tau)/d(theta) of the KKT duration; always negative.

    Derived by differentiating the closed form:
        -L*gamma*ln2 / (B * (W+1)^3 * e^(W+1)).
    """
    if theta <= 0.0:
        raise ValueError("theta_sensitivity: theta must be > 0")
    return _kernels._dtau_dtheta(theta, gamma, bits * _LN2 / bandwidth)


def split_budget(tau_hat: float, chan: ChannelRealization,
                 params: SystemParams) -> InnerSolution:
    """Minimize E1 + E2 subject to tau1 + tau2 = tau_hat.

    Bisection on theta runs until the budget is met to 1e-12 relative. Raises
    InfeasibleError for a nonpositive budget (task lengths of at least one bit
    make tau_hat = 0 unservable).
    """
    if tau_hat <= 0.0:
        raise InfeasibleError(f"split_budget: nonpositive offload budget {tau_hat!r}")
    c1 = params.task_bits_L1 * _LN2 / params.bandwidth_B
    c2 = params.task_bits_L2 * _LN2 / params.bandwidth_B
    tau1, tau2, theta, ok = _kernels._inner_split(tau_hat, chan.gamma_1f, chan.gamma_2f,
                                                  c1, c2)
    if not ok:
        raise RuntimeError("split_budget: bisection bracket could not be established")
    return InnerSolution(
        tau1=tau1,
        tau2=tau2,
        theta=theta,
        vartheta1=_kernels._dtau_dtheta(theta, chan.gamma_1f, c1),
        vartheta2=_kernels._dtau_dtheta(theta, chan.gamma_2f, c2),
    )
