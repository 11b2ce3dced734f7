import dataclasses
import math

import numpy as np
import pytest

from twrmec import (ChannelRealization, SystemParams, broadcast_quantities,
                    case_a_interior, case_b_interior, case_coefficients,
                    compute_phi, compute_times_and_energies, compute_varphi,
                    evaluate_candidate, offload_energy, solve_given_pr, split_budget,
                    xi_gradient_case_a, xi_gradient_case_b)
from twrmec import _kernels

from conftest import random_channel

RB_AT_PR01 = 6658211.482751795  # broadcast rate at Pr = 0.1 W, gamma_b = 1000


def test_compute_phi_reference_point(params):
    phi = compute_phi(params, RB_AT_PR01)
    assert abs(phi - 0.4889838909690147) <= 1e-12
    # infinitely fast broadcast, equal tasks, Fr = 2 Fu: phi -> 1/2
    assert abs(compute_phi(params, 1e30) - 0.5) <= 1e-9
    # infinitely fast relay CPU: boundary pushed to alpha1 = 1
    fast_relay = dataclasses.replace(params, cpu_relay_Fr=1e30)
    assert compute_phi(fast_relay, RB_AT_PR01) < 1e-10


def test_compute_varphi_reference_point(params):
    varphi = compute_varphi(params, 0.1, RB_AT_PR01)
    assert abs(varphi - 1.9490475838815596e-08) <= 1e-20
    assert varphi > 0.0
    # identical hardware and a free relay: no energy reason to prefer either side
    same = dataclasses.replace(params, eff_cap_relay_eta_r=params.eff_cap_user_eta_u,
                               cpu_relay_Fr=params.cpu_user_Fu)
    assert compute_varphi(same, 0.0, RB_AT_PR01) == 0.0
    # expensive broadcast drives it negative
    assert compute_varphi(params, 10.0, 1e6 * math.log2(1.0 + 10.0 * 1000.0)) < 0.0


def test_case_coefficients(params):
    co = case_coefficients(params, 0.1, RB_AT_PR01)
    assert co.psi_const >= 0.0
    assert co.omega == 1.0 / RB_AT_PR01 + params.cycles_per_bit_k / params.cpu_user_Fu
    assert co.omega_tilde == -2.0 * params.cycles_per_bit_k * params.task_bits_L1 / params.cpu_relay_Fr
    assert 0.0 < co.phi < 1.0


def test_budget_identities_coincide_at_phi_boundary(params, mean_chan):
    # at alpha1 = 1 - phi both case budgets give the same offload time
    for pr in (0.01, 0.1, 1.0):
        _, _, rb = broadcast_quantities(params, mean_chan, pr, 0.5)
        co = case_coefficients(params, pr, rb)
        a = 1.0 - co.phi
        L1, L2 = params.task_bits_L1, params.task_bits_L2
        k, T = params.cycles_per_bit_k, params.deadline_T
        budget_user_limited = T - co.omega * (1.0 - a) * L1
        budget_relay_limited = T - k * (2.0 * a * L1 - L1 + L2) / params.cpu_relay_Fr
        assert abs(budget_user_limited - budget_relay_limited) <= 1e-12 * T


def _tau_hat(params, chan, pr, alpha1):
    alpha2 = 1.0 - (1.0 - alpha1) * params.task_bits_L1 / params.task_bits_L2
    tau3, _, _ = broadcast_quantities(params, chan, pr, alpha1)
    t_u, t_r, _, _ = compute_times_and_energies(params, alpha1, alpha2, tau3)
    return params.deadline_T - tau3 - max(t_u, t_r)


def _xi(params, chan, pr, alpha1):
    sol = split_budget(_tau_hat(params, chan, pr, alpha1), chan, params)
    B = params.bandwidth_B
    return (offload_energy(sol.tau1, params.task_bits_L1, chan.gamma_1f, B)
            + offload_energy(sol.tau2, params.task_bits_L2, chan.gamma_2f, B)), sol


def test_xi_gradient_matches_finite_difference_case_a(params, mean_chan):
    pr = 0.1
    for alpha1 in (0.1, 0.3, 0.5):
        xi0, sol = _xi(params, mean_chan, pr, alpha1)
        grad = xi_gradient_case_a(params, mean_chan, sol, pr)
        assert grad < 0.0
        h = 1e-5
        xp, _ = _xi(params, mean_chan, pr, alpha1 + h)
        xm, _ = _xi(params, mean_chan, pr, alpha1 - h)
        fd = (xp - xm) / (2.0 * h)
        assert abs(grad - fd) <= 1e-4 * abs(fd)


def test_xi_gradient_matches_finite_difference_case_b(params):
    # weak backward links + high relay power put the optimum in the
    # relay-limited case; the budget there follows the relay-load identity
    chan = ChannelRealization(1500.0, 900.0, 30.0, 40.0)
    pr = 8.0
    _, _, rb = broadcast_quantities(params, chan, pr, 0.5)
    co = case_coefficients(params, pr, rb)
    assert co.varphi < 0.0
    L1, L2 = params.task_bits_L1, params.task_bits_L2
    k, T = params.cycles_per_bit_k, params.deadline_T

    def xi_b(alpha1):
        tau_hat = T - k * (2.0 * alpha1 * L1 - L1 + L2) / params.cpu_relay_Fr
        sol = split_budget(tau_hat, chan, params)
        B = params.bandwidth_B
        return (offload_energy(sol.tau1, L1, chan.gamma_1f, B)
                + offload_energy(sol.tau2, L2, chan.gamma_2f, B)), sol

    for alpha1 in (0.7, 0.85, 0.95):
        _, sol = xi_b(alpha1)
        grad = xi_gradient_case_b(params, chan, sol, pr)
        assert grad > 0.0  # offload budget shrinks as the relay takes more bits
        h = 1e-5
        fd = (xi_b(alpha1 + h)[0] - xi_b(alpha1 - h)[0]) / (2.0 * h)
        assert abs(grad - fd) <= 1e-4 * abs(fd)


def test_xi_second_difference_positive(params, mean_chan):
    h = 1e-3
    for alpha1 in (0.2, 0.4):
        d2 = (_xi(params, mean_chan, 0.1, alpha1 - h)[0]
              - 2.0 * _xi(params, mean_chan, 0.1, alpha1)[0]
              + _xi(params, mean_chan, 0.1, alpha1 + h)[0])
        assert d2 > 0.0


def test_case_a_interior_clipped_and_dual_identity(params, mean_chan):
    pr = 0.1
    _, _, rb = broadcast_quantities(params, mean_chan, pr, 0.5)
    co = case_coefficients(params, pr, rb)
    assert co.varphi > 0.0
    alpha = case_a_interior(params, mean_chan, pr)
    assert alpha is not None
    assert 0.0 <= alpha <= 1.0 - co.phi
    # the fixed-point dual equals 2*varphi/omega (stationarity + KKT identity)
    c1 = params.task_bits_L1 * math.log(2.0) / params.bandwidth_B
    c2 = params.task_bits_L2 * math.log(2.0) / params.bandwidth_B
    theta, ok = _kernels._fp_solve(1e-3, mean_chan.gamma_1f, mean_chan.gamma_2f,
                                   c1, c2, params.task_bits_L1,
                                   co.omega * params.task_bits_L1, co.varphi)
    assert ok
    assert abs(theta - 2.0 * co.varphi / co.omega) <= 1e-9 * theta
    with pytest.raises(ValueError):
        case_a_interior(params, mean_chan, 10.0)  # varphi < 0 there


def test_case_b_interior_clipped_and_dual_identity(params):
    chan = ChannelRealization(1500.0, 900.0, 30.0, 40.0)
    pr = 8.0
    _, _, rb = broadcast_quantities(params, chan, pr, 0.5)
    co = case_coefficients(params, pr, rb)
    assert co.varphi < 0.0
    alpha = case_b_interior(params, chan, pr)
    assert alpha is not None
    assert 1.0 - co.phi <= alpha <= 1.0
    c1 = params.task_bits_L1 * math.log(2.0) / params.bandwidth_B
    c2 = params.task_bits_L2 * math.log(2.0) / params.bandwidth_B
    theta, ok = _kernels._fp_solve(1e-3, chan.gamma_1f, chan.gamma_2f, c1, c2,
                                   params.task_bits_L1, co.omega_tilde, co.varphi)
    assert ok
    expected = -co.varphi * params.cpu_relay_Fr / params.cycles_per_bit_k
    assert abs(theta - expected) <= 1e-9 * theta
    with pytest.raises(ValueError):
        case_b_interior(params, chan, 1e-3)  # varphi > 0 there


def test_solve_given_pr_full_budget_and_dominance(params, mean_chan):
    for pr in (0.01, 0.1, 1.0):
        best = solve_given_pr(params, mean_chan, pr)
        s = best.schedule
        assert abs(s.tau1 + s.tau2 + s.tau3 + s.tau4 - params.deadline_T) \
            <= 1e-9 * params.deadline_T
        _, _, rb = broadcast_quantities(params, mean_chan, pr, 0.5)
        co = case_coefficients(params, pr, rb)
        for alpha, label in ((0.0, "alpha_zero"), (1.0, "alpha_one"),
                             (1.0 - co.phi, "alpha_phi_boundary")):
            forced = evaluate_candidate(params, mean_chan, pr, alpha, label)
            if forced.feasible:
                assert best.energy.total <= forced.energy.total * (1.0 + 1e-12)


def test_solve_given_pr_case_consistency(params):
    rng = np.random.default_rng(31)
    for _ in range(25):
        chan = random_channel(rng)
        pr = 10.0 ** rng.uniform(-3, 0.5)
        try:
            best = solve_given_pr(params, chan, pr)
        except Exception:
            continue
        s = best.schedule
        t_u, t_r, _, _ = compute_times_and_energies(params, s.alpha1, s.alpha2, s.tau3)
        _, _, rb = broadcast_quantities(params, chan, pr, 0.5)
        boundary = 1.0 - compute_phi(params, rb)
        if s.alpha1 < boundary - 1e-12:
            assert t_u >= t_r - 1e-9
        elif s.alpha1 > boundary + 1e-12:
            assert t_r >= t_u - 1e-9


def test_alpha_one_candidate_needs_slack_beyond_relay_time():
    # the all-relay candidate needs T > k(L1+L2)/Fr = 0.6 s regardless of power
    params = SystemParams(deadline_T=0.5)
    chan = ChannelRealization(1000.0, 1000.0, 1000.0, 1000.0)
    for pr in np.exp(np.linspace(math.log(1e-4), math.log(10.0), 25)):
        cand = evaluate_candidate(params, chan, float(pr), 1.0, "alpha_one")
        assert not cand.feasible


def test_solve_given_pr_beats_2d_grid_oracle(params):
    # restricted oracle: fixed Pr, grid over (alpha1, tau1), model arithmetic only
    rng = np.random.default_rng(37)
    L1, L2 = params.task_bits_L1, params.task_bits_L2
    B, k = params.bandwidth_B, params.cycles_per_bit_k
    c1 = L1 * math.log(2.0) / B
    c2 = L2 * math.log(2.0) / B
    checked = 0
    for _ in range(50):
        chan = random_channel(rng)
        pr = 10.0 ** rng.uniform(-3, 0.5)
        try:
            best = solve_given_pr(params, chan, pr)
        except Exception:
            continue
        checked += 1
        rb = B * math.log2(1.0 + pr * chan.gamma_b)
        alpha = np.linspace(0.0, 1.0, 160)
        alpha2 = 1.0 - (1.0 - alpha) * L1 / L2
        tau3 = (1.0 - alpha) * L1 / rb
        t_u = k * (1.0 - alpha) * L1 / params.cpu_user_Fu
        t_r = np.maximum(k * (alpha * L1 + alpha2 * L2) / params.cpu_relay_Fr - tau3, 0.0)
        tau_hat = params.deadline_T - tau3 - np.maximum(t_u, t_r)
        cu = k * (1.0 - alpha) * L1 * params.eff_cap_user_eta_u * params.cpu_user_Fu ** 2
        cr = (k * (alpha * L1 + alpha2 * L2)
              * params.eff_cap_relay_eta_r * params.cpu_relay_Fr ** 2)
        frac = np.arange(1, 161) / 161.0
        ok = tau_hat > 0.0
        with np.errstate(over="ignore", invalid="ignore"):
            tau1 = tau_hat[ok, None] * frac[None, :]
            tau2 = tau_hat[ok, None] - tau1
            e12 = (tau1 * np.expm1(c1 / tau1) / chan.gamma_1f
                   + tau2 * np.expm1(c2 / tau2) / chan.gamma_2f)
            total = (tau3 * pr + 2.0 * cu + cr)[ok, None] + e12
        oracle = float(np.min(total))
        assert best.energy.total <= oracle * (1.0 + 0.01)
    assert checked >= 40
