"""Compiled scalar kernels for the closed-form solver hot path.

Everything here works on plain floats and returns status flags instead of
raising, so the whole per-relay-power candidate evaluation stays inside
nopython code; the public modules wrap these with typed results and proper
exceptions. The brute-force oracle intentionally does NOT use this module.

Kernel conventions:
  c_i    = L_i * ln2 / B, the duration scale of user i's offload slot
  wp1(t) = 1 + W((t - 1)/e) evaluated from t = theta*gamma directly, which
           avoids the catastrophic cancellation of forming (t - 1)/e near the
           branch point (small t would otherwise cap the budget bisection
           around 1e-11 relative, above the required 1e-12)
"""

import math

from numba import njit

from .lambertw import _w0

LN2 = math.log(2.0)
_NEG_INV_E = -math.exp(-1.0)

# theta*gamma below this uses the series inversion of (v-1)e^v = t - 1.
_WP1_SERIES_CUT = 5e-3


@njit(cache=True, error_model="numpy")
def _wp1(t):
    """1 + W((t - 1)/e) for t >= 0, accurate to ~4e-14 relative everywhere."""
    if t <= 0.0:
        return 0.0
    if t >= _WP1_SERIES_CUT:
        return _w0((t - 1.0) / math.e) + 1.0
    # Solve h(v) = (v-1)e^v + 1 - t = 0 via the exact Taylor form of
    # (v-1)e^v + 1 = sum_{n>=2} (n-1)/n! v^n, which has no cancellation.
    p = math.sqrt(2.0 * t)
    v = p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    for _ in range(3):
        h = v * v * (0.5 + v * (1.0 / 3.0 + v * (0.125 + v * (1.0 / 30.0 + v * (
            1.0 / 144.0 + v * (1.0 / 840.0 + v * (1.0 / 5760.0 + v * (
                1.0 / 45360.0 + v * (1.0 / 403200.0))))))))) - t
        hp = v * (1.0 + v * (1.0 + v * (0.5 + v * (1.0 / 6.0 + v * (
            1.0 / 24.0 + v * (1.0 / 120.0 + v * (1.0 / 720.0 + v * (
                1.0 / 5040.0 + v * (1.0 / 40320.0)))))))))
        v -= h / hp
    return v


@njit(cache=True, error_model="numpy")
def _tau_slot(theta, gamma, c):
    """Offload duration L*ln2 / (B*(W((theta*gamma-1)/e) + 1)) at dual value theta."""
    v = _wp1(theta * gamma)
    if v <= 0.0:
        return math.inf
    return c / v


@njit(cache=True, error_model="numpy")
def _dtau_dtheta(theta, gamma, c):
    """Derivative of the offload duration w.r.t. the dual variable (< 0)."""
    v = _wp1(theta * gamma)
    if v <= 0.0:
        return -math.inf
    return -c * gamma / (v * v * v * math.exp(v))


@njit(cache=True, error_model="numpy")
def _neg_denergy_dtau(tau, gamma, c):
    """-(d/dtau) of the offload energy: (e^x (x - 1) + 1)/gamma with x = c/tau.

    Equals the dual variable theta at the duration returned by _tau_slot.
    """
    x = c / tau
    if x > 700.0:
        return math.inf
    return (math.exp(x) * (x - 1.0) + 1.0) / gamma


@njit(cache=True, error_model="numpy")
def _offload_power(tau, gamma, c):
    """Transmit power sustaining the slot: (2^(L/(B*tau)) - 1)/gamma."""
    x = c / tau
    if x > 700.0:
        return math.inf
    return math.expm1(x) / gamma


@njit(cache=True, error_model="numpy")
def _inner_split(tau_hat, g1f, g2f, c1, c2):
    """Split a total offload budget between the two users' slots.

    Bisection on the dual variable theta until tau1 + tau2 matches tau_hat to
    1e-12 relative. Geometric midpoints: the bracket spans many decades.
    Returns (tau1, tau2, theta, ok).
    """
    if tau_hat <= 0.0:
        return 0.0, 0.0, 0.0, False
    lo = 1e-12
    hi = 1e-2
    ok_lo = False
    for _ in range(200):
        if _tau_slot(lo, g1f, c1) + _tau_slot(lo, g2f, c2) > tau_hat:
            ok_lo = True
            break
        lo *= 0.5
    ok_hi = False
    for _ in range(200):
        if _tau_slot(hi, g1f, c1) + _tau_slot(hi, g2f, c2) < tau_hat:
            ok_hi = True
            break
        hi *= 2.0
    if not (ok_lo and ok_hi):
        return 0.0, 0.0, 0.0, False
    tol = 1e-12 * tau_hat
    theta = math.sqrt(lo * hi)
    t1 = _tau_slot(theta, g1f, c1)
    t2 = _tau_slot(theta, g2f, c2)
    for _ in range(200):
        resid = t1 + t2 - tau_hat
        if abs(resid) <= tol:
            break
        if resid > 0.0:
            lo = theta
        else:
            hi = theta
        if hi - lo <= 1e-16 * hi:
            break
        theta = math.sqrt(lo * hi)
        t1 = _tau_slot(theta, g1f, c1)
        t2 = _tau_slot(theta, g2f, c2)
    return t1, t2, theta, True


@njit(cache=True, error_model="numpy")
def _fp_residual(theta, g1f, g2f, c1, c2, L1, chi_scale, varphi):
    """Residual W(gamma2*lam/(e*chi2)) - W((theta*gamma2 - 1)/e) of the interior
    stationarity fixed point; strictly decreasing in theta.

    chi_scale is d(tau1+tau2)/d(alpha1) for the active case: omega*L1 in the
    user-limited case, -2k*L1/Fr in the relay-limited case. A left-side
    Lambert domain violation is reported as -inf (theta past the root).
    """
    v1 = _wp1(theta * g1f)
    v2 = _wp1(theta * g2f)
    if v1 <= 0.0 or v2 <= 0.0:
        return math.inf
    tau1 = c1 / v1
    vt1 = -c1 * g1f / (v1 * v1 * v1 * math.exp(v1))
    vt2 = -c2 * g2f / (v2 * v2 * v2 * math.exp(v2))
    denom = vt1 + vt2
    chi1 = chi_scale * vt1 / denom
    chi2 = chi_scale * vt2 / denom
    lam = 2.0 * varphi * L1 - chi1 * _neg_denergy_dtau(tau1, g1f, c1) - chi2 / g2f
    arg_left = g2f * lam / (math.e * chi2)
    if arg_left < _NEG_INV_E:
        return -math.inf
    return _w0(arg_left) - (v2 - 1.0)


@njit(cache=True, error_model="numpy")
def _fp_solve(theta_seed, g1f, g2f, c1, c2, L1, chi_scale, varphi):
    """Bisection for the interior fixed point, bracketing outward from a seed
    dual value (the inner-allocator theta of the nearest boundary candidate).

    Returns (theta, ok).
    """
    seed = theta_seed if theta_seed > 0.0 else 1e-3
    r0 = _fp_residual(seed, g1f, g2f, c1, c2, L1, chi_scale, varphi)
    if r0 == 0.0:
        return seed, True
    lo = seed
    hi = seed
    if r0 > 0.0:
        found = False
        for _ in range(200):
            hi *= 2.0
            if _fp_residual(hi, g1f, g2f, c1, c2, L1, chi_scale, varphi) <= 0.0:
                found = True
                break
            lo = hi
        if not found:
            return 0.0, False
    else:
        found = False
        for _ in range(200):
            lo *= 0.5
            if _fp_residual(lo, g1f, g2f, c1, c2, L1, chi_scale, varphi) >= 0.0:
                found = True
                break
            hi = lo
        if not found:
            return 0.0, False
    theta = math.sqrt(lo * hi)
    for _ in range(200):
        r = _fp_residual(theta, g1f, g2f, c1, c2, L1, chi_scale, varphi)
        if abs(r) <= 1e-11:
            break
        if r > 0.0:
            lo = theta
        else:
            hi = theta
        if hi - lo <= 1e-16 * hi:
            break
        theta = math.sqrt(lo * hi)
    return theta, True


@njit(cache=True, error_model="numpy")
def _eval_candidate(alpha1, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr, eta_u, eta_r):
    """Build and price the full schedule implied by a partition factor.

    Returns (ok, energy, tau1, tau2, tau3, tau4, p1, p2, alpha2, theta); on
    infeasibility ok = 0 and energy = inf.
    """
    fail = (0.0, math.inf, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    if alpha1 < -1e-12 or alpha1 > 1.0 + 1e-12:
        return fail
    alpha1 = min(max(alpha1, 0.0), 1.0)
    alpha2 = 1.0 - (1.0 - alpha1) * L1 / L2
    if alpha2 < -1e-12 or alpha2 > 1.0 + 1e-12:
        return fail
    alpha2 = min(max(alpha2, 0.0), 1.0)

    user_bits = (1.0 - alpha1) * L1
    if user_bits == 0.0:
        tau3 = 0.0
    elif rb > 0.0:
        tau3 = user_bits / rb
    else:
        return fail
    relay_bits = alpha1 * L1 + alpha2 * L2
    t_u = k * user_bits / Fu
    t_r = k * relay_bits / Fr - tau3
    if t_r < 0.0:
        t_r = 0.0
    tau4 = max(t_u, t_r)
    tau_hat = T - tau3 - tau4
    if tau_hat <= 0.0:
        return fail

    c1 = L1 * LN2 / B
    c2 = L2 * LN2 / B
    tau1, tau2, theta, ok = _inner_split(tau_hat, g1f, g2f, c1, c2)
    if not ok:
        return fail
    p1 = _offload_power(tau1, g1f, c1)
    p2 = _offload_power(tau2, g2f, c2)
    e1 = tau1 * p1
    e2 = tau2 * p2
    e3 = tau3 * pr
    cu = k * user_bits * eta_u * Fu * Fu
    cr = k * relay_bits * eta_r * Fr * Fr
    energy = e1 + e2 + e3 + 2.0 * cu + cr
    if not math.isfinite(energy):
        return fail
    return 1.0, energy, tau1, tau2, tau3, tau4, p1, p2, alpha2, theta


# Candidate labels (indices into partition.CANDIDATE_LABELS).
LABEL_ALPHA_ZERO = 0
LABEL_ALPHA_ONE = 1
LABEL_ALPHA_PHI = 2
LABEL_CASE_A = 3
LABEL_CASE_B = 4


@njit(cache=True, error_model="numpy")
def _solve_pr(pr, T, g1f, g2f, g1b, g2b, L1, L2, B, k, Fu, Fr, eta_u, eta_r):
    """Best schedule for a fixed relay power: evaluate the five partition
    candidates (both box bounds, the case boundary, and the interior
    stationary point of whichever case is active) and keep the cheapest
    feasible one.

    Returns (ok, energy, alpha1, label, tau1, tau2, tau3, tau4, p1, p2,
    alpha2, theta).
    """
    gb = min(g1b, g2b)
    rb = B * math.log2(1.0 + pr * gb)
    alpha_lo = max(0.0, 1.0 - L2 / L1)
    kerFr2 = k * eta_r * Fr * Fr
    keuFu2 = k * eta_u * Fu * Fu
    if rb > 0.0:
        inv_rb = 1.0 / rb
        phi = (k * (L1 + L2) / Fr) / (L1 * (k / Fu + inv_rb + 2.0 * k / Fr))
        varphi = kerFr2 - keuFu2 - 0.5 * pr * inv_rb
        omega = inv_rb + k / Fu
    else:
        inv_rb = math.inf
        phi = 0.0
        varphi = kerFr2 - keuFu2
        omega = math.inf
    a_phi = 1.0 - phi

    best_energy = math.inf
    best_alpha = 0.0
    best_label = -1.0
    bt = (0.0, math.inf, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    theta_phi = -1.0
    theta_lo_cand = -1.0
    theta_one = -1.0

    # Box bound candidates and the case boundary, in fixed order.
    r = _eval_candidate(alpha_lo, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr, eta_u, eta_r)
    if r[0] == 1.0:
        theta_lo_cand = r[9]
        if r[1] < best_energy:
            best_energy, best_alpha, best_label, bt = r[1], alpha_lo, float(LABEL_ALPHA_ZERO), r
    r = _eval_candidate(1.0, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr, eta_u, eta_r)
    if r[0] == 1.0:
        theta_one = r[9]
        if r[1] < best_energy:
            best_energy, best_alpha, best_label, bt = r[1], 1.0, float(LABEL_ALPHA_ONE), r
    phi_in_range = alpha_lo <= a_phi <= 1.0
    if phi_in_range:
        r = _eval_candidate(a_phi, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr, eta_u, eta_r)
        if r[0] == 1.0:
            theta_phi = r[9]
            if r[1] < best_energy:
                best_energy, best_alpha, best_label, bt = r[1], a_phi, float(LABEL_ALPHA_PHI), r

    c1 = L1 * LN2 / B
    c2 = L2 * LN2 / B

    # Interior stationary point of the active case, seeded from the nearest
    # feasible boundary's dual value.
    if varphi > 0.0 and a_phi > alpha_lo and rb > 0.0:
        seed = theta_phi if theta_phi > 0.0 else (theta_lo_cand if theta_lo_cand > 0.0 else 1e-3)
        if theta_phi > 0.0 or theta_lo_cand > 0.0:
            theta_fp, ok = _fp_solve(seed, g1f, g2f, c1, c2, L1, omega * L1, varphi)
            if ok:
                tau1 = _tau_slot(theta_fp, g1f, c1)
                tau2 = _tau_slot(theta_fp, g2f, c2)
                a_int = 1.0 - (T - tau1 - tau2) / (omega * L1)
                a_int = min(max(a_int, alpha_lo), a_phi)
                r = _eval_candidate(a_int, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr,
                                    eta_u, eta_r)
                if r[0] == 1.0 and r[1] < best_energy:
                    best_energy, best_alpha, best_label, bt = r[1], a_int, float(LABEL_CASE_A), r
    elif varphi < 0.0 and max(a_phi, alpha_lo) < 1.0 and rb > 0.0:
        seed = theta_phi if theta_phi > 0.0 else (theta_one if theta_one > 0.0 else 1e-3)
        if theta_phi > 0.0 or theta_one > 0.0:
            omega_t = -2.0 * k * L1 / Fr
            theta_fp, ok = _fp_solve(seed, g1f, g2f, c1, c2, L1, omega_t, varphi)
            if ok:
                tau1 = _tau_slot(theta_fp, g1f, c1)
                tau2 = _tau_slot(theta_fp, g2f, c2)
                a_int = -(T - tau1 - tau2 + k * (L1 - L2) / Fr) / omega_t
                a_int = min(max(a_int, max(a_phi, alpha_lo)), 1.0)
                r = _eval_candidate(a_int, pr, rb, T, g1f, g2f, L1, L2, B, k, Fu, Fr,
                                    eta_u, eta_r)
                if r[0] == 1.0 and r[1] < best_energy:
                    best_energy, best_alpha, best_label, bt = r[1], a_int, float(LABEL_CASE_B), r

    if best_label < 0.0:
        return (0.0, math.inf, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    return (1.0, best_energy, best_alpha, best_label,
            bt[2], bt[3], bt[4], bt[5], bt[6], bt[7], bt[8], bt[9])
