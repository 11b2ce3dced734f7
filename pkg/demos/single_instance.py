"""Walk through one scheduling instance: solve the joint problem and compare
against the two fixed-partition schemes on the same channels.

Run:  python demos/single_instance.py
"""

import twrmec as tw

# Reference operating point: 1 MHz, -90 dBm noise, two 180 kbit tasks,
# 0.3/0.6 GHz CPUs. A 0.7 s deadline is tight enough that splitting the
# compute load between the relay and the users beats both all-or-nothing
# placements.
params = tw.SystemParams(deadline_T=0.7)
print("scenario:", params, "\n")

# Channels pinned at their Rayleigh means: |h|^2 = 1e-6 -> gamma = 1000 1/W.
chan = tw.ChannelRealization(gamma_1f=1000.0, gamma_2f=1000.0,
                             gamma_1b=1000.0, gamma_2b=1000.0)

solutions = [tw.solve(params, chan)]
for scheme in ("relay_computing", "local_computing"):
    solutions.append(tw.solve_baseline(params, chan, scheme))

print(f"{'scheme':18s} {'total mJ':>10s} {'offload mJ':>11s} {'compute mJ':>11s} "
      f"{'alpha1':>7s} {'Pr mW':>9s}")
for sol in solutions:
    e = sol.energy
    offload = (e.e1_offload + e.e2_offload + e.e3_broadcast) * 1e3
    compute = (2 * e.cu_local + e.cr_relay) * 1e3
    print(f"{sol.scheme:18s} {e.total*1e3:10.4f} {offload:11.4f} {compute:11.4f} "
          f"{sol.schedule.alpha1:7.3f} {sol.power_relay*1e3:9.3f}")

best = solutions[0]
s = best.schedule
print(f"\nwinning condition: {best.candidate_label}")
print(f"slots: tau1={s.tau1:.4f}s  tau2={s.tau2:.4f}s  tau3={s.tau3:.4f}s  "
      f"tau4={s.tau4:.4f}s  (sum={s.tau1+s.tau2+s.tau3+s.tau4:.6f}s = T)")
print(f"powers: P1={s.power_user1_P1*1e3:.3f} mW  P2={s.power_user2_P2*1e3:.3f} mW  "
      f"Pr={s.power_relay_Pr*1e3:.3f} mW")

# The whole block is always spent at the optimum; check_feasible re-verifies
# the coupling, box bounds and deadline from first principles.
print("feasibility:", tw.check_feasible(params, chan, s))
