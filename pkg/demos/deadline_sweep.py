"""Reproduce the energy-vs-deadline comparison: Monte-Carlo average over
Rayleigh fading, common random numbers across schemes and deadlines.

This is a scaled-down run (60 trials) so it finishes in a few seconds; the
CLI equivalent of the full experiment is:

  twrmec sweep --trials 500 --t-min 0.7 --t-max 1.5 --t-points 9 --out sweep.csv

The CSV can be rendered with the plotting frontend:

  node frontend/dist/plot.js --in sweep.csv --out fig1.svg
"""

import twrmec as tw

config = tw.SweepConfig(t_min=0.7, t_max=1.5, t_points=5, n_trials=60, seed=7)
result = tw.run_sweep(config, csv_path="sweep_demo.csv")

print(f"{'T (s)':>6s}  {'proposed':>12s}  {'relay_comp':>12s}  {'local_comp':>12s}"
      f"  (mean J over feasible trials)")
by_deadline = {}
for rec in result.records:
    by_deadline.setdefault(rec.deadline_T, {})[rec.scheme] = rec
for T, row in by_deadline.items():
    cells = [f"{row[s].mean_energy:12.5e}" for s in tw.SCHEMES]
    print(f"{T:6.2f}  " + "  ".join(cells))

frac = [rec.feasible_fraction for rec in result.records]
print(f"\nfeasible fraction range: {min(frac):.3f} .. {max(frac):.3f}")
print("wrote sweep_demo.csv")
