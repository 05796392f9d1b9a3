# demos/sum_rate_sweep.py
# ----------------------------------------------------------------------
# Reduced-scale version of the main experiment: average sum rate vs the
# cell-border SNR for DZF with exhaustive, metric-based, pruned, and
# selfish selection. Writes sum_rate_sweep.csv and sum_rate_sweep.png
# next to this script (300 trials; bump `trials` for smoother curves).
# Run: python demos/sum_rate_sweep.py
# ----------------------------------------------------------------------
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cbfsim import DZF, ExperimentConfig, run_sweep
from cbfsim.harness import write_results_csv

here = os.path.dirname(os.path.abspath(__file__))
cfg = ExperimentConfig(
    b=3,
    nt=3,
    k=10,
    rho_db_grid=(-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0),
    trials=300,
    seed=2024,
    precoder=DZF,
    strategies=("O-GCSI", "O-MUS", "R-MUS", "O-NSPA", "R-NSPA", "MAX-SNR"),
)

rows = run_sweep(cfg)
with open(os.path.join(here, "sum_rate_sweep.csv"), "w", newline="") as fh:
    write_results_csv(rows, fh)

curves = {}
for row in rows:
    curves.setdefault(row.strategy, []).append((row.rho_db, row.mean_sum_rate))

plt.figure(figsize=(7, 5))
markers = {"O-GCSI": "k-o", "O-MUS": "b-s", "R-MUS": "b--s",
           "O-NSPA": "g-^", "R-NSPA": "g--^", "MAX-SNR": "r-x"}
for name, pts in curves.items():
    xs, ys = zip(*sorted(pts))
    plt.plot(xs, ys, markers[name], label=name, markersize=5)
plt.xlabel(r"cell-border SNR $\rho$ (dB)")
plt.ylabel("average sum rate (bits/s/Hz)")
plt.title(f"DZF, B={cfg.b}, Nt={cfg.nt}, K={cfg.k}, {cfg.trials} trials")
plt.grid(True, alpha=0.4)
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(here, "sum_rate_sweep.png"), dpi=130)

print("wrote sum_rate_sweep.csv and sum_rate_sweep.png")
at10 = {s: r for (s, r) in [(row.strategy, row.mean_sum_rate)
                            for row in rows if row.rho_db == 10.0]}
for name, rate in at10.items():
    print(f"  rho=10 dB {name:8s}: {rate:6.3f}  ({100 * rate / at10['O-GCSI']:5.1f}%)")
