"""Interpolation bound for A^alpha and a measured resolvent bound for Λ."""

import numpy as np

from fracblocks import DirichletModel, moment_inequality_check, resolvent_bound_scan

op = DirichletModel(modes=64).operator()
for alpha in (0.25, 0.5, 0.75):
    rep = moment_inequality_check(op, alpha, 1000, seed=0)
    print(f"alpha={alpha}: ratio in [{rep.min_ratio:.4f}, {rep.max_ratio:.4f}] (bound 1)")

# (1 + λ)||(λ + Λ)^-1|| stays bounded on λ >= 0; its sup estimates the
# positive-type constant, and it does not move when more modes are kept.
grid = np.concatenate([[0.0], np.logspace(-3, 3, 600)])
for J in (25, 50, 100):
    scan = resolvent_bound_scan(3, DirichletModel(modes=J).operator(), grid)
    print(f"J={J:>3}: sup {scan.sup_bound:.6f} at lambda={scan.argmax_lambda:.4g}, mode {scan.argmax_mode}")
