"""Evolve a random state under exp(-t Λ^alpha) on both sides of the threshold."""

import numpy as np

from fracblocks import SpectralOperator, dichotomy_report, evolve, random_state, sectoriality_threshold

op = SpectralOperator(tuple(float(j * j) for j in range(1, 9)))
n = 4
th = sectoriality_threshold(n)

for alpha in (th - 0.05, th, th + 0.05):
    rep = dichotomy_report(op, n, alpha, horizon=2000.0, seed=1)
    print(f"alpha={alpha:.4f}: observed {rep.classification:<18} "
          f"fitted rate {rep.growth_rate_estimate:+.5f}  predicted {rep.predicted_rate:+.5f}")

# A short trajectory in the phase-space norm, printed every second.
state = random_state(n, op, seed=3)
traj = evolve(state, 0.5, np.linspace(0, 10, 11))
print("\n t   ||u(t)||_Y")
for t, y in zip(traj.times, traj.norms):
    print(f"{t:4.1f} {y:.6e}")
