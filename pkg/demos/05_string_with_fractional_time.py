"""A vibrating string, then its fractional counterparts, on (0, π)."""

import math

import numpy as np

from fracblocks import DirichletModel, solve_pde

model = DirichletModel(length=math.pi, m=1, modes=32)
x = np.linspace(0, math.pi, 257)
t = np.linspace(0, 4, 9)
pluck = [lambda x: x * (math.pi - x), None]

# alpha = 1 recovers the wave equation: the L2 norm oscillates but does not decay.
wave = solve_pde(model, 2, 1.0, pluck, t, x)
print("wave       ", np.round(wave.l2_trace(), 6))

# Smaller alpha damps the motion, faster for the high modes.
for alpha in (0.9, 0.5):
    sol = solve_pde(model, 2, alpha, pluck, t, x)
    print(f"alpha={alpha:<4} ", np.round(sol.l2_trace(), 6))

# The single sine mode is an exact standing wave.
single = solve_pde(model, 2, 1.0, [model.eigenfunction(1), None], t, x)
exact = np.cos(t)[:, None] * model.eigenfunction(1)(x)[None, :]
print(f"\nstanding wave max error: {np.max(np.abs(single.field - exact)):.2e}")
