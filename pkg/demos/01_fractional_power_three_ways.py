"""Three independent ways to take a fractional power of one mode block."""

import numpy as np

from fracblocks import (
    QuadratureSpec,
    assemble_lambda,
    balakrishnan_block,
    fractional_power_closed_form,
    fractional_power_eig_oracle,
)

# A third-order system on a mode with eigenvalue mu = 17.5
n, mu, alpha = 3, 17.5, 0.3
block = assemble_lambda(n, mu)
print("the mode block:")
print(block.pretty())

# Route 1: the Chebyshev closed form. Every diagonal is constant.
closed = fractional_power_closed_form(n, mu, alpha)
print(f"\nclosed form of the {alpha} power:")
print(closed.pretty())

# Route 2: principal-branch eigendecomposition of the block.
eig = fractional_power_eig_oracle(block, alpha)

# Route 3: the Balakrishnan integral, with both quadrature schemes.
gl = balakrishnan_block(n, mu, alpha)
ts = balakrishnan_block(n, mu, alpha, QuadratureSpec(scheme="tanh-sinh"))

for name, other in [("eigendecomposition", eig), ("Gauss-Legendre", gl), ("tanh-sinh", ts)]:
    err = np.max(np.abs(other.entries - closed.entries) / np.abs(closed.entries))
    print(f"{name:>20}: max relative deviation {err:.2e}")

# Endpoints: alpha = 0 gives the identity and alpha = 1 gives the block itself.
print("\nalpha = 0:\n" + fractional_power_closed_form(n, mu, 0).pretty())
print("alpha = 1:\n" + fractional_power_closed_form(n, mu, 1).pretty())
