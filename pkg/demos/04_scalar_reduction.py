"""The scalar n-th order equation hidden in one mode of the fractional system."""

import numpy as np

from fracblocks import char_coeffs, fractional_power_closed_form
from fracblocks.reduction import det_identity_check, format_ode, trace_identity_check

n, mu = 3, 2.0
for alpha in (0.25, 0.5, 1.0):
    cc = char_coeffs(n, alpha, mu)
    print(f"alpha={alpha}: {format_ode(cc)}")
    # roots of the characteristic polynomial are the exponential rates
    block = fractional_power_closed_form(n, mu, alpha).entries
    rates = np.sort_complex(cc.roots())
    print("   rates:     ", np.round(rates, 10))
    print("   -eig(B):   ", np.round(np.sort_complex(-np.linalg.eigvals(block)), 10))

# Trace and determinant follow closed formulas.
print(f"\ntrace residual: {trace_identity_check(5, 0.4, 9.0):.2e}")
print(f"det residual:   {det_identity_check(5, 0.4, 9.0).residual:.2e}")
