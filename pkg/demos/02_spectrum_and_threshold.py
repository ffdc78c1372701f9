"""Where the eigenvalues of -Λ^alpha sit, and when they cross into Re > 0."""

from fractions import Fraction

from fracblocks import SpectralOperator, classify_generation, eigenvalues_formula, sectoriality_threshold
from fracblocks.spectrum import max_real_part, semilines

op = SpectralOperator(tuple(float(j * j) for j in range(1, 9)), "j^2")

# Each mode contributes n eigenvalues, all on a fixed set of rays.
for n, alpha in [(3, Fraction(3, 4)), (3, Fraction(1, 2)), (4, Fraction(2, 3)), (5, Fraction(5, 8))]:
    rays = semilines(eigenvalues_formula(n, alpha, op))
    angles = ", ".join(str(r["angle_over_pi"]) for r in sorted(rays, key=lambda r: r["angle_over_pi"]))
    print(f"n={n} alpha={alpha}: ray angles / pi = {angles}")

# The rays reach the imaginary axis exactly at alpha = n / (2(n-1)).
print()
for n in (3, 4, 5, 6):
    th = sectoriality_threshold(n)
    print(f"n={n}: threshold {th:.6f}  "
          f"below -> {classify_generation(n, th - 0.01)}, above -> {classify_generation(n, th + 0.01)}")

# At alpha = 1 the largest real part grows with the highest mode kept,
# so no truncation-independent growth bound exists.
for J in (8, 32, 128):
    ops = SpectralOperator(tuple(float(j * j) for j in range(1, J + 1)))
    print(f"J={J:>3}: max Re sigma(-Λ_3) = {max_real_part(3, 1, ops):.6f}")
