"""The noncompact quantum dilogarithm: values, symmetries, asymptotics.

Phi_b(z) is defined by a contour integral over the real line circling
the origin from above.  On the real axis it is unimodular for real b,
it satisfies shift recurrences in steps of i*b and i/b, it is invariant
under b -> 1/b and b -> -b, and for Im b^2 > 0 it factors into a ratio
of two compact quantum dilogarithm products.  As b -> 0 it degenerates
to the Euler dilogarithm.
"""

import cmath
import math

import numpy as np

from clusterdilog import (
    PhibParams,
    check_duality,
    check_phib_asymptotics,
    phib,
    phipsi_residual,
    psiq_asymptotics,
    recurrence_residual,
    unitarity_residual,
)

p = PhibParams(1.0)
print(f"b = 1: c_b = {p.c_b}, q = {p.q}")
for z in (0.0, 0.3, -0.25):
    val = phib(z, p)
    print(f"  Phi_1({z:+.2f}) = {val:.12f}   |.| = {abs(val):.12f}")

print("\nunimodularity on the real axis (real b):")
for b in (0.7, 1.0, 1.3):
    pp = PhibParams(b)
    worst = max(unitarity_residual(z, pp) for z in np.linspace(-0.4, 0.4, 5))
    print(f"  b = {b}: worst | |Phi|-1 | = {worst:.2e}")

print("\nshift recurrences (both step directions):")
pp = PhibParams(1.3)
for z in (-0.3, 0.2):
    print(f"  z = {z:+.1f}: residual {recurrence_residual(z, pp):.2e} "
          f"(dual {recurrence_residual(z, pp, dual=True):.2e})")

print("\nself-duality b -> 1/b and evenness b -> -b:")
r_inv, r_neg = check_duality(0.2, 1.3)
print(f"  b = 1.3: residuals {r_inv:.2e}, {r_neg:.2e}")

print("\nfactorization into compact products (unit-modulus b):")
for deg in (36, 25.7):
    b = cmath.exp(1j * math.pi * deg / 180)
    pp = PhibParams(b)
    print(f"  b = e^(i pi {deg}/180): |q| = {abs(pp.q):.4f}, "
          f"ratio residual = {phipsi_residual(0.2, pp):.2e}")

print("\nsemiclassical decay of the compact dilogarithm (q -> 1):")
for q, defect in psiq_asymptotics(1.0, [0.9, 0.95, 0.99, 0.999]):
    print(f"  q = {q}: |2 log q * log Psi_q(1) + Li2(-1)| = {defect:.3e}")

print("\nsemiclassical decay of Phi_b (b -> 0):")
for b, defect in check_phib_asymptotics(1.0, [0.5, 0.4, 0.3, 0.2]):
    print(f"  b = {b}: defect = {defect:.3e}")
