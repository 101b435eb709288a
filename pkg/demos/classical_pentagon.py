"""Mutation periods and the classical Rogers-dilogarithm identities.

The rank-2 seed with exchange matrix [[0,-1],[1,0]] returns to itself
(up to swapping the two indices) after mutating at 1,2,1,2,1.  Along
the way the tropical signs are (+,+,-,-,-), and the five active
y-values feed a Rogers-dilogarithm sum that vanishes identically in
the initial y -- the pentagon identity in disguise.
"""

import numpy as np

from clusterdilog import (
    builtin_seed,
    check_period,
    numeric_trajectory,
    rogers_L,
    sign_sequence,
    verify_classical_identity,
)
from clusterdilog.dilog import PI2_6

B, sched = builtin_seed("A2")
print(f"exchange matrix B =\n{B.entries}")
print(f"schedule: mutate at {sched.sequence}, relabel by nu = {sched.nu}")

report = check_period(B, sched)
print(f"\nperiod check: matrix={report.matrix_periodic}, "
      f"tropical={report.tropical_periodic} -> periodic={report.periodic}")

ss = sign_sequence(B, sched)
print(f"tropical sign-sequence: {ss.signs}  (N+ = {ss.n_plus}, N- = {ss.n_minus})")
print(f"c-vectors of the active variables: {ss.cvectors}")

y0 = [1.0, 1.0]
traj = numeric_trajectory(B, sched.sequence, y0)
print(f"\ntrajectory from y = {y0}:")
for t, seed in enumerate(traj):
    print(f"  y({t + 1}) = {np.round(seed.y, 6)}")

rep = verify_classical_identity(B, sched, y0)
print(f"\nsigned Rogers sum: {rep.sum_signed:.3e}  (identically zero)")
print(f"sum L(y/(1+y))   = {rep.sum_di / PI2_6:.12f} * pi^2/6  (= N-)")
print(f"sum L(1/(1+y))   = {rep.sum_di_prime / PI2_6:.12f} * pi^2/6  (= N+)")

# at generic points the five terms are exactly the Rogers pentagon
rng = np.random.default_rng(1)
y1, y2 = rng.uniform(0.2, 3.0, size=2)
rep = verify_classical_identity(B, sched, [y1, y2])
x = y1 / (1 + y1)
y = y2 * (1 + y1) / (1 + y2 + y1 * y2)
pentagon = (rogers_L(x) + rogers_L(y) - rogers_L(x * (1 - y) / (1 - x * y))
            - rogers_L(x * y) - rogers_L(y * (1 - x) / (1 - x * y)))
print(f"\nat y = ({y1:.3f}, {y2:.3f}): identity sum = {rep.sum_signed:.3e}, "
      f"pentagon combination = {pentagon:.3e}")

# periods can also be found by search
from clusterdilog import search_periods

print("\nperiods of B up to depth 5 found by BFS:")
for s in search_periods(B, 5):
    print(f"  sequence {s.sequence}, nu {s.nu}")
