"""One-way LOCC: Alice measures first, Bob does binary discrimination."""

import math

import numpy as np

from trine_lab import AliceDirection, bob_posterior, one_way_branch_error, one_way_optimum
from trine_lab.locc import THETA_MAX, THETA_MIN, elimination_branch_error, elimination_posterior

# A few of Alice's directions and what Bob is left with.
for theta in np.linspace(THETA_MIN, THETA_MAX, 5):
    d = AliceDirection(theta, 0.0)
    p = np.round(bob_posterior(d), 4)
    print(f"theta = {theta:+.4f}: posterior {p}, branch error {one_way_branch_error(d):.6f}")

opt = one_way_optimum()
print(f"\noptimum {opt.error:.15f} at theta = {opt.theta:.6f}, phi = {opt.phi:.6f}")
print(f"1/2 - sqrt(3)/4 = {0.5 - math.sqrt(3) / 4:.15f}")

# The symmetric elimination measurement reaches the same value on every branch.
for i in range(3):
    print(f"eliminate {i}: posterior {elimination_posterior(i)}, error {elimination_branch_error(i):.15f}")
