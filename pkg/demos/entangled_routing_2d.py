"""
Routing an entangled coin pair in two dimensions
================================================

Two walkers share the coin state ``alpha|01> + beta|10>``. Each walker runs
its own three-flip schedule (one along x, one along y), so the joint coin
is moved to ``(1, 3)`` without being measured or disentangled.
"""

import numpy as np

from qwroute import forward_2d, make_product_state, plan_nd, run_plan, translate

rng = np.random.default_rng(5)
alpha, beta = rng.normal(size=2) + 1j * rng.normal(size=2)
alpha, beta = np.array([alpha, beta]) / np.linalg.norm([alpha, beta])
coin = np.array([0, alpha, beta, 0])

plan = plan_nd(5, [1, 3])
print("legs per walker:", plan.legs)
print("flips:", plan.special_flips)

##############################################################################
# Compare every step with the closed-form branch positions.

trace = run_plan(plan, coin)
for i in range(1, plan.n + 1):
    (apos, acoin), (bpos, bcoin) = forward_2d(i, *plan.legs)
    print(f"step {i}: alpha at {apos} coins {acoin}, beta at {bpos} coins {bcoin}")

##############################################################################
# The final state is the initial one translated to the target: any measure of
# entanglement between the two coins is unchanged.

print("exact:", trace[-1] == translate(trace[0], [1, 3]).with_step(5))

##############################################################################
# Arbitrary two-qubit coin states are routed just as well.

general = rng.normal(size=4) + 1j * rng.normal(size=4)
general /= np.linalg.norm(general)
final = run_plan(plan, general)[-1]
print("general coin:", final == translate(make_product_state([0, 0], general), [1, 3]).with_step(5))
