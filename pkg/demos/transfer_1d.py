"""
Perfect state transfer on a line
================================

A single walker starts at site 0 carrying an unknown coin state. Three FLIP
coins, placed at the right (step, site) pairs, deliver that coin state intact
to site 3 after five steps. Everywhere else the coin is left alone.
"""

import numpy as np

from qwroute import fidelity, plan_1d, run_plan

##############################################################################
# Compile the plan. The two branches created by the first flip walk ``a`` and
# ``b`` sites before and after turning around.

plan = plan_1d(5, 3)
print("legs:", plan.legs[0])
print("flips (step, walker, site):", plan.special_flips)

##############################################################################
# Run it on an arbitrary coin and draw each step on the number line. Each
# branch is shown as ``>`` (coin 0, moving right) or ``<`` (coin 1, moving
# left); ``*`` marks both branches on one site.

coin = np.array([0.6, 0.8j])
trace = run_plan(plan, coin)

for state in trace:
    cells = {}
    for label, _ in state.items():
        (p,), (c,) = label
        cells[p] = "*" if p in cells else "><"[c]
    line = "".join(cells.get(p, ".") for p in range(-3, 7))
    print(f"step {state.step}: {line}")

##############################################################################
# The final state is the input coin sitting on site 3.

print("fidelity at site 3:", fidelity(trace[-1], [3], coin))
print("final state:", trace[-1])
