"""
Round trips and period 2n
=========================

After the transfer, flipping at the target and reusing the same turnaround
sites sends both branches back. The walker and coin return to the initial
state after exactly ``2 n`` steps, and not before.
"""

import numpy as np

from qwroute import periodicity_check, plan_round_trip, run_plan

plan = plan_round_trip(7, [-3])
print("flips:", plan.special_flips)
sites = sorted({p for _, _, p in plan.special_flips})
print("sites touched:", sites)

coin = np.array([0.28, 0.96j])
trace = run_plan(plan, coin)
start = trace[0]
for state in trace:
    back = state.max_deviation(start) == 0
    print(f"step {state.step:2d}: sites {sorted(p for (p,) in state.positions())}"
          f"{'   <- initial state' if back else ''}")

print("fidelity at step 2n:", periodicity_check(plan, coin))
