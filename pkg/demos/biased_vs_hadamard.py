"""
Biased coins against the Hadamard walk
======================================

A Hadamard coin spreads the walker over the whole light cone; the FLIP and
identity coins of a transfer plan only ever move two amplitudes around. Both
walks are checked against the dense box simulator, which shares no code with
the sparse engine.
"""

from qwroute import (FLIP, HADAMARD, PHASE, CoinProgram, dense_trace, evolve, fidelity,
                     make_product_state, plan_1d)

start = make_product_state([0], [1, 0])
steps = 8

hadamard = CoinProgram(1, default=HADAMARD)
sparse = evolve(start, hadamard, steps)
dense = dense_trace(start, hadamard, steps, radius=steps)
print("Hadamard walk, sites with weight:", len(sparse[-1].positions()))
print("max |sparse - dense|:", max(a.max_deviation(b) for a, b in zip(sparse, dense)))
for (p,), prob in sparse[-1].position_distribution().items():
    print(f"{p:3d} {'#' * round(60 * prob)}")

##############################################################################
# The transfer plan keeps at most two nonzero amplitudes per step.

plan = plan_1d(steps, 2)
coin = [0.6, 0.8]
trace = evolve(make_product_state([0], coin), plan.program, steps)
print("transfer plan, support sizes:", [len(s) for s in trace])

##############################################################################
# A phase coin never flips the coin bit, so it cannot turn a branch around.
# Substituting it for every FLIP leaves nothing at the target.

phased = plan.program.replaced(FLIP, PHASE)
final = evolve(make_product_state([0], coin), phased, steps)[-1]
print("with PHASE instead of FLIP, fidelity at target:", fidelity(final, [2], coin))
