"""
Independent predictions used to cross-check the sparse engine.

Two kinds live here:

* integer closed forms for the branch trajectories of transfer plans
  (outbound and return half, one walker, and the two-walker entangled case);
* a dense simulator that stores the whole box ``[-r, r]**D`` and applies
  an explicitly built single-walker step matrix per walker.

Neither uses the engine module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .state import BasisLabel, WalkState, coin_bits

__all__ = [
    "BoundaryError",
    "BranchPrediction",
    "unit_step",
    "forward_1d",
    "return_1d",
    "forward_2d",
    "predict_state",
    "predicted_trace",
    "dense_evolve",
    "dense_trace",
]


class BoundaryError(ValueError):
    """Amplitude would leave the dense simulation box."""


@dataclass(frozen=True)
class BranchPrediction:
    alpha_position: int
    alpha_coin: int
    beta_position: int
    beta_coin: int
    step: int


def unit_step(v: int) -> int:
    return 1 if v >= 0 else 0


def _check_range(i: int, legs) -> int:
    n = legs[0] + legs[1] + 2
    if not 1 <= i <= n:
        raise ValueError(f"step {i} outside 1..{n} for legs {tuple(legs)}")
    return n


def forward_1d(i: int, legs) -> BranchPrediction:
    """Branch positions and coins after step ``i`` of a one-way transfer."""
    _check_range(i, legs)
    a, b = legs
    e = unit_step
    return BranchPrediction(
        alpha_position=-i + 2 * (i - b - 1) * e(i - b - 2),
        alpha_coin=e(b + 1 - i),
        beta_position=i - 2 * (i - a - 1) * e(i - a - 2),
        beta_coin=e(i - a - 2),
        step=i,
    )


def return_1d(i: int, x: int, legs) -> BranchPrediction:
    """Branch positions and coins after step ``n + i`` of a round trip."""
    n = _check_range(i, legs)
    a, b = legs
    e = unit_step
    return BranchPrediction(
        alpha_position=x - i + 2 * (i - a - 1) * e(i - a - 2),
        alpha_coin=e(a + 1 - i),
        beta_position=x + i - 2 * (i - b - 1) * e(i - b - 2),
        beta_coin=e(i - b - 2),
        step=n + i,
    )


def forward_2d(i: int, legs1, legs2) -> tuple[tuple[tuple[int, int], tuple[int, int]],
                                               tuple[tuple[int, int], tuple[int, int]]]:
    """
    Two walkers carrying ``alpha|01> + beta|10>``, after step ``i``.

    Returns
    -------
    ((alpha_positions, alpha_coins), (beta_positions, beta_coins))
        Each a pair ``(walker 1, walker 2)``.
    """
    n1 = _check_range(i, legs1)
    n2 = _check_range(i, legs2)
    if n1 != n2:
        raise ValueError(f"legs {tuple(legs1)} and {tuple(legs2)} have different budgets")
    a1, b1 = legs1
    a2, b2 = legs2
    e = unit_step
    alpha = (
        (-i + 2 * (i - b1 - 1) * e(i - b1 - 2), i - 2 * (i - a2 - 1) * e(i - a2 - 2)),
        (e(b1 + 1 - i), e(i - a2 - 2)),
    )
    beta = (
        (i - 2 * (i - a1 - 1) * e(i - a1 - 2), -i + 2 * (i - b2 - 1) * e(i - b2 - 2)),
        (e(i - a1 - 2), e(b2 + 1 - i)),
    )
    return alpha, beta


def predict_state(plan, coin: Sequence[complex], i: int) -> WalkState:
    """
    Closed-form state of a transfer plan after step ``i``.

    Each walker whose initial coin bit is 0 follows the alpha branch and
    each with bit 1 the beta branch, independently of the other walkers.
    """
    coin = np.asarray(coin, dtype=np.complex128)
    dims = plan.dims
    if not 0 <= i <= plan.total_steps:
        raise ValueError(f"step {i} outside 0..{plan.total_steps}")
    per_walker = []
    for d in range(dims):
        legs, x = plan.legs[d], plan.offsets[d]
        if i == 0:
            pred = None
        elif i <= plan.n:
            pred = forward_1d(i, legs)
        else:
            pred = return_1d(i - plan.n, x, legs)
        per_walker.append(pred)
    amps = {}
    for c in range(2**dims):
        bits = coin_bits(c, dims)
        positions, coins = [], []
        for d, bit in enumerate(bits):
            pred = per_walker[d]
            if pred is None:
                positions.append(plan.source[d])
                coins.append(bit)
            elif bit == 0:
                positions.append(plan.source[d] + pred.alpha_position)
                coins.append(pred.alpha_coin)
            else:
                positions.append(plan.source[d] + pred.beta_position)
                coins.append(pred.beta_coin)
        amps[BasisLabel(positions, coins)] = coin[c]
    return WalkState(amps, step=i, dims=dims)


def predicted_trace(plan, coin: Sequence[complex]) -> list[WalkState]:
    return [predict_state(plan, coin, i) for i in range(plan.total_steps + 1)]


def _walker_matrix(prog, step: int, walker: int, radius: int) -> np.ndarray:
    # Rows/columns indexed by 2 * (p + radius) + coin.
    size = 2 * (2 * radius + 1)
    m = np.zeros((size, size), dtype=np.complex128)
    for p in range(-radius, radius + 1):
        u = np.asarray(prog.coin(step, walker, p), dtype=np.complex128)
        for c_in in (0, 1):
            col = 2 * (p + radius) + c_in
            for c_out in (0, 1):
                dest = p + 1 if c_out == 0 else p - 1
                if -radius <= dest <= radius:
                    m[2 * (dest + radius) + c_out, col] = u[c_out, c_in]
    return m


def _to_dense(state: WalkState, radius: int) -> np.ndarray:
    dims = state.dims
    side = 2 * radius + 1
    psi = np.zeros((side, 2) * dims, dtype=np.complex128)
    for label, amp in state.items():
        if any(abs(p) > radius for p in label.positions):
            raise BoundaryError(f"{label!r} lies outside radius {radius}")
        idx = []
        for p, c in zip(label.positions, label.coins):
            idx += [p + radius, c]
        psi[tuple(idx)] = amp
    return psi


def _from_dense(psi: np.ndarray, radius: int, step: int, dims: int) -> WalkState:
    amps = {}
    for idx in zip(*np.nonzero(psi)):
        positions = [int(idx[2 * d]) - radius for d in range(dims)]
        coins = [int(idx[2 * d + 1]) for d in range(dims)]
        amps[BasisLabel(positions, coins)] = complex(psi[idx])
    return WalkState(amps, step=step, dims=dims)


def _touches_boundary(psi: np.ndarray, radius: int, dims: int) -> bool:
    side = 2 * radius + 1
    for d in range(dims):
        edge = np.take(psi, [0, side - 1], axis=2 * d)
        if np.any(edge != 0):
            return True
    return False


def dense_trace(initial: WalkState, prog, steps: int, radius: int) -> list[WalkState]:
    """
    Evolve on a dense box ``[-radius, radius]**D`` and return every step.

    Raises
    ------
    BoundaryError
        If ``radius < steps + max |initial position|``.
    """
    dims = initial.dims
    reach = max((abs(p) for label, _ in initial.items() for p in label.positions), default=0)
    if radius < steps + reach:
        raise BoundaryError(f"radius {radius} < steps {steps} + initial extent {reach}")
    side = 2 * radius + 1
    psi = _to_dense(initial, radius)
    out = [_from_dense(psi, radius, initial.step, dims)]
    for k in range(1, steps + 1):
        t = initial.step + k
        if _touches_boundary(psi, radius, dims):
            raise BoundaryError(f"amplitude reached the box edge before step {t}")
        for d in range(dims):
            m = _walker_matrix(prog, t, d, radius)
            # bring (pos_d, coin_d) to the front, apply, and restore
            moved = np.moveaxis(psi, (2 * d, 2 * d + 1), (0, 1))
            shape = moved.shape
            flat = moved.reshape(2 * side, -1)
            moved = (m @ flat).reshape(shape)
            psi = np.moveaxis(moved, (0, 1), (2 * d, 2 * d + 1))
        out.append(_from_dense(psi, radius, t, dims))
    return out


def dense_evolve(initial: WalkState, prog, steps: int, radius: int) -> WalkState:
    """Final state of :func:`dense_trace`."""
    return dense_trace(initial, prog, steps, radius)[-1]
