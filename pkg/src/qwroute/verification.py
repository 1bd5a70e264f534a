"""Fidelity, periodicity and oracle checks for compiled transfer plans."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .engine import FLIP, CoinProgram, evolve
from .oracle import predict_state
from .planner import RoutePlan
from .state import (BasisLabel, DimensionError, WalkState, coin_bits, coin_vector,
                    make_product_state)

__all__ = [
    "DEFAULT_TOLERANCE",
    "TransferReport",
    "fidelity",
    "norm_drift",
    "run_plan",
    "periodicity_check",
    "trace_vs_oracle",
    "transfer_report",
]

DEFAULT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TransferReport:
    plan: dict
    fidelity: float
    success: bool
    per_step_norm_drift: float
    oracle_max_deviation: float | None
    special_flip_count: int
    tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)


def fidelity(final: WalkState, target_positions: Sequence[int], coin: Sequence[complex]) -> float:
    """|<target_positions, coin | final>|**2."""
    vec = coin_vector(coin)
    dims = final.dims
    if len(target_positions) != dims or vec.size != 2**dims:
        raise DimensionError(
            f"state has D={dims}; got {len(target_positions)} positions and "
            f"coin of length {vec.size}"
        )
    overlap = 0j
    for c in range(vec.size):
        label = BasisLabel(target_positions, coin_bits(c, dims))
        overlap += vec[c].conjugate() * final.amplitude(label)
    return float(abs(overlap) ** 2)


def norm_drift(trace: Sequence[WalkState]) -> float:
    return max(abs(1.0 - s.norm_squared()) for s in trace)


def run_plan(plan: RoutePlan, coin: Sequence[complex],
             program: CoinProgram | None = None) -> list[WalkState]:
    """Evolve ``|source> (x) coin`` under the plan (or a substitute program)."""
    initial = make_product_state(plan.source, coin)
    return evolve(initial, program or plan.program, plan.total_steps)


def periodicity_check(plan: RoutePlan, coin: Sequence[complex]) -> float:
    """Fidelity of the step-``2 n`` state against the initial state."""
    if not plan.round_trip:
        raise ValueError("periodicity_check needs a round-trip plan")
    trace = run_plan(plan, coin)
    return fidelity(trace[-1], plan.source, coin)


def trace_vs_oracle(plan: RoutePlan, coin: Sequence[complex],
                    program: CoinProgram | None = None,
                    trace: Sequence[WalkState] | None = None) -> float:
    """
    Largest amplitude difference between the engine and the closed forms.

    ``program`` replaces the plan's program on the engine side only, which
    is how mutated plans are checked.
    """
    if trace is None:
        trace = run_plan(plan, coin, program)
    return max(s.max_deviation(predict_state(plan, coin, i)) for i, s in enumerate(trace))


def transfer_report(plan: RoutePlan, coin: Sequence[complex],
                    tolerance: float = DEFAULT_TOLERANCE,
                    program: CoinProgram | None = None) -> TransferReport:
    coin = coin_vector(coin)
    prog = program or plan.program
    trace = run_plan(plan, coin, prog)
    fid = fidelity(trace[-1], plan.final_positions, coin)
    return TransferReport(
        plan=plan.to_dict(),
        fidelity=fid,
        success=bool(fid >= 1.0 - tolerance),
        per_step_norm_drift=norm_drift(trace),
        oracle_max_deviation=trace_vs_oracle(plan, coin, trace=trace),
        special_flip_count=len(prog.keys_with(FLIP)),
        tolerance=tolerance,
    )
