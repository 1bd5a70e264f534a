"""Exact simulation and routing of perfect state transfer with coined quantum walks."""

from .engine import (FLIP, HADAMARD, IDENTITY, PHASE, CoinProgram, StepMismatchError,
                     UnitarityError, coin_step, evolve, shift, step)
from .oracle import (BoundaryError, BranchPrediction, dense_evolve, dense_trace, forward_1d,
                     forward_2d, predict_state, return_1d, unit_step)
from .planner import (FeasibilityError, Legs, RoutePlan, feasible, legs_for, min_steps,
                      plan_1d, plan_between, plan_nd, plan_round_trip)
from .state import (BasisLabel, DimensionError, NormalizationError, WalkState, coin_vector,
                    inner_product, make_product_state, random_coin_vector, translate)
from .verification import (TransferReport, fidelity, periodicity_check, run_plan,
                           trace_vs_oracle, transfer_report)

__version__ = "0.1.0"
