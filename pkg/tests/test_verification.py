import numpy as np
import pytest

from qwroute.engine import FLIP, PHASE
from qwroute.oracle import dense_evolve
from qwroute.planner import plan_1d, plan_nd, plan_round_trip
from qwroute.state import DimensionError, NormalizationError, random_coin_vector, translate
from qwroute.verification import (fidelity, periodicity_check, run_plan, trace_vs_oracle,
                                  transfer_report)

from conftest import feasible_pairs

COIN = np.array([0.6, 0.8])


def test_fidelity_examples():
    final = run_plan(plan_1d(5, 3), COIN)[-1]
    assert fidelity(final, [3], COIN) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(final, [3], [0.8, -0.6]) == pytest.approx(0.0, abs=1e-12)
    assert fidelity(final, [1], COIN) == 0.0


def test_fidelity_wrong_site_agrees_with_dense_support():
    plan = plan_1d(5, 3)
    dense = dense_evolve(run_plan(plan, COIN)[0], plan.program, 5, radius=6)
    assert dense.positions() == {(3,)}


def test_fidelity_errors():
    final = run_plan(plan_1d(5, 3), COIN)[-1]
    with pytest.raises(DimensionError):
        fidelity(final, [3, 0], COIN)
    with pytest.raises(NormalizationError):
        fidelity(final, [3], [1, 1])


def test_periodicity_examples(rng):
    assert periodicity_check(plan_round_trip(5, [3]), random_coin_vector(1, rng)) == \
        pytest.approx(1.0, abs=1e-12)
    assert periodicity_check(plan_round_trip(2, [0]), COIN) == pytest.approx(1.0, abs=1e-12)
    assert periodicity_check(plan_round_trip(5, [1, 3]), [0, 0.6, 0.8, 0]) == \
        pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        periodicity_check(plan_1d(5, 3), COIN)


def test_trace_vs_oracle_examples(rng):
    assert trace_vs_oracle(plan_1d(5, 3), COIN) <= 1e-12
    assert trace_vs_oracle(plan_round_trip(9, [-3]), random_coin_vector(1, rng)) <= 1e-12


@pytest.mark.parametrize("n, x", [p for p in feasible_pairs(10) if p[1] != 0])
def test_corrupted_plan_is_detected_by_oracle(n, x):
    plan = plan_1d(n, x)
    origin, *turns = plan.special_flips
    for key in turns:
        dev = trace_vs_oracle(plan, COIN, program=plan.program.without(key))
        assert dev >= 0.5 * min(abs(COIN))
    # dropping the origin flip swaps which branch carries which amplitude
    dev = trace_vs_oracle(plan, COIN, program=plan.program.without(origin))
    assert dev == pytest.approx(abs(COIN[0] - COIN[1]), abs=1e-15)


@pytest.mark.parametrize("n, x", feasible_pairs(10))
def test_report_success(n, x):
    report = transfer_report(plan_1d(n, x), COIN)
    assert report.success
    assert report.special_flip_count == 3
    assert report.per_step_norm_drift <= 1e-12
    assert report.oracle_max_deviation <= 1e-12
    assert 0 <= report.fidelity <= 1 + 1e-12


@pytest.mark.parametrize("n, x", [p for p in feasible_pairs(10) if p[1] != 0])
def test_report_fails_for_every_single_flip_removal(n, x):
    for plan in (plan_1d(n, x), plan_round_trip(n, [x])):
        for key in plan.special_flips:
            report = transfer_report(plan, COIN, program=plan.program.without(key))
            assert not report.success
            assert report.special_flip_count == len(plan.special_flips) - 1


def test_origin_flip_removal_only_swaps_the_coin():
    # without the first flip the branches trade roles and arrive with sigma_x(coin);
    # coins that sigma_x leaves (nearly) unchanged cannot reveal that mutation by fidelity
    plan = plan_1d(7, 3)
    prog = plan.program.without((1, 0, 0))
    even = np.array([1, 1]) / np.sqrt(2)
    assert fidelity(run_plan(plan, even, prog)[-1], [3], even) == pytest.approx(1, abs=1e-12)
    assert trace_vs_oracle(plan, even, program=prog) == 0


def test_phase_instead_of_flip_reports_zero_fidelity():
    plan = plan_1d(7, 3)
    report = transfer_report(plan, COIN, program=plan.program.replaced(FLIP, PHASE))
    assert report.fidelity == 0
    assert report.special_flip_count == 0


def test_entangled_coin_survives_2d_transfer(rng):
    coin = np.zeros(4, dtype=complex)
    coin[1], coin[2] = random_coin_vector(1, rng)
    trace = run_plan(plan_nd(5, [1, 3]), coin)
    assert trace[-1] == translate(trace[0], [1, 3]).with_step(5)
