import numpy as np
import pytest
from hypothesis import given, strategies as st

from qwroute.engine import evolve
from qwroute.planner import plan_1d, plan_between
from qwroute.state import (BasisLabel, DimensionError, NormalizationError, WalkState, coin_bits,
                           coin_index, inner_product, make_product_state, random_coin_vector,
                           translate)

from conftest import feasible_nx, unit_coins


def test_basis_label_validation():
    assert BasisLabel([0, 1], [1, 0]).dims == 2
    with pytest.raises(DimensionError):
        BasisLabel([0, 1], [1])
    with pytest.raises(DimensionError):
        BasisLabel([], [])
    with pytest.raises(ValueError):
        BasisLabel([0], [2])


def test_coin_index_is_walker_major():
    assert coin_index((0, 1)) == 1
    assert coin_index((1, 0)) == 2
    assert coin_bits(1, 2) == (0, 1)
    assert all(coin_index(coin_bits(c, 3)) == c for c in range(8))


def test_product_state_basis_case():
    s = make_product_state([0], [1, 0])
    assert dict(s.items()) == {BasisLabel([0], [0]): 1}
    assert s.step == 0


def test_product_state_direct_placement():
    s = make_product_state([0], [0.6, 0.8])
    assert s.amplitude(BasisLabel([0], [0])) == 0.6
    assert s.amplitude(BasisLabel([0], [1])) == 0.8
    assert len(s) == 2


def test_product_state_two_walkers_entangled_coin():
    s = make_product_state([0, 0], [0, 0.6, 0.8, 0])
    assert dict(s.items()) == {BasisLabel([0, 0], [0, 1]): 0.6, BasisLabel([0, 0], [1, 0]): 0.8}


def test_product_state_errors():
    with pytest.raises(NormalizationError):
        make_product_state([0], [1, 1])
    with pytest.raises(DimensionError):
        make_product_state([0, 0], [0.6, 0.8])
    with pytest.raises(DimensionError):
        make_product_state([0], [1, 0, 0])


def test_only_exact_zeros_are_dropped():
    s = WalkState({BasisLabel([0], [0]): 1e-300, BasisLabel([1], [0]): 0.0}, dims=1)
    assert len(s) == 1


def test_inner_product_basics():
    psi = make_product_state([0], [0.6, 0.8j])
    assert abs(inner_product(psi, psi) - 1) < 1e-12
    a = make_product_state([0], [1, 0])
    b = make_product_state([1], [1, 0])
    assert inner_product(a, b) == 0
    with pytest.raises(DimensionError):
        inner_product(a, make_product_state([0, 0], [1, 0, 0, 0]))


def test_inner_product_round_trip_returns_initial():
    from qwroute.planner import plan_round_trip

    psi0 = make_product_state([0], [0.6, 0.8])
    trace = evolve(psi0, plan_round_trip(5, [3]).program, 10)
    assert abs(inner_product(psi0, trace[10]) - 1) < 1e-12


@given(unit_coins(1), unit_coins(1), st.integers(-5, 5), st.integers(-5, 5))
def test_inner_product_hermitian(c1, c2, p1, p2):
    a = make_product_state([p1], c1)
    b = make_product_state([p2], c2)
    assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)), abs=1e-15)
    assert inner_product(a, a).real >= 0


def test_translate_definition_and_inverse(rng):
    s = make_product_state([0], [1, 0])
    assert dict(translate(s, [3]).items()) == {BasisLabel([3], [0]): 1}
    psi = make_product_state([2, -1], random_coin_vector(2, rng))
    assert translate(translate(psi, [4, -7]), [-4, 7]) == psi
    with pytest.raises(DimensionError):
        translate(psi, [1])


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=2),
       st.lists(st.integers(-20, 20), min_size=2, max_size=2), unit_coins(2))
def test_translate_composes_and_preserves_norm(k1, k2, coin):
    psi = make_product_state([0, 0], coin)
    once = translate(psi, [k1[0] + k2[0], k1[1] + k2[1]])
    assert translate(translate(psi, k1), k2) == once
    assert abs(once.norm_squared() - 1) < 1e-12


@given(feasible_nx(), st.integers(-30, 30), unit_coins(1))
def test_translated_frame_matches_translate_after_evolve(nx, k, coin):
    n, x = nx
    psi = make_product_state([0], coin)
    here = evolve(psi, plan_1d(n, x).program, n)[-1]
    there = evolve(translate(psi, [k]), plan_between([k], [k + x], n).program, n)[-1]
    assert there == translate(here, [k])
