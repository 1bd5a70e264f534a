import numpy as np
import pytest
from hypothesis import strategies as st

from qwroute.planner import feasible


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def feasible_pairs(n_max, n_min=2):
    return [(n, x) for n in range(n_min, n_max + 1) for x in range(-n, n + 1) if feasible(n, x)]


@st.composite
def feasible_nx(draw, n_max=16):
    n = draw(st.integers(2, n_max))
    x = draw(st.integers(-(n - 2), n - 2).filter(lambda v: (n - v) % 2 == 0))
    return n, x


@st.composite
def unit_coins(draw, dims=1):
    size = 2**dims
    parts = draw(st.lists(st.floats(-1, 1, allow_nan=False), min_size=2 * size,
                          max_size=2 * size))
    vec = np.array(parts[:size]) + 1j * np.array(parts[size:])
    norm = np.linalg.norm(vec)
    if norm < 1e-3:
        vec = np.zeros(size, dtype=complex)
        vec[0] = 1.0
        return vec
    return vec / norm


def random_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_program(rng, dims, steps, density=0.3):
    """Random default coin plus random overrides inside the light cone."""
    from qwroute.engine import FLIP, HADAMARD, IDENTITY, CoinProgram

    choices = [IDENTITY, HADAMARD, FLIP, random_unitary(rng)]
    default = choices[rng.integers(len(choices))]
    overrides = {}
    for t in range(1, steps + 1):
        for d in range(dims):
            for p in range(-(t - 1), t):
                if rng.random() < density:
                    overrides[(t, d, p)] = (HADAMARD if rng.random() < 0.3
                                            else random_unitary(rng))
    return CoinProgram(dims, overrides, default)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
