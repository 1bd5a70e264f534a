"""
Coined walk evolution on the integer lattice.

One step applies, for every walker, a 2x2 coin unitary chosen by
(step, walker, position), then the conditional shift: coin bit 0 moves the
walker to ``p + 1`` and coin bit 1 to ``p - 1``. Steps are numbered from 1;
the coin applied during step ``t`` acts on amplitude resident after step
``t - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .state import BasisLabel, DimensionError, WalkState

__all__ = [
    "IDENTITY",
    "FLIP",
    "HADAMARD",
    "PHASE",
    "UnitarityError",
    "StepMismatchError",
    "check_unitary",
    "CoinProgram",
    "coin_step",
    "shift",
    "step",
    "evolve",
]

IDENTITY = np.array([[1, 0], [0, 1]], dtype=np.complex128)
FLIP = np.array([[0, 1], [1, 0]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
PHASE = np.array([[1, 0], [0, -1]], dtype=np.complex128)

for _u in (IDENTITY, FLIP, HADAMARD, PHASE):
    _u.flags.writeable = False
# read-only constants skip the per-program unitarity check
_NAMED = {id(u): u for u in (IDENTITY, FLIP, HADAMARD, PHASE)}


class UnitarityError(ValueError):
    """A coin matrix is not a 2x2 unitary."""


class StepMismatchError(ValueError):
    """Requested step does not follow the state's step counter."""


def check_unitary(u, atol: float = 1e-12) -> np.ndarray:
    """Return ``u`` as a read-only 2x2 complex array, or raise UnitarityError."""
    m = np.array(u, dtype=np.complex128)
    if m.shape != (2, 2):
        raise UnitarityError(f"coin must be 2x2, got shape {m.shape}")
    if not np.allclose(m @ m.conj().T, IDENTITY, rtol=0.0, atol=atol):
        raise UnitarityError(f"coin is not unitary within {atol}: {m.tolist()}")
    m.flags.writeable = False
    return m


def _is_identity(u: np.ndarray) -> bool:
    return u is IDENTITY or bool(np.array_equal(u, IDENTITY))


@dataclass(frozen=True)
class CoinProgram:
    """
    Coin unitaries for every (step, walker, position), defaulting to ``default``.

    The joint coin of a step is the tensor product of the per-walker coins,
    so a program never entangles walkers by itself.

    Parameters
    ----------
    dims : int
        Number of walkers D.
    overrides : mapping
        ``(step, walker, position) -> 2x2 unitary``; ``step >= 1`` and
        ``0 <= walker < dims``.
    default : array_like
        Coin used wherever no override applies.
    """

    dims: int
    overrides: Mapping[tuple[int, int, int], np.ndarray] = field(default_factory=dict)
    default: np.ndarray = IDENTITY

    def __post_init__(self):
        if self.dims < 1:
            raise DimensionError(f"dims must be >= 1, got {self.dims}")
        checked = {}
        for key, u in self.overrides.items():
            t, d, p = (int(k) for k in key)
            if t < 1:
                raise ValueError(f"override step must be >= 1, got {key}")
            if not 0 <= d < self.dims:
                raise DimensionError(f"walker index {d} out of range for D={self.dims}")
            checked[(t, d, p)] = u if id(u) in _NAMED else check_unitary(u)
        object.__setattr__(self, "overrides", checked)
        object.__setattr__(self, "default", check_unitary(self.default))
        # Python-complex copies for the hot loop in coin_step.
        object.__setattr__(self, "_fast", {k: _as_tuple(u) for k, u in checked.items()})
        object.__setattr__(self, "_fast_default",
                           None if _is_identity(self.default) else _as_tuple(self.default))

    def coin(self, step: int, walker: int, position: int) -> np.ndarray:
        return self.overrides.get((step, walker, position), self.default)

    def keys_with(self, u) -> list[tuple[int, int, int]]:
        """Override keys whose coin equals ``u`` exactly, sorted."""
        return sorted(k for k, v in self.overrides.items() if np.array_equal(v, u))

    def without(self, key: tuple[int, int, int]) -> "CoinProgram":
        overrides = dict(self.overrides)
        del overrides[key]
        return CoinProgram(self.dims, overrides, self.default)

    def replaced(self, old, new) -> "CoinProgram":
        """Swap every override equal to ``old`` for ``new``."""
        overrides = {k: (new if np.array_equal(v, old) else v)
                     for k, v in self.overrides.items()}
        return CoinProgram(self.dims, overrides, self.default)

    def restricted(self, walkers: Iterable[int]) -> "CoinProgram":
        """Keep only overrides acting on the given walkers."""
        keep = set(walkers)
        return CoinProgram(self.dims,
                           {k: v for k, v in self.overrides.items() if k[1] in keep},
                           self.default)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoinProgram):
            return NotImplemented
        return (self.dims == other.dims
                and np.array_equal(self.default, other.default)
                and self.overrides.keys() == other.overrides.keys()
                and all(np.array_equal(v, other.overrides[k])
                        for k, v in self.overrides.items()))

    __hash__ = None


def _as_tuple(u: np.ndarray) -> tuple[complex, complex, complex, complex]:
    return (complex(u[0, 0]), complex(u[0, 1]), complex(u[1, 0]), complex(u[1, 1]))


def coin_step(s: WalkState, prog: CoinProgram, step: int) -> WalkState:
    """
    Apply the coins of ``step`` to every walker; positions are untouched.

    Raises
    ------
    StepMismatchError
        If ``step != s.step + 1``.
    """
    if step != s.step + 1:
        raise StepMismatchError(f"state is at step {s.step}; cannot apply coins of step {step}")
    if prog.dims != s.dims:
        raise DimensionError(f"program has D={prog.dims}, state has D={s.dims}")
    amps = s._amps
    fast = prog._fast
    dflt = prog._fast_default
    for d in range(s.dims):
        out: dict[BasisLabel, complex] = {}
        for label, amp in amps.items():
            positions, coins = label
            u = fast.get((step, d, positions[d]), dflt)
            if u is None:
                out[label] = out.get(label, 0j) + amp
                continue
            c = coins[d]
            # column c of u: amplitude to coin 0 is u[0][c], to coin 1 is u[1][c]
            for c_out, weight in ((0, u[c]), (1, u[2 + c])):
                if weight == 0:
                    continue
                if c_out == c:
                    key = label
                else:
                    new_coins = coins[:d] + (c_out,) + coins[d + 1:]
                    key = BasisLabel._make((positions, new_coins))
                out[key] = out.get(key, 0j) + weight * amp
        amps = {k: v for k, v in out.items() if v != 0}
    return WalkState._trusted(amps, s.step, s.dims)


def shift(s: WalkState) -> WalkState:
    """Conditional shift: each walker moves +1 on coin 0 and -1 on coin 1."""
    amps = {}
    for (positions, coins), amp in s._amps.items():
        moved = tuple(p + 1 - 2 * c for p, c in zip(positions, coins))
        amps[BasisLabel._make((moved, coins))] = amp
    return WalkState._trusted(amps, s.step, s.dims)


def step(s: WalkState, prog: CoinProgram) -> WalkState:
    """One full walk step: coins of step ``s.step + 1``, then shift."""
    moved = shift(coin_step(s, prog, s.step + 1))
    return moved.with_step(s.step + 1)


def evolve(s: WalkState, prog: CoinProgram, steps: int) -> list[WalkState]:
    """Apply ``steps`` walk steps and return the trace, starting with ``s``."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    trace = [s]
    for _ in range(steps):
        trace.append(step(trace[-1], prog))
    return trace
