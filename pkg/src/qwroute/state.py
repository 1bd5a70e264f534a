"""
Sparse walker+coin states on the integer lattice.

A state of D walkers is a map from basis labels (one position and one coin
bit per walker) to complex amplitudes. Coin bit 0 moves its walker in the
positive direction, coin bit 1 in the negative direction.

Coin vectors over the joint coin space are indexed by the concatenated coin
bits with walker 0 as the most significant bit, so for two walkers the index
of |c0 c1> is ``2*c0 + c1``. This ordering is used everywhere in the package.
"""

from __future__ import annotations

from collections import namedtuple
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "NORM_ATOL",
    "DimensionError",
    "NormalizationError",
    "BasisLabel",
    "WalkState",
    "coin_vector",
    "coin_bits",
    "coin_index",
    "random_coin_vector",
    "make_product_state",
    "inner_product",
    "translate",
]

NORM_ATOL = 1e-12


class DimensionError(ValueError):
    """Walker counts or vector lengths do not agree."""


class NormalizationError(ValueError):
    """A coin vector or state is not unit norm."""


class BasisLabel(namedtuple("BasisLabel", ["positions", "coins"])):
    """
    One lattice configuration: a position and a coin bit per walker.

    Parameters
    ----------
    positions : sequence of int
        Signed lattice sites, one per walker.
    coins : sequence of int
        Coin bits, one per walker, each 0 or 1.
    """

    __slots__ = ()

    def __new__(cls, positions: Iterable[int], coins: Iterable[int]):
        positions = tuple(int(p) for p in positions)
        coins = tuple(int(c) for c in coins)
        if len(positions) == 0 or len(positions) != len(coins):
            raise DimensionError(
                f"label needs D >= 1 positions and D coins, got "
                f"{len(positions)} and {len(coins)}"
            )
        if any(c not in (0, 1) for c in coins):
            raise ValueError(f"coin bits must be 0 or 1, got {coins}")
        return super().__new__(cls, positions, coins)

    @property
    def dims(self) -> int:
        return len(self.positions)

    @property
    def coin_index(self) -> int:
        return coin_index(self.coins)

    def __repr__(self) -> str:
        pos = ",".join(str(p) for p in self.positions)
        bits = "".join(str(c) for c in self.coins)
        return f"|{pos}>|{bits}>"


def coin_index(bits: Sequence[int]) -> int:
    """Walker-major index of a tuple of coin bits."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def coin_bits(index: int, dims: int) -> tuple[int, ...]:
    """Inverse of :func:`coin_index` for ``dims`` walkers."""
    if not 0 <= index < 2**dims:
        raise DimensionError(f"coin index {index} out of range for D={dims}")
    return tuple((index >> (dims - 1 - d)) & 1 for d in range(dims))


def coin_vector(entries: Sequence[complex], atol: float = NORM_ATOL) -> np.ndarray:
    """
    Validate and return a joint coin vector as a complex array.

    Parameters
    ----------
    entries : sequence of complex
        ``2**D`` amplitudes in walker-major order.
    atol : float
        Allowed deviation of the squared norm from one.

    Raises
    ------
    DimensionError
        If the length is not a positive power of two.
    NormalizationError
        If the vector is not unit norm within ``atol``.
    """
    vec = np.asarray(entries, dtype=np.complex128).reshape(-1)
    n = vec.size
    if n < 2 or n & (n - 1):
        raise DimensionError(f"coin vector length must be 2**D with D >= 1, got {n}")
    norm2 = float(np.vdot(vec, vec).real)
    if abs(norm2 - 1.0) > atol:
        raise NormalizationError(f"coin vector has squared norm {norm2!r}, expected 1")
    return vec


def random_coin_vector(dims: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit coin vector for ``dims`` walkers."""
    size = 2**dims
    vec = rng.normal(size=size) + 1j * rng.normal(size=size)
    return vec / np.linalg.norm(vec)


class WalkState:
    """
    Immutable sparse state of D walkers with their coins.

    Only exact zeros are dropped from the amplitude map; nothing is pruned by
    magnitude, so any loss of norm stays visible.

    Parameters
    ----------
    amplitudes : mapping
        ``BasisLabel -> complex``.
    step : int
        Number of walk steps already applied.
    dims : int
        Number of walkers D.
    """

    __slots__ = ("_amps", "_step", "_dims")

    def __init__(self, amplitudes: Mapping[BasisLabel, complex], step: int = 0,
                 dims: int | None = None):
        amps: dict[BasisLabel, complex] = {}
        for label, amp in amplitudes.items():
            if not isinstance(label, BasisLabel):
                label = BasisLabel(*label)
            amp = complex(amp)
            if amp != 0:
                amps[label] = amp
        if dims is None:
            if not amps:
                raise DimensionError("dims is required for an empty state")
            dims = next(iter(amps)).dims
        if any(label.dims != dims for label in amps):
            raise DimensionError(f"all labels must have D={dims}")
        if step < 0:
            raise ValueError(f"step must be nonnegative, got {step}")
        self._amps = amps
        self._step = int(step)
        self._dims = int(dims)

    @classmethod
    def _trusted(cls, amps: dict, step: int, dims: int) -> "WalkState":
        # Engine fast path: caller guarantees valid labels and no zeros.
        obj = cls.__new__(cls)
        obj._amps = amps
        obj._step = step
        obj._dims = dims
        return obj

    @property
    def step(self) -> int:
        return self._step

    @property
    def dims(self) -> int:
        return self._dims

    @property
    def amplitudes(self) -> Mapping[BasisLabel, complex]:
        return dict(self._amps)

    def amplitude(self, label: BasisLabel) -> complex:
        return self._amps.get(label, 0j)

    def items(self) -> Iterator[tuple[BasisLabel, complex]]:
        return iter(self._amps.items())

    def support(self) -> set[BasisLabel]:
        return set(self._amps)

    def positions(self) -> set[tuple[int, ...]]:
        return {label.positions for label in self._amps}

    def __len__(self) -> int:
        return len(self._amps)

    def __contains__(self, label) -> bool:
        return label in self._amps

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self._amps.values()))

    def position_distribution(self) -> dict[tuple[int, ...], float]:
        """Probability of each walker configuration, coins traced out."""
        dist: dict[tuple[int, ...], float] = {}
        for label, amp in self._amps.items():
            dist[label.positions] = dist.get(label.positions, 0.0) + abs(amp) ** 2
        return dict(sorted(dist.items()))

    def with_step(self, step: int) -> "WalkState":
        return WalkState._trusted(self._amps, int(step), self._dims)

    def max_deviation(self, other: "WalkState") -> float:
        """Largest amplitude difference over the union of both supports."""
        if other.dims != self.dims:
            raise DimensionError(f"D={self.dims} vs D={other.dims}")
        labels = self._amps.keys() | other._amps.keys()
        return max((abs(self.amplitude(k) - other.amplitude(k)) for k in labels),
                   default=0.0)

    def sorted_items(self) -> list[tuple[BasisLabel, complex]]:
        return sorted(self._amps.items(), key=lambda kv: (kv[0].positions, kv[0].coins))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalkState):
            return NotImplemented
        return (self._dims == other._dims and self._step == other._step
                and self._amps == other._amps)

    def __hash__(self):
        return hash((self._dims, self._step, frozenset(self._amps.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"({a:.6g}){lab!r}" for lab, a in self.sorted_items())
        return f"WalkState(step={self._step}, {terms or '0'})"


def make_product_state(positions: Sequence[int], coin: Sequence[complex]) -> WalkState:
    """
    Place a joint coin vector on a single lattice site.

    Parameters
    ----------
    positions : sequence of int
        Starting site of each of the D walkers.
    coin : sequence of complex
        Unit vector of length ``2**D`` in walker-major order.

    Returns
    -------
    WalkState
        State at step 0 with amplitude ``coin[c]`` on ``(positions, bits(c))``.
    """
    vec = coin_vector(coin)
    dims = len(positions)
    if vec.size != 2**dims:
        raise DimensionError(
            f"{dims} walker(s) need a coin vector of length {2**dims}, got {vec.size}"
        )
    amps = {BasisLabel(positions, coin_bits(c, dims)): vec[c] for c in range(vec.size)}
    return WalkState(amps, step=0, dims=dims)


def inner_product(a: WalkState, b: WalkState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.dims != b.dims:
        raise DimensionError(f"D={a.dims} vs D={b.dims}")
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0j
    for label in small._amps:
        if label in large._amps:
            total += a._amps[label].conjugate() * b._amps[label]
    return total


def translate(s: WalkState, offset: Sequence[int]) -> WalkState:
    """Shift every walker position by ``offset``; amplitudes and step are kept."""
    offset = tuple(int(o) for o in offset)
    if len(offset) != s.dims:
        raise DimensionError(f"offset has length {len(offset)}, state has D={s.dims}")
    amps = {
        BasisLabel._make((tuple(p + o for p, o in zip(lab.positions, offset)), lab.coins)): a
        for lab, a in s._amps.items()
    }
    return WalkState._trusted(amps, s.step, s.dims)
