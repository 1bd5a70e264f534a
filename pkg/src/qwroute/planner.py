"""
Compile perfect-transfer requests into coin programs.

For a single walker starting at the origin with an arbitrary coin
``alpha|0> + beta|1>``, a FLIP at the origin on step 1 splits the coin into a
left-moving branch (alpha) and a right-moving branch (beta). The left branch
walks ``b + 1`` sites out and turns; the right branch walks ``a + 1`` sites out
and turns. With

    a = (n + x)/2 - 1,    b = (n - x)/2 - 1

both branches meet at ``x`` on step ``n`` carrying the original coin. Three
FLIP settings per walker are needed; everything else is the identity coin.
Continuing with the mirrored schedule for another ``n`` steps returns the
walker and coin to the start.

Several walkers run independent copies of this schedule, which moves any
joint (possibly entangled) coin vector unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .engine import FLIP, CoinProgram
from .state import DimensionError

__all__ = [
    "FeasibilityError",
    "Legs",
    "RoutePlan",
    "feasible",
    "infeasibility_reason",
    "legs_for",
    "plan_1d",
    "plan_nd",
    "plan_round_trip",
    "plan_between",
    "min_steps",
    "shared_min_steps",
    "nearest_feasible_n",
]


class FeasibilityError(ValueError):
    """
    No perfect-transfer plan exists for the request.

    Attributes
    ----------
    constraint : str
        ``"budget"`` (n < 2), ``"range"`` (|x| > n - 2) or ``"parity"``
        (n - x odd).
    coordinate : int or None
        Index of the first offending walker for multi-walker requests.
    """

    def __init__(self, message: str, constraint: str, coordinate: int | None = None):
        super().__init__(message)
        self.constraint = constraint
        self.coordinate = coordinate


class Legs(NamedTuple):
    """Straight run before (``a``) and after (``b``) the right branch turns."""

    a: int
    b: int


def infeasibility_reason(n: int, x: int) -> str | None:
    """Name of the first violated constraint for (n, x), or None if feasible."""
    if (n - x) % 2:
        return "parity"
    if n < 2:
        return "budget"
    if abs(x) > n - 2:
        return "range"
    return None


def feasible(n: int, x: int) -> bool:
    """True iff n >= 2, |x| <= n - 2 and n - x is even."""
    return infeasibility_reason(n, x) is None


_REASON_TEXT = {
    "budget": "step budget n={n} is below the minimum of 2",
    "range": "offset {x} is out of range: |x| must be <= n - 2 = {m}",
    "parity": "parity: n - x = {d} is odd, so offset {x} is unreachable in {n} steps",
}


def _raise_infeasible(n: int, x: int, coordinate: int | None = None):
    reason = infeasibility_reason(n, x)
    if reason is None:
        return
    msg = _REASON_TEXT[reason].format(n=n, x=x, m=n - 2, d=n - x)
    if coordinate is not None:
        msg = f"walker {coordinate}: {msg}"
    raise FeasibilityError(msg, reason, coordinate)


def legs_for(n: int, x: int) -> Legs:
    _raise_infeasible(n, x)
    return Legs((n + x) // 2 - 1, (n - x) // 2 - 1)


def min_steps(x: int) -> int:
    """Smallest feasible budget for offset ``x``."""
    return 2 if x == 0 else abs(x) + 2


def shared_min_steps(offsets: Sequence[int]) -> int:
    """
    Smallest single budget that is feasible for every walker offset.

    Starts at ``max(|x_d|) + 2`` and moves up while a parity constraint fails.

    Raises
    ------
    FeasibilityError
        If the offsets have mixed parity, so no shared budget exists.
    """
    offsets = [int(x) for x in offsets]
    base = max(min_steps(x) for x in offsets)
    limit = max(abs(x) for x in offsets) + 4
    for n in range(base, limit + 1):
        if all(feasible(n, x) for x in offsets):
            return n
    raise FeasibilityError(
        f"parity: offsets {offsets} have mixed parity; no shared step budget exists",
        "parity",
    )


def nearest_feasible_n(offsets: Sequence[int], n: int) -> int | None:
    """Feasible budget closest to ``n`` (ties go up), or None for mixed parity."""
    try:
        lo = shared_min_steps(offsets)
    except FeasibilityError:
        return None
    if n <= lo:
        return lo
    # feasible budgets are lo, lo + 2, lo + 4, ...
    below = lo + 2 * ((n - lo) // 2)
    return below if below == n else below + 2


@dataclass(frozen=True)
class RoutePlan:
    """
    A compiled transfer from ``source`` to ``target`` in ``n`` steps.

    Round trips run for ``2 n`` steps and end back at ``source``.

    Attributes
    ----------
    n : int
        One-way step budget.
    source, target : tuple of int
        Start and end site of every walker.
    legs : tuple of Legs
        Per-walker leg lengths for offset ``target - source``.
    program : CoinProgram
        FLIP at every entry of ``special_flips``, identity elsewhere.
    special_flips : tuple of (step, walker, position)
    round_trip : bool
    """

    n: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    legs: tuple[Legs, ...]
    program: CoinProgram
    special_flips: tuple[tuple[int, int, int], ...]
    round_trip: bool = False

    @property
    def dims(self) -> int:
        return len(self.source)

    @property
    def total_steps(self) -> int:
        return 2 * self.n if self.round_trip else self.n

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(t - s for s, t in zip(self.source, self.target))

    @property
    def final_positions(self) -> tuple[int, ...]:
        return self.source if self.round_trip else self.target

    def flips_per_walker(self) -> list[int]:
        counts = [0] * self.dims
        for _, d, _ in self.special_flips:
            counts[d] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "source": list(self.source),
            "target": list(self.target),
            "legs": [{"a": lg.a, "b": lg.b} for lg in self.legs],
            "flips": [list(f) for f in self.special_flips],
            "round_trip": self.round_trip,
        }


def _one_way_flips(walker: int, legs: Legs, origin: int = 0) -> list[tuple[int, int, int]]:
    a, b = legs
    return [
        (1, walker, origin),
        (b + 2, walker, origin - (b + 1)),
        (a + 2, walker, origin + a + 1),
    ]


def _return_flips(walker: int, n: int, legs: Legs, x: int,
                  origin: int = 0) -> list[tuple[int, int, int]]:
    # same turnaround sites as the outbound half, visited by the other branch
    a, b = legs
    return [
        (n + 1, walker, origin + x),
        (n + b + 2, walker, origin + a + 1),
        (n + a + 2, walker, origin - (b + 1)),
    ]


def _build(n: int, source: Sequence[int], target: Sequence[int],
           round_trip: bool) -> RoutePlan:
    source = tuple(int(s) for s in source)
    target = tuple(int(t) for t in target)
    if len(source) != len(target) or not source:
        raise DimensionError(f"source {source} and target {target} must have equal length >= 1")
    offsets = [t - s for s, t in zip(source, target)]
    for d, x in enumerate(offsets):
        _raise_infeasible(n, x, coordinate=d if len(offsets) > 1 else None)
    legs = tuple(legs_for(n, x) for x in offsets)
    flips: list[tuple[int, int, int]] = []
    for d, (lg, x) in enumerate(zip(legs, offsets)):
        flips += _one_way_flips(d, lg, source[d])
        if round_trip:
            flips += _return_flips(d, n, lg, x, source[d])
    program = CoinProgram(len(source), {f: FLIP for f in flips})
    return RoutePlan(n, source, target, legs, program, tuple(flips), round_trip)


def plan_1d(n: int, x: int) -> RoutePlan:
    """One walker, origin to ``x`` in ``n`` steps."""
    return _build(n, [0], [x], round_trip=False)


def plan_nd(n: int, target: Sequence[int]) -> RoutePlan:
    """D walkers from the origin to ``target``; 3 FLIPs per walker."""
    return _build(n, [0] * len(target), target, round_trip=False)


def plan_round_trip(n: int, target: Sequence[int]) -> RoutePlan:
    """Out to ``target`` in ``n`` steps and back to the origin by step ``2 n``."""
    return _build(n, [0] * len(target), target, round_trip=True)


def plan_between(source: Sequence[int], target: Sequence[int], n: int,
                 round_trip: bool = False) -> RoutePlan:
    """Transfer between arbitrary sites: the origin plan translated by ``source``."""
    return _build(n, source, target, round_trip=round_trip)
