"""Following an integer to its limit.

Every trajectory of the reflect-and-add map either reaches 0 or falls into a
cycle. A run keeps a map from value to index, so the first repeated value
gives the tail length and the period directly (a rho decomposition).

Cycles are named by their *canonical* member: the smallest magnitude found on
the cycle. Most cycles are closed under negation, so this is just their
smallest positive member. The 14-member families are not: ``C`` and ``-C`` are
two distinct cycles with the same magnitudes. Both are reported under one
canonical, and ``mirrored`` records that the trajectory entered ``-C``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .digits import _check, step

DEFAULT_MAX_STEPS = 10**6


class StepBudgetExceeded(RuntimeError):
    def __init__(self, value: int, max_steps: int):
        super().__init__(f"{value}: no zero or repeat within {max_steps} steps")
        self.value = value
        self.max_steps = max_steps


class NotOnCycle(ValueError):
    pass


class Limit(enum.Enum):
    ZERO = "zero"
    CYCLE = "cycle"


@dataclass(frozen=True)
class TerminalKind:
    kind: Limit
    cycle_canonical: int | None = None
    period: int | None = None
    mirrored: bool = False

    @property
    def label(self) -> str:
        if self.kind is Limit.ZERO:
            return "zero"
        return f"cycle-{self.cycle_canonical}"

    @property
    def entry_member(self) -> int:
        """The member of the entered cycle whose magnitude is the canonical."""
        if self.kind is Limit.ZERO:
            return 0
        return -self.cycle_canonical if self.mirrored else self.cycle_canonical


ZERO = TerminalKind(Limit.ZERO)


@dataclass(frozen=True)
class Trajectory:
    start: int
    iterates: tuple[int, ...]
    tail_length: int
    terminal: TerminalKind


@dataclass(frozen=True)
class Classification:
    input: int
    limit: TerminalKind
    iterations: int


def _oriented_canonical(cycle) -> int:
    # smallest magnitude; the positive one when both signs are present
    return min(cycle, key=lambda v: (abs(v), v < 0))


def _terminal(cycle: list[int]) -> TerminalKind:
    c = _oriented_canonical(cycle)
    return TerminalKind(Limit.CYCLE, abs(c), len(cycle), c < 0)


def run_sequence(start: int, max_steps: int = DEFAULT_MAX_STEPS) -> Trajectory:
    """Iterate from ``start`` until 0 or a repeated value.

    ``iterates`` holds u_1, u_2, ... and ends at the 0 or at the first member
    of the terminal cycle. ``tail_length`` is the number of listed iterates
    (0 only for ``start == 0``).

    >>> run_sequence(571).iterates
    (396, -297, 495, -99, 0)
    """
    _check(start)
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    if start == 0:
        return Trajectory(0, (0,), 0, ZERO)
    values = [start]
    seen = {start: 0}
    u = start
    for k in range(1, max_steps + 1):
        u = step(u)
        if u == 0:
            values.append(0)
            return Trajectory(start, tuple(values[1:]), k, ZERO)
        j = seen.get(u)
        if j is not None:
            first = max(j, 1)
            return Trajectory(start, tuple(values[1:first + 1]), first, _terminal(values[j:]))
        seen[u] = k
        values.append(u)
    raise StepBudgetExceeded(start, max_steps)


def classify(start: int, max_steps: int = DEFAULT_MAX_STEPS) -> Classification:
    if start == 0:
        return Classification(0, ZERO, 0)
    t = run_sequence(start, max_steps)
    return Classification(start, t.terminal, t.tail_length)


def cycle_members(seed: int, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[int, ...]:
    """All values on the cycle through ``seed``, in iteration order.

    The tuple starts at the member of smallest magnitude (positive on a tie),
    so ``cycle_members(2178) == (2178, -6534, -2178, 6534)``.
    """
    _check(seed)
    if seed == 0:
        return (0,)
    cycle = [seed]
    seen = {seed}
    u = step(seed)
    while u != seed:
        if len(cycle) >= max_steps or u == 0 or u in seen:
            raise NotOnCycle(f"{seed} does not return to itself")
        cycle.append(u)
        seen.add(u)
        u = step(u)
    i = cycle.index(_oriented_canonical(cycle))
    return tuple(cycle[i:] + cycle[:i])


def on_cycle(x: int, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    try:
        cycle_members(x, max_steps)
    except NotOnCycle:
        return False
    return True
