"""The FES algorithm: place every pile of nimber k before moving on to k + 1.

Iteration k puts k on the smallest undecided pile n, then walks x in X in
increasing order and puts k on n + x when that pile is undecided and every
pile already holding k this iteration differs from it by an element of X
(so none of them is reachable from it).  Only membership in X is ever
consulted; no mex is taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from allbut.model import FesSet, NimSequence, check_cap, validate_fes


@dataclass(frozen=True)
class PlacementRecord:
    k: int
    positions: tuple[int, ...]

    @property
    def offsets(self) -> tuple[int, ...]:
        base = self.positions[0]
        return tuple(p - base for p in self.positions)


@dataclass
class FesState:
    """Decided piles after ``k_done`` iterations.

    ``prefix`` holds the contiguous run of decided piles starting at 0, so
    its length is the frontier (smallest undecided pile).  ``ahead`` holds
    the piles decided beyond the frontier; there are never more than max(X)
    of them.
    """

    prefix: list[int] = field(default_factory=list)
    ahead: dict[int, int] = field(default_factory=dict)
    k_done: int = 0

    @property
    def frontier(self) -> int:
        return len(self.prefix)

    def value(self, pile: int) -> int | None:
        if pile < len(self.prefix):
            return self.prefix[pile]
        return self.ahead.get(pile)

    def assigned(self) -> dict[int, int]:
        out = dict(enumerate(self.prefix))
        out.update(self.ahead)
        return out

    def copy(self) -> FesState:
        return FesState(list(self.prefix), dict(self.ahead), self.k_done)


def fes_iteration(state: FesState, x: FesSet) -> tuple[FesState, PlacementRecord]:
    """Run iteration ``state.k_done`` in place and return the state with its record."""
    k = state.k_done
    n = state.frontier
    placed = [n]
    for d in x.elements:
        target = n + d
        if target in state.ahead:
            continue
        if all((target - m) in x for m in placed):
            placed.append(target)

    state.prefix.append(k)
    for p in placed[1:]:
        state.ahead[p] = k
    while state.frontier in state.ahead:
        state.prefix.append(state.ahead.pop(state.frontier))
    state.k_done = k + 1
    return state, PlacementRecord(k, tuple(placed))


def fes_run(x: FesSet | Iterable[int], iterations: int) -> tuple[FesState, list[PlacementRecord]]:
    x = validate_fes(x)
    state = FesState()
    records = []
    for _ in range(iterations):
        check_cap(state.frontier + x.width + 1, "FES state")
        _, rec = fes_iteration(state, x)
        records.append(rec)
    return state, records


def fes_prefix(x: FesSet | Iterable[int], k_max: int) -> tuple[NimSequence, list[PlacementRecord]]:
    """Iterations 0..k_max; returns the certain prefix [0, frontier) and every record.

    Values decided past the first undecided pile are left out of the
    sequence (see ``FesState.ahead``) so the result never has holes.
    """
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    state, records = fes_run(x, k_max + 1)
    return NimSequence(state.prefix, "fes"), records


def fes_grundy_prefix(x: FesSet | Iterable[int], n_max: int) -> NimSequence:
    """G(0..n_max) computed by FES iterations until pile n_max is settled."""
    x = validate_fes(x)
    check_cap(n_max + 1)
    state = FesState()
    while state.frontier <= n_max:
        fes_iteration(state, x)
    return NimSequence(state.prefix[: n_max + 1], "fes")
