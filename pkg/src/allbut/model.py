"""Domain types shared by every engine, plus Sprague-Grundy sum helpers."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import reduce
from operator import xor
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

CAP_ENV = "ALLBUT_PILE_CAP"
DEFAULT_PILE_CAP = 10**8

_cap_override: int | None = None


class InvalidFesSet(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """A requested prefix or search exceeds the configured pile cap."""


def pile_cap() -> int:
    """Current hard cap on sequence lengths (flag override, then env, then default)."""
    if _cap_override is not None:
        return _cap_override
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_PILE_CAP


def set_pile_cap(cap: int | None) -> None:
    global _cap_override
    if cap is not None and cap < 1:
        raise ValueError(f"pile cap must be positive, got {cap}")
    _cap_override = cap


def check_cap(n: int, what: str = "prefix") -> None:
    cap = pile_cap()
    if n > cap:
        raise ResourceCapError(f"{what} of {n} piles exceeds the cap of {cap}")


@dataclass(frozen=True)
class FesSet:
    """A finite excluded subtraction set, stored sorted and duplicate free.

    Build one through :func:`validate_fes` rather than directly.
    """

    elements: tuple[int, ...] = ()
    _members: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def max_x(self) -> int:
        return self.elements[-1] if self.elements else 0

    @property
    def width(self) -> int:
        return self.max_x

    def __contains__(self, x: object) -> bool:
        return x in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.elements)) + "}"

    def scaled(self, factor: int) -> FesSet:
        return FesSet(tuple(factor * x for x in self.elements))


def validate_fes(raw: Iterable[int] | FesSet) -> FesSet:
    if isinstance(raw, FesSet):
        return raw
    items = [int(x) for x in raw]
    bad = [x for x in items if x < 1]
    if bad:
        raise InvalidFesSet(f"excluded amounts must be positive, got {bad[0]}")
    if len(set(items)) != len(items):
        dup = next(x for x in items if items.count(x) > 1)
        raise InvalidFesSet(f"duplicate excluded amount {dup}")
    return FesSet(tuple(sorted(items)))


def parse_fes(text: str) -> FesSet:
    """Parse ``"2,3,6,8"`` (braces and spaces tolerated; empty string is the empty set)."""
    text = text.strip().strip("{}").strip()
    if not text:
        return FesSet()
    try:
        return validate_fes(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        if isinstance(exc, InvalidFesSet):
            raise
        raise InvalidFesSet(f"cannot parse excluded set {text!r}") from exc


class NimSequence:
    """Grundy values G(0), G(1), ... of one game, as a read-only int64 array."""

    __slots__ = ("values", "source")

    def __init__(self, values: Sequence[int] | np.ndarray, source: str) -> None:
        arr = np.array(values, dtype=np.int64)
        arr.setflags(write=False)
        self.values = arr
        self.source = source

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.values[n]
        return int(self.values[n])

    def __iter__(self) -> Iterator[int]:
        return (int(v) for v in self.values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NimSequence):
            return np.array_equal(self.values, other.values)
        return NotImplemented

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.values[:12])
        more = ", ..." if len(self) > 12 else ""
        return f"NimSequence([{head}{more}], n={len(self)}, source={self.source!r})"

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]


class PeriodStatus(str, enum.Enum):
    PROVED = "proved-by-automaton"
    VERIFIED = "verified-on-prefix"
    CANDIDATE = "candidate"


@dataclass(frozen=True)
class ArithmeticPeriod:
    """G(n + period) == G(n) + saltus for every n >= preperiod."""

    preperiod: int
    period: int
    saltus: int
    status: PeriodStatus = PeriodStatus.CANDIDATE

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")
        if self.preperiod < 0 or self.saltus < 0:
            raise ValueError("preperiod and saltus must be non-negative")

    @property
    def pure(self) -> bool:
        return self.preperiod == 0

    def triple(self) -> tuple[int, int, int]:
        return (self.preperiod, self.period, self.saltus)


class Move(NamedTuple):
    heap: int
    take: int


def _nimber_of(seq: NimSequence, heap: int) -> int:
    if heap < 0 or heap >= len(seq):
        raise IndexError(f"heap size {heap} outside computed range 0..{len(seq) - 1}")
    return seq[heap]


def sum_nimber(heaps: Iterable[int], seq: NimSequence) -> int:
    """Nimber of a disjunctive sum of heaps: XOR of the heap nimbers."""
    return reduce(xor, (_nimber_of(seq, h) for h in heaps), 0)


def optimal_move(heaps: Sequence[int], seq: NimSequence, x: FesSet) -> Move | None:
    """A move to a position of nimber 0, or None if the position is already lost.

    The first heap that can be reduced wins the tie; within it the smallest
    legal removal is chosen.
    """
    total = sum_nimber(heaps, seq)
    if total == 0:
        return None
    for i, h in enumerate(heaps):
        target = seq[h] ^ total
        if target >= seq[h]:
            continue
        for take in range(1, h + 1):
            if take not in x and seq[h - take] == target:
                return Move(i, take)
        raise AssertionError(f"heap {h} has nimber {seq[h]} but no option of nimber {target}")
    raise AssertionError("nonzero sum without a reducible heap")
