"""Boundary patterns of H_k and the cycle detection built on them.

H_k marks a pile with a star when its nimber is below k.  Everything
before the first blank is a star and everything at or past that blank plus
max(X) is blank, so the max(X)-wide window starting at the first blank
(the *anchor*) says all there is to know about H_k.  One FES iteration maps
the window of H_k to the window of H_(k+1) without looking at absolute
positions, so the windows form a deterministic walk on a finite set and
must cycle.  A repeat between iterations k1 < k2 with anchors A1 < A2 gives
G(n + A2 - A1) = G(n) + k2 - k1 for all n >= A1 + max(X).

Windows are packed into ints: bit i is set when the cell at anchor + i is a
star.  Bit 0 is always clear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from allbut.fes import FesState, fes_grundy_prefix, fes_iteration
from allbut.model import (
    ArithmeticPeriod,
    FesSet,
    NimSequence,
    PeriodStatus,
    validate_fes,
)
from allbut.naive import grundy_prefix

STAR = "*"
BLANK = "."


class EmptyFesError(ValueError):
    """Boundary machinery needs max(X) >= 1."""


class NoCycleError(RuntimeError):
    def __init__(self, message: str, trajectory: list[TrajectoryStep]):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass(frozen=True)
class BoundaryPattern:
    cells: int
    width: int
    anchor: int = 0
    k: int = 0

    def __post_init__(self) -> None:
        if self.cells & 1:
            raise ValueError("the anchor cell of a boundary pattern must be blank")
        if self.cells >> self.width:
            raise ValueError("pattern has stars outside its window")

    def is_star(self, offset: int) -> bool:
        return bool(self.cells >> offset & 1)

    def __str__(self) -> str:
        return render_cells(self.cells, self.width)

    def dump_line(self) -> str:
        return f"{self} {self.anchor} {self.k}"


def render_cells(cells: int, width: int) -> str:
    return "".join(STAR if cells >> i & 1 else BLANK for i in range(width))


def parse_cells(text: str) -> int:
    bad = set(text) - {STAR, BLANK}
    if bad:
        raise ValueError(f"unexpected pattern characters {sorted(bad)}")
    return sum(1 << i for i, ch in enumerate(text) if ch == STAR)


def parse_dump_line(line: str) -> BoundaryPattern:
    cells, anchor, k = line.split()
    return BoundaryPattern(parse_cells(cells), len(cells), int(anchor), int(k))


def _require_width(x: FesSet) -> int:
    if x.width == 0:
        raise EmptyFesError("boundary patterns need a non-empty excluded set")
    return x.width


def step_cells(cells: int, x: FesSet) -> tuple[int, int, tuple[int, ...]]:
    """One FES iteration on a window; returns (next cells, anchor advance, placement offsets).

    Offsets are relative to the old anchor.  Cells past the window (only
    offset max(X) can be reached) are blank.
    """
    w = x.width
    placed = [0]
    for d in x.elements:
        if d < w and cells >> d & 1:
            continue
        if all((d - o) in x for o in placed):
            placed.append(d)
    filled = cells
    for o in placed:
        filled |= 1 << o
    delta = (~filled & (filled + 1)).bit_length() - 1
    nxt = filled >> delta
    assert nxt >> w == 0, "a star escaped the window; frontier lemma violated"
    return nxt, delta, tuple(placed)


def boundary_step(x: FesSet | Iterable[int], pattern: BoundaryPattern) -> tuple[BoundaryPattern, int]:
    x = validate_fes(x)
    _require_width(x)
    nxt, delta, _ = step_cells(pattern.cells, x)
    return BoundaryPattern(nxt, pattern.width, pattern.anchor + delta, pattern.k + 1), delta


def pattern_of(x: FesSet | Iterable[int], k: int, state: FesState) -> BoundaryPattern:
    """Window of H_k read off an FES state that has finished iterations 0..k-1."""
    x = validate_fes(x)
    w = _require_width(x)
    if state.k_done != k:
        raise ValueError(f"state has completed {state.k_done} iterations, expected {k}")
    anchor = state.frontier
    cells = 0
    for pile in state.ahead:
        off = pile - anchor
        if off >= w:
            raise AssertionError(f"pile {pile} decided beyond anchor {anchor} + max(X)")
        cells |= 1 << off
    return BoundaryPattern(cells, w, anchor, k)


def fes_patterns(x: FesSet | Iterable[int], k_last: int) -> list[BoundaryPattern]:
    """pattern_of for k = 0..k_last, from a single FES run."""
    x = validate_fes(x)
    state = FesState()
    out = []
    for k in range(k_last + 1):
        out.append(pattern_of(x, k, state))
        fes_iteration(state, x)
    return out


@dataclass(frozen=True)
class TrajectoryStep:
    k: int
    anchor: int
    cells: int
    placed: tuple[int, ...]  # offsets (from anchor) receiving nimber k


def trajectory(x: FesSet | Iterable[int]) -> Iterator[TrajectoryStep]:
    """Endless walk of boundary windows from the all-blank start."""
    x = validate_fes(x)
    _require_width(x)
    cells, anchor, k = 0, 0, 0
    while True:
        nxt, delta, placed = step_cells(cells, x)
        yield TrajectoryStep(k, anchor, cells, placed)
        cells, anchor, k = nxt, anchor + delta, k + 1


@dataclass(frozen=True)
class CycleReport:
    x: FesSet
    k_start: int
    k_repeat: int
    anchor_start: int
    anchor_repeat: int
    cells: int
    steps: tuple[TrajectoryStep, ...] = field(repr=False)

    @property
    def period(self) -> int:
        return self.anchor_repeat - self.anchor_start

    @property
    def saltus(self) -> int:
        return self.k_repeat - self.k_start

    @property
    def sound_preperiod(self) -> int:
        return self.anchor_start + self.x.width

    @property
    def arithmetic_period(self) -> ArithmeticPeriod:
        return ArithmeticPeriod(self.sound_preperiod, self.period, self.saltus, PeriodStatus.PROVED)

    def dump(self) -> str:
        w = self.x.width
        lines = [BoundaryPattern(s.cells, w, s.anchor, s.k).dump_line() for s in self.steps]
        lines.append(BoundaryPattern(self.cells, w, self.anchor_repeat, self.k_repeat).dump_line())
        return "\n".join(lines) + "\n"


def default_k_limit(x: FesSet) -> int:
    return 2 ** (x.width - 1) + 1


def detect_period(x: FesSet | Iterable[int], k_limit: int | None = None) -> CycleReport:
    """Walk boundary windows until one repeats.

    The default limit is the pigeonhole bound on distinct windows, so hitting
    it means a caller-imposed lower limit.
    """
    x = validate_fes(x)
    _require_width(x)
    if k_limit is None:
        k_limit = default_k_limit(x)
    seen: dict[int, int] = {}
    steps: list[TrajectoryStep] = []
    for st in trajectory(x):
        first = seen.get(st.cells)
        if first is not None:
            origin = steps[first]
            return CycleReport(x, origin.k, st.k, origin.anchor, st.anchor, st.cells, tuple(steps))
        if st.k >= k_limit:
            raise NoCycleError(f"no repeated boundary pattern within {k_limit} iterations", steps)
        seen[st.cells] = st.k
        steps.append(st)
    raise AssertionError("unreachable")


def tighten_preperiod(x: FesSet | Iterable[int], report: CycleReport, seq: NimSequence) -> ArithmeticPeriod:
    """Lower the proved preperiod to the least n0 the concrete sequence allows."""
    x = validate_fes(x)
    p, s = report.period, report.saltus
    need = report.anchor_repeat + x.width + p + 1
    if len(seq) < need:
        raise ValueError(f"sequence has {len(seq)} values, tightening needs {need}")
    g = seq.values
    n0 = report.sound_preperiod
    for n in range(n0, report.anchor_repeat + x.width + 1):
        if g[n + p] != g[n] + s:
            raise AssertionError(f"automaton claim fails at n={n} for X={x}")
    while n0 > 0 and g[n0 - 1 + p] == g[n0 - 1] + s:
        n0 -= 1
    return ArithmeticPeriod(n0, p, s, PeriodStatus.PROVED)


def tighten_length(report: CycleReport) -> int:
    """Smallest sequence length that tighten_preperiod accepts."""
    return report.anchor_repeat + report.x.width + report.period + 1


def arithmetic_period(x: FesSet | Iterable[int], engine: str = "naive") -> ArithmeticPeriod:
    """Minimal (n0, p, s) of G_X: cycle detection followed by tightening."""
    x = validate_fes(x)
    if x.width == 0:
        return ArithmeticPeriod(0, 1, 1, PeriodStatus.VERIFIED)
    report = detect_period(x)
    compute = grundy_prefix if engine == "naive" else fes_grundy_prefix
    seq = compute(x, tighten_length(report) - 1)
    return tighten_preperiod(x, report, seq)


# -- reconstruction for X = {a, b, a+b} -------------------------------------------


def triple_parts(x: FesSet) -> tuple[int, int]:
    """(a, b) when X = {a, b, a+b} with a < b and b != 2a; raise otherwise."""
    if len(x) != 3:
        raise ValueError(f"{x} does not have three elements")
    a, b, c = x.elements
    if c != a + b or b == 2 * a:
        raise ValueError(f"{x} is not of the form {{a, b, a+b}} with b != 2a")
    return a, b


def reconstruct_previous(cells: int, x: FesSet) -> tuple[int, int, tuple[int, ...]]:
    """Recover H_(k-1)'s window from H_k's when X = {a, b, a+b}.

    Returns (previous cells, how far the anchor moved back, offsets of the
    three piles holding k-1 relative to the previous anchor).  The last star
    is the third occurrence of k-1 at n+a+b; of n+a and n+b, the starred one
    held k-1, and when both are starred it was n+b.
    """
    a, b = triple_parts(x)
    w = a + b

    def star(rel: int) -> bool:
        return rel < 0 or bool(cells >> rel & 1)

    top = cells.bit_length() - 1  # -1 when the window is all blank: last star is anchor-1
    n = top - w
    if not star(n):
        raise ValueError("window is not reachable: first occurrence is not starred")
    if star(n + b):
        middle = n + b
    elif star(n + a):
        middle = n + a
    else:
        raise ValueError("window is not reachable: no second occurrence")
    removed = {n, middle, top}
    prev = 0
    for j in range(w):
        pos = n + j
        if pos not in removed and star(pos):
            prev |= 1 << j
    return prev, -n, (0, middle - n, w)


@dataclass
class Census:
    x: FesSet
    indegree: dict[int, int]
    cycle_length: int
    reconstruct_failures: list[int]

    @property
    def all_indegree_one(self) -> bool:
        return all(v == 1 for v in self.indegree.values())

    @property
    def ok(self) -> bool:
        return self.all_indegree_one and not self.reconstruct_failures


def indegree_census(x: FesSet | Iterable[int], k_limit: int = 200) -> Census:
    """In-degrees of reachable windows, plus a check that every H_k rebuilds H_(k-1).

    The round trip is compared against windows read off a real FES run for
    1 <= k <= k_limit.
    """
    x = validate_fes(x)
    triple_parts(x)
    report = detect_period(x)
    reachable = [st.cells for st in report.steps]
    indegree = dict.fromkeys(reachable, 0)
    for cells in reachable:
        nxt, _, _ = step_cells(cells, x)
        if nxt in indegree:
            indegree[nxt] += 1

    failures = []
    pats = fes_patterns(x, k_limit)
    for k in range(1, k_limit + 1):
        cur, prev = pats[k], pats[k - 1]
        rebuilt, back, _ = reconstruct_previous(cur.cells, x)
        if rebuilt != prev.cells or cur.anchor - back != prev.anchor:
            failures.append(k)
    return Census(x, indegree, report.saltus, failures)
