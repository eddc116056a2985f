"""Executable checks of the structural results about excluded sets of size three.

Every check returns a :class:`Verdict` rather than raising, so whole
parameter grids can be run and summarised.  Sequence equalities are checked
on a finite window: by default three periods of the reduced game plus
2 max(X), which together with matching period data pins the sequences down.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Iterator

import numpy as np

from allbut.boundary import arithmetic_period, detect_period, indegree_census, render_cells
from allbut.model import FesSet, validate_fes
from allbut.naive import grundy_prefix
from allbut.oracle import verify_arith_period


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    PRECONDITION = "precondition-error"


@dataclass
class Verdict:
    check: str
    params: dict[str, Any]
    status: Status
    detail: str = ""
    counterexample: Any = None
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["status"] = self.status.value
        return out

    def line(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        tail = f" {self.detail}" if self.detail else ""
        return f"{self.status.value:<18} {self.check}({args}){tail}"


def _precondition(check: str, params: dict, why: str) -> Verdict:
    return Verdict(check, params, Status.PRECONDITION, why)


def _first_difference(u: np.ndarray, v: np.ndarray) -> int | None:
    idx = np.flatnonzero(u != v)
    return int(idx[0]) if idx.size else None


def _default_window(reduced: FesSet, x: FesSet) -> int:
    return 3 * arithmetic_period(reduced).period + 2 * x.width


def _cells_list(cells: int, width: int) -> list[int]:
    return [cells >> i & 1 for i in range(width)]


def verify_lemma_triple(a: int, b: int, k_limit: int = 200) -> Verdict:
    """Each k <= k_limit occurs exactly at n, n+a, n+a+b or else at n, n+b, n+a+b.

    Per-k tags ('A' for the n+a form, 'B' for the n+b form) are returned in
    ``data['tags']``; the n+a form wins whenever G(n+a) = k.
    """
    params = {"a": a, "b": b, "k_limit": k_limit}
    if not (1 <= a < b) or b == 2 * a:
        return _precondition("lemma_triple", params, "needs 1 <= a < b and b != 2a")
    w = a + b
    # first occurrence of k is at most 3k, and every occurrence lies within max(X) of it
    g = grundy_prefix([a, b, w], 3 * k_limit + 2 * w + 2).values
    positions: dict[int, list[int]] = {}
    for n in np.flatnonzero(g <= k_limit):
        positions.setdefault(int(g[n]), []).append(int(n))
    tags = []
    for k in range(k_limit + 1):
        occ = positions.get(k, [])
        n = occ[0] if occ else -1
        if occ == [n, n + a, n + w]:
            tags.append("A")
        elif occ == [n, n + b, n + w]:
            tags.append("B")
        else:
            return Verdict("lemma_triple", params, Status.FAIL, f"k={k} occurs at {occ}", k)
    return Verdict(
        "lemma_triple", params, Status.PASS,
        data={"tags": "".join(tags), "A": tags.count("A"), "B": tags.count("B")},
    )


def _two_block(cells: list[int], a: int) -> bool:
    for i in range(1, a + 1):
        block = [0] * i + [1] * (a - i)
        if cells[: 2 * a] == block + block and not any(cells[2 * a :]):
            return True
    return False


def _one_block(cells: list[int], a: int) -> bool:
    return any(cells[:a] == [0] * i + [1] * (a - i) and not any(cells[a:]) for i in range(1, a + 1))


def _compare_games(check, params, x: FesSet, reduced: FesSet, n_check, form, form_name) -> Verdict:
    if n_check is None:
        n_check = _default_window(reduced, x)
    params["n_check"] = n_check
    diff = _first_difference(grundy_prefix(x, n_check).values, grundy_prefix(reduced, n_check).values)
    if diff is not None:
        return Verdict(check, params, Status.FAIL, f"G_{x} and G_{reduced} differ at n={diff}", diff)
    # every window on the cycle is reached, so checking one trip round it covers all k
    for st in detect_period(x).steps:
        cells = _cells_list(st.cells, x.width)
        if not form(cells):
            shown = render_cells(st.cells, x.width)
            return Verdict(check, params, Status.FAIL, f"window {shown} at k={st.k} is not {form_name}", st.k)
    return Verdict(check, params, Status.PASS)


def verify_reduction_2a(a: int, b: int, n_check: int | None = None) -> Verdict:
    """G for {a, b, 2a} equals G for {a, 2a}; windows are two equal blank-then-star blocks."""
    params = {"a": a, "b": b}
    if not (1 <= a < b) or b == 2 * a:
        return _precondition("reduction_2a", params, "needs 1 <= a < b and b != 2a")
    x, reduced = validate_fes([a, b, 2 * a]), validate_fes([a, 2 * a])
    return _compare_games(
        "reduction_2a", params, x, reduced, n_check, lambda c: _two_block(c, a), "two blank/star blocks"
    )


def verify_reduction_2b(a: int, b: int, n_check: int | None = None) -> Verdict:
    """G for {a, b, 2b} equals G for {a}; windows are one blank-then-star block of width a."""
    params = {"a": a, "b": b}
    if not (1 <= a < b) or b == 2 * a:
        return _precondition("reduction_2b", params, "needs 1 <= a < b and b != 2a")
    x, reduced = validate_fes([a, b, 2 * b]), validate_fes([a])
    return _compare_games(
        "reduction_2b", params, x, reduced, n_check, lambda c: _one_block(c, a), "one blank/star block"
    )


def verify_reduction_generic(a: int, b: int, c: int, n_check: int | None = None) -> Verdict:
    params = {"a": a, "b": b, "c": c}
    try:
        x = validate_fes([a, b, c])
    except ValueError as exc:
        return _precondition("reduction_generic", params, str(exc))
    if len(x) != 3:
        return _precondition("reduction_generic", params, "needs three elements")
    a, b, c = x.elements
    if c in (a + b, 2 * a, 2 * b):
        return _precondition("reduction_generic", params, "largest element is a+b, 2a or 2b")
    reduced = validate_fes([a, b])
    if n_check is None:
        n_check = _default_window(reduced, x)
    params["n_check"] = n_check
    diff = _first_difference(grundy_prefix(x, n_check).values, grundy_prefix(reduced, n_check).values)
    if diff is not None:
        return Verdict("reduction_generic", params, Status.FAIL, f"sequences differ at n={diff}", diff)
    return Verdict("reduction_generic", params, Status.PASS)


def verify_pure_ap(x: FesSet | Iterable[int], n_check: int | None = None) -> Verdict:
    """Cycle detection plus tightening; pure iff the preperiod is 0.

    The tightened triple is also re-checked on a naive sequence.  For more
    than three excluded amounts the verdict only reports what was found.
    """
    x = validate_fes(x)
    params = {"x": list(x.elements)}
    ap = arithmetic_period(x)
    if n_check is None:
        n_check = 3 * ap.period
    seq = grundy_prefix(x, ap.preperiod + ap.period + n_check)
    check = verify_arith_period(seq, ap.preperiod, ap.period, ap.saltus, n_check)
    data = {"preperiod": ap.preperiod, "period": ap.period, "saltus": ap.saltus, "pure": ap.pure}
    if not check.ok:
        return Verdict("pure_ap", params, Status.FAIL, "period data fails on the naive sequence", check.counterexample, data)
    if len(x) > 3:
        data["informational"] = True
        return Verdict("pure_ap", params, Status.PASS, "more than three elements: informational", data=data)
    if not ap.pure:
        return Verdict("pure_ap", params, Status.FAIL, f"preperiod {ap.preperiod}", ap.preperiod, data)
    return Verdict("pure_ap", params, Status.PASS, data=data)


def verify_period_saltus_ratio(a: int, b: int) -> Verdict:
    params = {"a": a, "b": b}
    if not (1 <= a < b) or b == 2 * a:
        return _precondition("period_saltus_ratio", params, "needs 1 <= a < b and b != 2a")
    rep = detect_period([a, b, a + b])
    data = {"period": rep.period, "saltus": rep.saltus}
    if rep.period != 3 * rep.saltus:
        return Verdict("period_saltus_ratio", params, Status.FAIL, f"p={rep.period} s={rep.saltus}", data=data)
    return Verdict("period_saltus_ratio", params, Status.PASS, data=data)


def verify_scaling(a: int, b: int, n_factor: int) -> Verdict:
    """The period for {na, nb, n(a+b)} is n times the period for {a, b, a+b}."""
    params = {"a": a, "b": b, "n": n_factor}
    if not (1 <= a < b) or b == 2 * a or n_factor < 2:
        return _precondition("scaling", params, "needs 1 <= a < b, b != 2a, n >= 2")
    base = validate_fes([a, b, a + b])
    p_base = arithmetic_period(base).period
    p_scaled = arithmetic_period(base.scaled(n_factor)).period
    data = {"base_period": p_base, "scaled_period": p_scaled}
    if p_scaled != n_factor * p_base:
        return Verdict("scaling", params, Status.FAIL, f"{p_scaled} != {n_factor} * {p_base}", data=data)
    return Verdict("scaling", params, Status.PASS, data=data)


def verify_census(a: int, b: int, k_limit: int = 200) -> Verdict:
    params = {"a": a, "b": b, "k_limit": k_limit}
    if not (1 <= a < b) or b == 2 * a:
        return _precondition("census", params, "needs 1 <= a < b and b != 2a")
    census = indegree_census([a, b, a + b], k_limit)
    data = {"patterns": len(census.indegree), "cycle_length": census.cycle_length}
    if not census.all_indegree_one:
        odd = {render_cells(c, a + b): d for c, d in census.indegree.items() if d != 1}
        return Verdict("census", params, Status.FAIL, f"in-degrees other than 1: {odd}", data=data)
    if census.reconstruct_failures:
        k = census.reconstruct_failures[0]
        return Verdict("census", params, Status.FAIL, f"reconstruction fails at k={k}", k, data)
    return Verdict("census", params, Status.PASS, data=data)


# -- suites -----------------------------------------------------------------------


def triple_pairs(b_max: int, a_max: int | None = None) -> Iterator[tuple[int, int]]:
    """(a, b) with 1 <= a < b <= b_max and b != 2a."""
    for b in range(2, b_max + 1):
        for a in range(1, min(b - 1, a_max or b) + 1):
            if b != 2 * a:
                yield a, b


def _suite_lemma15(a_max: int = 20, b_max: int = 20, k_limit: int = 200):
    return [(verify_lemma_triple, (a, b, k_limit)) for a, b in sorted(triple_pairs(b_max, a_max))]


def _suite_reductions(max_element: int = 15):
    tasks = []
    for a, b in itertools.combinations(range(1, max_element + 1), 2):
        if b == 2 * a:
            continue
        if 2 * a <= max_element:
            tasks.append((verify_reduction_2a, (a, b)))
        if 2 * b <= max_element:
            tasks.append((verify_reduction_2b, (a, b)))
    for a, b, c in itertools.combinations(range(1, max_element + 1), 3):
        if c not in (a + b, 2 * a, 2 * b):
            tasks.append((verify_reduction_generic, (a, b, c)))
    return tasks


def _suite_pure3(max_element: int = 25):
    return [(verify_pure_ap, (list(t),)) for t in itertools.combinations(range(1, max_element + 1), 3)]


def _suite_ratio(b_max: int = 12):
    return [(verify_period_saltus_ratio, ab) for ab in sorted(triple_pairs(b_max))]


def _suite_scaling(b_max: int = 12, factors: tuple[int, ...] = (2, 3)):
    return [(verify_scaling, (a, b, n)) for a, b in sorted(triple_pairs(b_max)) for n in factors]


def _suite_census(pairs: tuple[tuple[int, int], ...] = ((1, 3), (2, 5), (3, 7)), k_limit: int = 200):
    return [(verify_census, (a, b, k_limit)) for a, b in pairs]


SUITES: dict[str, Callable[..., list]] = {
    "lemma15": _suite_lemma15,
    "reductions": _suite_reductions,
    "pure3": _suite_pure3,
    "ratio": _suite_ratio,
    "scaling": _suite_scaling,
    "census": _suite_census,
}


def _call(task):
    fn, args = task
    return fn(*args)


def run_suite(name: str, jobs: int = 1, **bounds) -> list[Verdict]:
    """Run a named suite over its parameter grid; results come back in grid order."""
    try:
        build = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    tasks = build(**bounds)
    if jobs <= 1:
        return [_call(t) for t in tasks]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(_call, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))

