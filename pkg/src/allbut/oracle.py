"""Automaton-free periodicity checks run directly on a computed sequence."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from allbut.model import ArithmeticPeriod, FesSet, NimSequence, PeriodStatus

SEARCH_BOUND_CAP = 4096


class PeriodCheck(NamedTuple):
    ok: bool
    counterexample: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_arith_period(seq: NimSequence, n0: int, p: int, s: int, n_check: int) -> PeriodCheck:
    """Check G(n + p) == G(n) + s for n in [n0, n0 + n_check)."""
    if p < 1:
        raise ValueError("period must be positive")
    need = n0 + p + n_check
    if len(seq) < need:
        raise ValueError(f"sequence has {len(seq)} values, check needs {need}")
    g = seq.values
    lo, hi = n0, n0 + n_check
    bad = np.flatnonzero(g[lo + p : hi + p] != g[lo:hi] + s)
    if bad.size:
        return PeriodCheck(False, lo + int(bad[0]))
    return PeriodCheck(True)


def brute_min_period(seq: NimSequence, search_bound: int) -> ArithmeticPeriod | None:
    """Smallest period, then smallest preperiod, that the whole sequence supports.

    For each p the saltus is forced by the last period of data.  A candidate
    only counts if the identity holds on at least ``search_bound + p``
    consecutive values, so a short agreeing tail cannot fake a period.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be positive")
    length = len(seq)
    if length < 3 * search_bound:
        raise ValueError(f"sequence of {length} values is shorter than 3 * {search_bound}")
    g = seq.values
    for p in range(1, search_bound + 1):
        diff = g[p:] - g[:-p]
        s = int(diff[-1])
        if s < 0:
            continue
        bad = np.flatnonzero(diff != s)
        n0 = int(bad[-1]) + 1 if bad.size else 0
        if length - p - n0 >= search_bound + p:
            return ArithmeticPeriod(n0, p, s, PeriodStatus.VERIFIED)
    return None


def default_search_bound(x: FesSet, cap: int = SEARCH_BOUND_CAP) -> int:
    """3a(a+b) for X = {a, b, a+b} with b > 3a; otherwise 4**max(X) held to ``cap``.

    For b < 3a the period can exceed 3a(a+b) (X = {3, 5, 8} has period 78),
    so that scale is only used where it is known to bound the period.
    """
    if len(x) == 3:
        a, b, c = x.elements
        if c == a + b and b > 3 * a:
            return 3 * a * (a + b)
    return max(1, min(4 ** x.width, cap))
