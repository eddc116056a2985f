"""Reference Grundy engine working straight from the mex definition.

Pile n can move to every m < n except m = n - x for x in X.  Rather than
scanning all m, keep a count of how often each nimber has occurred so far:
a value is missing from the options of n only if every one of its
occurrences sits at an excluded position, so the mex is either the smallest
value never seen or one of the at most |X| values seen at excluded piles.
"""

from __future__ import annotations

from typing import Iterable

from allbut.model import FesSet, NimSequence, check_cap, validate_fes


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    k = 0
    while k in seen:
        k += 1
    return k


def literal_prefix(x: FesSet, n_max: int) -> list[int]:
    """G(0..n_max) by enumerating every option of every pile. Quadratic; oracle use only."""
    g: list[int] = []
    for n in range(n_max + 1):
        g.append(mex(g[m] for m in range(n) if (n - m) not in x))
    return g


def _fast_prefix(elements: tuple[int, ...], n_max: int) -> list[int]:
    g = [0] * (n_max + 1)
    counts = [0] * (n_max + 2)
    frontier = 0
    for n in range(n_max + 1):
        best = frontier
        hits: dict[int, int] = {}
        for x in elements:
            if x > n:
                break
            v = g[n - x]
            hits[v] = hits.get(v, 0) + 1
        for v, c in hits.items():
            if v < best and counts[v] == c:
                best = v
        g[n] = best
        counts[best] += 1
        while counts[frontier]:
            frontier += 1
    return g


def grundy_prefix(x: FesSet | Iterable[int], n_max: int, *, literal: bool = False) -> NimSequence:
    """G(0..n_max) for the all-but game excluding X.

    ``literal=True`` switches to the quadratic textbook evaluation, kept as
    the in-repo oracle for the counting fast path.
    """
    x = validate_fes(x)
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    check_cap(n_max + 1)
    if literal:
        return NimSequence(literal_prefix(x, n_max), "naive-literal")
    return NimSequence(_fast_prefix(x.elements, n_max), "naive")
