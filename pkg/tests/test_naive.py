import pytest
from hypothesis import given, settings

from allbut.model import ResourceCapError, set_pile_cap
from allbut.naive import grundy_prefix, mex
from conftest import fes_sets, losing_piles, textbook_grundy


def test_mex():
    assert mex([]) == 0
    assert mex([0, 1, 3]) == 2


def test_empty_set_counts_up():
    assert grundy_prefix([], 5).tolist() == [0, 1, 2, 3, 4, 5]


def test_worked_example_prefix():
    g = grundy_prefix([2, 3, 6, 8], 18).tolist()
    shown = [0, 1, 0, 1, 2, 3, 2, 3, 0, 1, 4, 5, 2, 3, 5, None, 4, 5, 4]
    assert all(s is None or s == v for s, v in zip(shown, g))
    assert g == textbook_grundy([2, 3, 6, 8], 18)
    assert g[15] == 6


def test_single_exclusion():
    assert grundy_prefix([1], 6).tolist() == [0, 0, 1, 1, 2, 2, 3]


@settings(max_examples=60)
@given(fes_sets())
def test_fast_path_matches_definition(x):
    expected = textbook_grundy(x, 200)
    assert grundy_prefix(x, 200).tolist() == expected
    assert grundy_prefix(x, 200, literal=True).tolist() == expected


@settings(max_examples=30)
@given(fes_sets(max_element=12))
def test_zero_iff_losing(x):
    g = grundy_prefix(x, 60).tolist()
    assert [n for n, v in enumerate(g) if v == 0] == losing_piles(x, 60)


@settings(max_examples=60)
@given(fes_sets())
def test_basic_invariants(x):
    g = grundy_prefix(x, 800).tolist()
    assert g[0] == 0
    assert all(v <= n for n, v in enumerate(g))
    first = {}
    for n, v in enumerate(g):
        first.setdefault(v, n)
    # first occurrences appear in increasing order of value
    firsts = [first[k] for k in range(len(first))]
    assert firsts == sorted(firsts) and len(set(firsts)) == len(firsts)
    # every occurrence of k sits within max(X) of its first occurrence
    w = max(x, default=0)
    assert all(n - first[v] <= w for n, v in enumerate(g))


def test_cap_enforced():
    set_pile_cap(50)
    try:
        with pytest.raises(ResourceCapError):
            grundy_prefix([1, 2], 50)
    finally:
        set_pile_cap(None)


def test_negative_n():
    with pytest.raises(ValueError):
        grundy_prefix([1], -1)
