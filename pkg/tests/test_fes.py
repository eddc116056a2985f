from hypothesis import given, settings

from allbut.fes import FesState, fes_grundy_prefix, fes_iteration, fes_prefix, fes_run
from allbut.model import validate_fes
from allbut.naive import grundy_prefix
from conftest import fes_sets, textbook_grundy


def test_first_iterations_worked_example():
    x = validate_fes([2, 3, 6, 8])
    state = FesState()
    _, rec0 = fes_iteration(state, x)
    _, rec1 = fes_iteration(state, x)
    assert rec0.positions == (0, 2, 8)
    assert rec1.positions == (1, 3, 9)


def test_prefix_after_six_passes():
    seq, records = fes_prefix([2, 3, 6, 8], 5)
    # pile 15 is the first undecided one, so the certain prefix ends at 14
    assert seq.tolist() == [0, 1, 0, 1, 2, 3, 2, 3, 0, 1, 4, 5, 2, 3, 5]
    state, _ = fes_run([2, 3, 6, 8], 6)
    assert state.frontier == 15
    assert state.ahead == {16: 4, 17: 5, 18: 4}
    assert len(records) == 6


def test_single_element():
    for a in range(1, 9):
        _, records = fes_prefix([a], 0)
        assert records[0].positions == (0, a)


def test_triple_first_zeros():
    state, records = fes_run([1, 3, 4], 3)
    assert records[0].positions == (0, 1, 4)
    assert [n for n, v in enumerate(textbook_grundy([1, 3, 4], 12)) if v == 0] == [0, 1, 4]


def test_empty_set():
    seq, records = fes_prefix([], 7)
    assert seq.tolist() == list(range(8))
    assert all(len(r.positions) == 1 for r in records)


@settings(max_examples=80)
@given(fes_sets())
def test_matches_naive(x):
    assert fes_grundy_prefix(x, 1500) == grundy_prefix(x, 1500)


@settings(max_examples=40)
@given(fes_sets(max_size=4, max_element=16))
def test_iteration_invariants(x):
    x = validate_fes(x)
    g = grundy_prefix(x, 1200).tolist()
    state = FesState()
    for k in range(120):
        start = state.frontier
        _, rec = fes_iteration(state, x)
        assert 1 <= len(rec.positions) <= len(x) + 1
        assert rec.positions[0] == start
        assert all(p - start in x for p in rec.positions[1:])
        assigned = state.assigned()
        assert all(p < state.frontier + x.width for p in assigned)
        top = max(assigned)
        assert set(assigned) == {m for m in range(top + 1) if g[m] <= k}
        assert all(g[p] == v for p, v in assigned.items())
