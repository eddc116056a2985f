import json

import pytest

from allbut.verifiers import (
    SUITES,
    Status,
    run_suite,
    triple_pairs,
    verify_census,
    verify_lemma_triple,
    verify_period_saltus_ratio,
    verify_pure_ap,
    verify_reduction_2a,
    verify_reduction_2b,
    verify_reduction_generic,
    verify_scaling,
)
from conftest import textbook_grundy


@pytest.mark.parametrize("a,b", [(1, 3), (2, 5), (3, 7), (5, 16)])
def test_lemma_triple(a, b):
    v = verify_lemma_triple(a, b)
    assert v.passed, v.line()
    assert set(v.data["tags"]) <= {"A", "B"}


def test_lemma_triple_precondition():
    assert verify_lemma_triple(2, 4).status is Status.PRECONDITION
    assert verify_lemma_triple(3, 2).status is Status.PRECONDITION


def test_reduction_2a_holds_off_b_equal_3a():
    for a, b in [(1, 4), (2, 3), (2, 5), (3, 4), (3, 11)]:
        assert verify_reduction_2a(a, b).passed


@pytest.mark.parametrize("a", [1, 2, 3])
def test_reduction_2a_breaks_at_b_equal_3a(a):
    v = verify_reduction_2a(a, 3 * a)
    assert v.status is Status.FAIL
    full = textbook_grundy([a, 2 * a, 3 * a], 60)
    reduced = textbook_grundy([a, 2 * a], 60)
    first = next(n for n in range(61) if full[n] != reduced[n])
    assert v.counterexample == first
    if a == 1:
        assert first == 3 and (full[3], reduced[3]) == (0, 1)


def test_reduction_verdicts_stable_under_longer_window():
    for a, b in [(1, 3), (1, 4), (2, 5), (2, 6)]:
        assert verify_reduction_2a(a, b).status is verify_reduction_2a(a, b, 3000).status
        assert verify_reduction_2b(a, b).status is verify_reduction_2b(a, b, 3000).status


def test_reduction_2b():
    assert verify_reduction_2b(1, 3).passed
    assert verify_reduction_2b(2, 7).passed
    assert verify_reduction_2b(3, 1).status is Status.PRECONDITION


def test_reduction_generic():
    assert verify_reduction_generic(1, 4, 6).passed
    # order of the arguments does not matter
    assert verify_reduction_generic(6, 1, 4).passed
    for bad in [(1, 2, 3), (1, 3, 4), (2, 3, 4), (2, 2, 5)]:
        assert verify_reduction_generic(*bad).status is Status.PRECONDITION


def test_pure_ap():
    v = verify_pure_ap([5, 16, 21])
    assert v.passed and (v.data["saltus"], v.data["period"]) == (100, 300)
    info = verify_pure_ap([2, 3, 6, 8])
    assert info.passed and info.data["informational"] and not info.data["pure"]


def test_ratio_and_scaling():
    assert verify_period_saltus_ratio(2, 7).data == {"period": 48, "saltus": 16}
    assert verify_period_saltus_ratio(1, 2).status is Status.PRECONDITION
    assert [verify_scaling(1, 3, n).data["scaled_period"] for n in (2, 3, 8)] == [24, 36, 96]
    assert verify_scaling(1, 3, 1).status is Status.PRECONDITION


def test_census_verdict():
    v = verify_census(2, 5)
    assert v.passed and v.data["cycle_length"] > 0


def test_verdict_serialises():
    d = verify_reduction_2a(1, 3).to_dict()
    assert json.loads(json.dumps(d))["status"] == "fail"


def test_triple_pairs():
    pairs = list(triple_pairs(5))
    assert (1, 2) not in pairs and (2, 4) not in pairs and (1, 3) in pairs
    assert all(a < b for a, b in pairs)


def test_suite_names():
    assert set(SUITES) == {"lemma15", "reductions", "pure3", "ratio", "scaling", "census"}
    with pytest.raises(KeyError):
        run_suite("nope")


def test_suite_parallel_matches_serial():
    serial = [v.to_dict() for v in run_suite("ratio", b_max=8)]
    parallel = [v.to_dict() for v in run_suite("ratio", jobs=2, b_max=8)]
    assert serial == parallel
