import csv
import json
from pathlib import Path

import pytest

import allbut.sweep as sweep
from allbut.sweep import (
    TAG_M,
    TAG_NA,
    TAG_VIOLATION,
    SweepRow,
    classify_conjecture,
    compute_row,
    family_tasks,
    rows_to_csv,
    rows_to_json,
    run_conjecture,
    run_sweep,
    write_rows,
)

TABLE = Path(__file__).parent / "data" / "saltus_table.csv"


def table_rows(a_values):
    with TABLE.open() as fh:
        return [r for r in csv.DictReader(fh) if int(r["a"]) in a_values]


def test_table_rows_for_small_a():
    expected = table_rows({1, 2})
    rows = run_sweep("triples", a_max=2, coprime=True, min_ratio=3, rows_per_a=40)
    assert len(rows) == len(expected) == 80
    for row, ref in zip(rows, expected):
        a, b, c, factor = (int(ref[k]) for k in ("a", "b", "c", "factor"))
        assert row.elements == (a, b, c)
        assert (row.preperiod, row.period, row.saltus) == (0, 3 * a * factor, a * factor)


def test_plateau_for_a7():
    assert [compute_row((7, b, 7 + b)).saltus for b in range(22, 28)] == [196] * 6


def test_triple_row_stats():
    row = compute_row((2, 5, 7))
    assert row.pure and row.period == 3 * row.saltus
    assert set(row.pattern_stats) == {"A", "B"}
    assert compute_row((1, 2, 4)).pattern_stats is None


def test_family_tasks():
    assert family_tasks("all-size-3", max_element=4) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    triples = family_tasks("triples", a_max=2, b_max=6)
    assert (2, 4, 6) not in triples and (1, 2, 3) not in triples and (2, 5, 7) in triples
    with pytest.raises(ValueError):
        family_tasks("size-5")


def test_size_four_has_non_pure_rows():
    rows = run_sweep("size-4-search", max_element=8)
    impure = {r.elements: r for r in rows if not r.pure}
    assert (2, 3, 5, 7) in impure and impure[(2, 3, 5, 7)].preperiod == 2
    assert (1, 4, 7, 8) in impure and impure[(1, 4, 7, 8)].preperiod == 11


def test_csv_and_json_layout():
    rows = run_sweep("all-size-3", max_element=4)
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "a,b,c,preperiod,period,saltus,pure"
    assert lines[1].endswith(",true") or lines[1].endswith(",false")
    four = rows_to_csv(run_sweep("size-4-search", max_element=5))
    assert four.splitlines()[0] == "a,b,c,d,preperiod,period,saltus,pure"
    data = json.loads(rows_to_json(rows))
    assert list(data[0])[:4] == ["a", "b", "c", "preperiod"]
    assert SweepRow.from_dict(data[0]) == rows[0]


def test_parallel_output_is_identical():
    serial = rows_to_csv(run_sweep("all-size-3", max_element=9))
    parallel = rows_to_csv(run_sweep("all-size-3", jobs=3, max_element=9))
    assert serial == parallel


def test_checkpoint_resume(tmp_path, monkeypatch):
    out = tmp_path / "rows.csv"
    real = sweep.compute_row
    calls = {"n": 0}

    def flaky(t):
        calls["n"] += 1
        if calls["n"] > 12:
            raise RuntimeError("interrupted")
        return real(t)

    monkeypatch.setattr(sweep, "compute_row", flaky)
    with pytest.raises(RuntimeError):
        run_sweep("all-size-3", out_path=out, checkpoint_every=5, max_element=6)
    ckpt = tmp_path / "rows.csv.ckpt"
    saved = json.loads(ckpt.read_text())
    assert len(saved["rows"]) == 10 and saved["last"] == list(saved["rows"][-1].values())[:3]

    seen = []
    monkeypatch.setattr(sweep, "compute_row", lambda t: seen.append(t) or real(t))
    rows = run_sweep("all-size-3", out_path=out, checkpoint_every=5, max_element=6)
    assert len(seen) == 20 - 10
    assert rows == run_sweep("all-size-3", max_element=6)
    write_rows(rows, out)
    assert not ckpt.exists() and out.read_text() == rows_to_csv(rows)


def test_checkpoint_for_other_bounds_is_ignored(tmp_path):
    out = tmp_path / "rows.csv"
    run_sweep("all-size-3", out_path=out, checkpoint_every=2, max_element=4)
    rows = run_sweep("all-size-3", out_path=out, checkpoint_every=2, max_element=5)
    assert len(rows) == 10


def test_conjecture_examples():
    assert classify_conjecture(2, 7, 16).predicted_m == 8
    v = classify_conjecture(5, 16, 100)
    assert v.tag == TAG_M and v.observed_n == 20
    edge = classify_conjecture(1, 3, 4)
    assert edge.location == "endpoint" and edge.tag == TAG_VIOLATION and not edge.in_scope


def test_conjecture_grid_small():
    verdicts = run_conjecture(3, 20)
    assert all(v.b > 3 * v.a for v in verdicts)
    assert all(v.matches for v in verdicts if v.a >= 2)
    assert all(v.location == "endpoint" for v in verdicts if v.a == 1)


def test_out_of_scope_rows_untagged():
    assert compute_row((2, 5, 7)).conjecture_tag == TAG_NA
    assert compute_row((2, 7, 9)).conjecture_tag == TAG_M
