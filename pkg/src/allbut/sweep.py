"""Batch sweeps over excluded sets, saltus tables and conjecture evidence."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Any, Iterator, Sequence

from allbut.boundary import detect_period, tighten_length, tighten_preperiod
from allbut.model import check_cap, validate_fes
from allbut.naive import grundy_prefix

log = logging.getLogger(__name__)

FAMILIES = ("triples", "all-size-3", "size-4-search")
CHECKPOINT_EVERY = 1000

TAG_M = "m-multiple-of-2a"
TAG_OTHER = "other-n"
TAG_VIOLATION = "violation"
TAG_NA = "not-applicable"


@dataclass(frozen=True)
class SweepRow:
    elements: tuple[int, ...]
    preperiod: int
    period: int
    saltus: int
    pure: bool
    pattern_stats: dict[str, int] | None = None
    conjecture_tag: str = TAG_NA

    @property
    def a(self) -> int:
        return self.elements[0]

    @property
    def b(self) -> int:
        return self.elements[1]

    @property
    def c(self) -> int:
        return self.elements[2]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = dict(zip("abcd", self.elements))
        out.update(
            preperiod=self.preperiod,
            period=self.period,
            saltus=self.saltus,
            pure=self.pure,
            pattern_stats=self.pattern_stats,
            conjecture_tag=self.conjecture_tag,
        )
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> SweepRow:
        elements = tuple(d[k] for k in "abcd" if k in d)
        return cls(
            elements, d["preperiod"], d["period"], d["saltus"], d["pure"],
            d.get("pattern_stats"), d.get("conjecture_tag", TAG_NA),
        )


@dataclass(frozen=True)
class ConjectureVerdict:
    a: int
    b: int
    saltus: int
    predicted_m: int | None
    observed_n: int | None  # None when a does not divide the saltus
    location: str  # where observed_n sits relative to (b, a+b): open, endpoint or outside
    tag: str
    in_scope: bool  # b > 3a and gcd(a, b) = 1

    @property
    def matches(self) -> bool:
        return self.tag in (TAG_M, TAG_OTHER)

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": self.a, "b": self.b, "saltus": self.saltus, "predicted_m": self.predicted_m,
            "observed_n": self.observed_n, "location": self.location, "tag": self.tag,
            "matches": self.matches, "in_scope": self.in_scope,
        }


def is_triple_form(elements: Sequence[int]) -> bool:
    if len(elements) != 3:
        return False
    a, b, c = elements
    return c == a + b and b != 2 * a


def classify_conjecture(a: int, b: int, saltus: int) -> ConjectureVerdict:
    """Compare an observed saltus for {a, b, a+b} with the b > 3a conjecture.

    The predicted multiplier is the multiple of 2a strictly between b and a+b
    (there is at most one).  Without one, the observed multiplier must itself
    lie strictly inside that interval; a hit on an end point is reported as
    such and still counted as a violation.
    """
    in_scope = b > 3 * a and gcd(a, b) == 1
    lo, hi = b, a + b
    m = next((v for v in range(lo + 1, hi) if v % (2 * a) == 0), None)
    n = saltus // a if saltus % a == 0 else None
    if n is None:
        location = "outside"
    elif lo < n < hi:
        location = "open"
    elif n in (lo, hi):
        location = "endpoint"
    else:
        location = "outside"
    if m is not None:
        tag = TAG_M if n == m else TAG_VIOLATION
    else:
        tag = TAG_OTHER if location == "open" else TAG_VIOLATION
    return ConjectureVerdict(a, b, saltus, m, n, location, tag, in_scope)


def compute_row(elements: Sequence[int]) -> SweepRow:
    x = validate_fes(elements)
    report = detect_period(x)
    check_cap(tighten_length(report))
    ap = tighten_preperiod(x, report, grundy_prefix(x, tighten_length(report) - 1))
    stats = None
    tag = TAG_NA
    if is_triple_form(x.elements):
        a, b, c = x.elements
        if ap.period != 3 * ap.saltus:
            raise AssertionError(f"period {ap.period} is not three times saltus {ap.saltus} for {x}")
        cycle = [st for st in report.steps if st.k >= report.k_start]
        stats = {
            "A": sum(st.placed == (0, a, c) for st in cycle),
            "B": sum(st.placed == (0, b, c) for st in cycle),
        }
        verdict = classify_conjecture(a, b, ap.saltus)
        if verdict.in_scope:
            tag = verdict.tag
    return SweepRow(x.elements, ap.preperiod, ap.period, ap.saltus, ap.pure, stats, tag)


def family_tasks(family: str, **bounds: Any) -> list[tuple[int, ...]]:
    """Sorted excluded sets for a sweep family.

    triples: a_min..a_max, b_min..b_max, b > a, b != 2a, c = a + b; optional
    ``coprime``, ``min_ratio`` (b >= min_ratio * a) and ``rows_per_a``.
    all-size-3 / size-4-search: every subset of 1..max_element of that size.
    """
    if family == "triples":
        a_min, a_max = bounds.get("a_min", 1), bounds.get("a_max", 8)
        b_max = bounds.get("b_max", 50)
        coprime = bounds.get("coprime", False)
        min_ratio = bounds.get("min_ratio", 0)
        rows_per_a = bounds.get("rows_per_a")
        out = []
        for a in range(a_min, a_max + 1):
            b_lo = max(bounds.get("b_min", 1), a + 1, min_ratio * a)
            picked = 0
            b = b_lo
            while (rows_per_a is not None and picked < rows_per_a) or (rows_per_a is None and b <= b_max):
                if b != 2 * a and (not coprime or gcd(a, b) == 1):
                    out.append((a, b, a + b))
                    picked += 1
                b += 1
        return sorted(out)
    if family in ("all-size-3", "size-4-search"):
        size = 3 if family == "all-size-3" else 4
        top = bounds.get("max_element", 12)
        return list(itertools.combinations(range(1, top + 1), size))
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _chunks(items: list, size: int) -> Iterator[list]:
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _checkpoint_path(out_path: Path) -> Path:
    return out_path.with_name(out_path.name + ".ckpt")


def _load_checkpoint(path: Path, key: dict) -> list[SweepRow]:
    if not path.exists():
        return []
    data = json.loads(path.read_text())
    if data.get("key") != key:
        log.warning("ignoring checkpoint %s written for a different sweep", path)
        return []
    rows = [SweepRow.from_dict(d) for d in data["rows"]]
    log.info("resuming after %s (%d rows done)", data.get("last"), len(rows))
    return rows


def _save_checkpoint(path: Path, key: dict, rows: list[SweepRow]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    payload = {"key": key, "last": list(rows[-1].elements), "rows": [r.to_dict() for r in rows]}
    tmp.write_text(json.dumps(payload))
    os.replace(tmp, path)


def run_sweep(
    family: str,
    jobs: int = 1,
    out_path: str | os.PathLike | None = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
    **bounds: Any,
) -> list[SweepRow]:
    """Compute one SweepRow per excluded set, in sorted order whatever ``jobs`` is.

    With ``out_path`` the partial result is checkpointed to ``<out_path>.ckpt``
    every ``checkpoint_every`` rows and picked up again on the next run.
    """
    tasks = family_tasks(family, **bounds)
    key = {"family": family, "bounds": {k: v for k, v in sorted(bounds.items())}}
    ckpt = _checkpoint_path(Path(out_path)) if out_path is not None else None
    rows = _load_checkpoint(ckpt, key) if ckpt else []
    done = {r.elements for r in rows}
    todo = [t for t in tasks if t not in done]

    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for chunk in _chunks(todo, checkpoint_every):
            if pool is None:
                rows.extend(compute_row(t) for t in chunk)
            else:
                rows.extend(pool.map(compute_row, chunk, chunksize=max(1, len(chunk) // (4 * jobs))))
            if ckpt is not None:
                _save_checkpoint(ckpt, key, rows)
    finally:
        if pool is not None:
            pool.shutdown()
    rows.sort(key=lambda r: r.elements)
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    width = max((len(r.elements) for r in rows), default=3)
    cols = list("abcd"[: max(width, 3)]) + ["preperiod", "period", "saltus", "pure"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([*r.elements, r.preperiod, r.period, r.saltus, "true" if r.pure else "false"])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=1) + "\n"


def write_rows(rows: Sequence[SweepRow], out_path: str | os.PathLike, fmt: str = "csv") -> None:
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    path = Path(out_path)
    path.write_text(text, encoding="utf-8")
    ckpt = _checkpoint_path(path)
    if ckpt.exists():
        ckpt.unlink()


def conjecture_grid(a_max: int, b_max: int) -> Iterator[tuple[int, int]]:
    for a in range(1, a_max + 1):
        for b in range(3 * a + 1, b_max + 1):
            if gcd(a, b) == 1:
                yield a, b


def run_conjecture(a_max: int, b_max: int, jobs: int = 1) -> list[ConjectureVerdict]:
    """Evidence for the conjecture on every coprime (a, b) with 3a < b <= b_max."""
    pairs = list(conjecture_grid(a_max, b_max))
    sets = [(a, b, a + b) for a, b in pairs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            saltuses = list(pool.map(_saltus, sets))
    else:
        saltuses = [_saltus(s) for s in sets]
    return [classify_conjecture(a, b, s) for (a, b), s in zip(pairs, saltuses)]


def _saltus(elements: tuple[int, ...]) -> int:
    return detect_period(elements).saltus
