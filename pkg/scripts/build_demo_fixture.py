#!/usr/bin/env python3
"""Build the bundled demo corpus with known, hand-checkable metric values.

The demo institution (A) has 66 articles in field-0705 journals engineered so
that h = 10 and indirect H2 = 6, plus 41 keyword-bearing articles in other
journals that a reassignment expansion pulls in (66 -> 107). Selecting the
best 50 of the widened pool by RCI inflates the mean sharply while H2 stays
at 6 in all three cases: the H2 core (six articles whose citers are heavily
cited) survives any reasonable cut, and none of the added articles has
well-cited citers.

Citer counts are realized through small shared pools of dangling citer ids
(materialized as external publications at ingest), keeping the file small.
Regenerate with: python scripts/build_demo_fixture.py
"""

import sys
from pathlib import Path

SRC = Path(__file__).resolve().parent.parent / "src"
sys.path.insert(0, str(SRC))

from scholimetric import (  # noqa: E402
    Corpus,
    Institution,
    JournalRecord,
    MetricOptions,
    Publication,
    Window,
    citation_count,
    expand_reassignment,
    hirsch_of_set,
    indirect_h2,
    select,
)
from scholimetric.benchmarks import build_benchmark  # noqa: E402
from scholimetric.corpus import export_corpus  # noqa: E402
from scholimetric.evaluation import optimize_submission  # noqa: E402

OUT_DIR = SRC / "scholimetric" / "fixtures" / "demo"

FIELD_JOURNALS = ["20050001", "20050002", "20050003"]  # all carry 0705
OTHER_JOURNALS = ["20050004", "20050005", "20059999", None]  # MD / excluded / unlisted / none

STAR_YEARS = [2005, 2005, 2005, 2006, 2006, 2006]
POPULAR = [(2005, 14), (2005, 13), (2006, 13), (2006, 12), (2007, 12),
           (2007, 11), (2008, 11), (2008, 10), (2009, 10), (2010, 10)]
MID_COUNTS = {
    2005: [5, 4, 3, 2],
    2006: [5, 4, 3, 1],
    2007: [6, 5, 4, 3, 2, 2, 1],
    2008: [5, 4, 3, 3, 2, 1, 1],
    2009: [4, 4, 3, 2, 2, 1, 1, 1],
    2010: [3, 2, 2, 2, 1, 1, 1, 1, 1],
}
UNCITED_YEARS = [2005, 2005, 2006, 2006, 2007, 2007, 2008, 2008, 2009, 2009, 2010]

EXPANSION = {
    2010: [8, 7, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2],
    2009: [6, 6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 2],
    2008: [4, 3, 2, 1],
    2007: [4, 3, 2, 1],
    2006: [4, 3, 2, 1],
    2005: [4, 3, 2, 1],
}
EXPANSION_KEYWORDS = [("timber",), ("silviculture",), ("eucalyptus",),
                      ("timber", "silviculture")]

# Global field articles per year (institution-free except a few owned by B),
# chosen so each year's cpp sits where the engineered RCIs need it.
FILLER_COUNTS = {
    2005: [30, 12, 8, 6, 5, 4, 4, 3, 3, 2, 2, 2, 1, 1, 1, 1] + [0] * 8,
    2006: [22, 10, 7, 5, 4, 4, 3, 3, 2, 2, 1, 1, 1] + [0] * 11,
    2007: [15, 8, 6, 4, 3, 3, 2, 2, 1, 1, 1, 1] + [0] * 12,
    2008: [10, 6, 4, 3, 2, 2, 1, 1, 1] + [0] * 15,
    2009: [5, 3, 2, 2, 1, 1] + [0] * 18,
    2010: [2, 2, 1, 1, 1] + [0] * 19,
}
# (year, count) pairs whose filler article belongs to institution B.
B_ARTICLES = {(2005, 12), (2005, 8), (2006, 10), (2006, 7), (2007, 8),
              (2008, 6), (2009, 3), (2010, 2)}

# Shared citer pools and their own citation counts.
REVIEW_COUNTS = [7, 7, 7, 6, 6, 6]       # R pool: cite every star
LOW_STAR_COUNTS = [2, 1, 1]              # L pool: cite every star
V_COUNTS = [4, 3, 2, 1] + [0] * 10       # V pool: cite popular articles
Y_COUNTS = [6, 5, 4, 3, 2, 1, 0, 0]      # Y pool: cite expansion articles
D_POOL_SIZE = 30                         # D pool: cite mids and fillers


def build():
    journals = [
        JournalRecord("20050001", "Forest Analytics Quarterly", ("0705",)),
        JournalRecord("20050002", "Silva Metrica", ("0705",)),
        JournalRecord("20050003", "Atmosphere and Forest Studies", ("0401", "0705")),
        JournalRecord("20050004", "Panscience Letters", ("MD",)),
        JournalRecord("20050005", "Applied Microbial Notes", ("0605",)),
        JournalRecord("20050006", "Forest Operations Review", ("0799",)),
    ]
    institutions = [
        Institution("A", "Alpha University", "AU", 25),
        Institution("B", "Beta Institute", "DE", 140),
    ]

    pubs: list[Publication] = []
    edges: list[tuple[str, str]] = []
    a = frozenset({"A"})

    def field_journal(i: int) -> str:
        return FIELD_JOURNALS[i % len(FIELD_JOURNALS)]

    def cite_from_pool(target: str, pool_prefix: str, count: int):
        edges.extend((f"{pool_prefix}{j:02d}", target) for j in range(1, count + 1))

    stars = []
    for i, year in enumerate(STAR_YEARS, start=1):
        pid = f"S{i:02d}"
        stars.append(pid)
        pubs.append(Publication(pid, year, field_journal(i), a, frozenset({"forestry"})))
        for j in range(1, len(REVIEW_COUNTS) + 1):
            edges.append((f"R{j:02d}", pid))
        for j in range(1, len(LOW_STAR_COUNTS) + 1):
            edges.append((f"L{j:02d}", pid))

    for i, (year, count) in enumerate(POPULAR, start=1):
        pid = f"P{i:02d}"
        pubs.append(Publication(pid, year, field_journal(i), a))
        cite_from_pool(pid, "V", count)

    mid_no = 0
    for year in sorted(MID_COUNTS):
        for count in MID_COUNTS[year]:
            mid_no += 1
            pid = f"M{mid_no:02d}"
            pubs.append(Publication(pid, year, field_journal(mid_no), a,
                                    frozenset({"forestry"}) if mid_no % 5 == 0 else frozenset()))
            cite_from_pool(pid, "D", count)

    for i, year in enumerate(UNCITED_YEARS, start=1):
        pubs.append(Publication(f"U{i:02d}", year, field_journal(i), a))

    expansion_no = 0
    for year in sorted(EXPANSION):
        for count in EXPANSION[year]:
            expansion_no += 1
            pid = f"K{expansion_no:02d}"
            issn = OTHER_JOURNALS[expansion_no % len(OTHER_JOURNALS)]
            kws = frozenset(EXPANSION_KEYWORDS[expansion_no % len(EXPANSION_KEYWORDS)])
            pubs.append(Publication(pid, year, issn, a, kws))
            cite_from_pool(pid, "Y", count)

    filler_no = 0
    b_remaining = set(B_ARTICLES)
    for year in sorted(FILLER_COUNTS):
        for count in FILLER_COUNTS[year]:
            filler_no += 1
            pid = f"G{filler_no:03d}"
            owner = frozenset()
            if (year, count) in b_remaining:
                owner = frozenset({"B"})
                b_remaining.discard((year, count))
            pubs.append(Publication(pid, year, field_journal(filler_no), owner))
            cite_from_pool(pid, "D", count)

    # Citer pools' own citations (third tier), via tiny upstream pools.
    for j, count in enumerate(REVIEW_COUNTS, start=1):
        cite_from_pool(f"R{j:02d}", "W", count)
    lows = {1: ["W01", "W02"], 2: ["W01"], 3: ["W02"]}
    for j, citers in lows.items():
        edges.extend((c, f"L{j:02d}") for c in citers)
    for j, count in enumerate(V_COUNTS, start=1):
        cite_from_pool(f"V{j:02d}", "X", count)
    for j, count in enumerate(Y_COUNTS, start=1):
        cite_from_pool(f"Y{j:02d}", "X", count)

    return Corpus.from_records(pubs, edges, journals, institutions), stars


def check(corpus: Corpus, stars: list[str]):
    window = Window(2005, 2010, 2010)
    options = MetricOptions.for_window(window)

    strict = select(corpus, window, institutions=["A"], field_code="0705")
    assert len(strict) == 66, len(strict)
    for pid in stars:
        assert citation_count(corpus, pid, options) == 9

    h = hirsch_of_set(corpus, strict, options)
    h2 = indirect_h2(corpus, strict, options)
    assert h.value == 10, h.value
    assert h2.value == 6 and set(h2.core) == set(stars), h2

    candidates = select(corpus, window, institutions=["A"], eligibility="all")
    widened = expand_reassignment(
        corpus, strict, ("forestry", "silviculture", "timber", "eucalyptus"),
        within=sorted(candidates))
    assert len(widened) == 107, len(widened)
    assert indirect_h2(corpus, widened, options).value == 6

    benchmark = build_benchmark(corpus, "0705", window, options)
    result = optimize_submission(corpus, widened, 50, benchmark, window, options)
    assert set(stars) <= result.subset
    assert result.core_survived
    assert result.after.h2 == 6
    strict_mean = sum(
        citation_count(corpus, p, options) / benchmark.year(corpus.pub(p).year).cpp
        for p in strict) / len(strict)
    ratio = result.after.mean_rci / strict_mean
    assert ratio >= 1.95, ratio
    print(f"strict mean RCI {strict_mean:.4f}, selective {result.after.mean_rci:.4f}, "
          f"ratio {ratio:.3f}")
    print(f"widened mean RCI {result.before.mean_rci:.4f}")
    print("cpp:", {y: round(yb.cpp, 4) for y, yb in sorted(benchmark.years.items())})


def main():
    corpus, stars = build()
    check(corpus, stars)
    export_corpus(corpus, OUT_DIR)
    print(f"demo fixture written to {OUT_DIR} "
          f"({corpus.n_pubs} publications, {corpus.n_edges} edges)")


if __name__ == "__main__":
    main()
