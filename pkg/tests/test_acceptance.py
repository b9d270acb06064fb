"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s -q`` to see the per-criterion
lines. Every tolerance is pinned here; nothing is deferred.
"""

import json
import time
from pathlib import Path

import numpy as np
import psutil
import pytest

from scholimetric import (
    Corpus,
    MetricOptions,
    Publication,
    SynthSpec,
    Window,
    build_benchmark,
    classify_rci,
    confusion_matrix,
    gaming_analysis,
    h2_percentile_table,
    hirsch_of_set,
    indirect_h2,
    optimize_submission,
    percentile_threshold,
    predict_h2,
    rci,
    rec_table,
    select,
    single_publication_h_all,
    size_adjusted_h2,
    synthesize_corpus,
)
from scholimetric.benchmarks import PERCENTILE_LEVELS
from scholimetric.evaluation import BandScheme, article_rci

import oracles
from conftest import FIXTURES, GOLDEN

WINDOW = Window(2005, 2010, 2010)
OPTIONS = MetricOptions.for_window(WINDOW)


def record(num: int, name: str, ok: bool, detail: str = ""):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:02d} {name}: {detail}".rstrip())
    assert ok, f"criterion {num:02d} {name} failed: {detail}"


def _random_small_corpus(rng, n, m):
    ids = [f"R{i:04d}" for i in range(n)]
    years = rng.integers(2000, 2013, size=n)
    pubs = [Publication(ids[i], int(years[i])) for i in range(n)]
    edges = set()
    if n > 1 and m:
        citing = rng.integers(0, n, size=m)
        cited = rng.integers(0, n, size=m)
        edges = {(ids[c], ids[d]) for c, d in zip(citing, cited) if c != d}
    return Corpus.from_records(pubs, edges)


@pytest.fixture(scope="module")
def oracle_sweep():
    """500 random corpora: oracle comparison plus the ordering invariant."""
    rng = np.random.default_rng(20240705)
    start = time.perf_counter()
    mismatches = 0
    ordering_violations = 0
    corpora = 0
    for trial in range(500):
        if trial < 480:
            n = int(rng.integers(1, 201))
            m = int(rng.integers(0, min(2000, 4 * n) + 1))
        else:
            n, m = 200, 2000  # stress the stated bounds
        corpus = _random_small_corpus(rng, n, m)
        corpora += 1
        raw = oracles.RawGraph.from_corpus(corpus)
        pubs = list(corpus.pub_ids)

        h = hirsch_of_set(corpus, pubs).value
        h2 = indirect_h2(corpus, pubs).value
        if h != raw.hirsch(pubs):
            mismatches += 1
        if h2 != raw.h2(pubs):
            mismatches += 1
        sph = single_publication_h_all(corpus)
        for pid in pubs:
            if sph[pid] != raw.sph(pid):
                mismatches += 1
                break
        if not (h2 <= h <= len(pubs)):
            ordering_violations += 1
    elapsed = time.perf_counter() - start
    return {"corpora": corpora, "mismatches": mismatches,
            "ordering_violations": ordering_violations, "elapsed": elapsed}


def test_criterion_01_oracle_equivalence(oracle_sweep):
    ok = (oracle_sweep["mismatches"] == 0 and oracle_sweep["corpora"] == 500
          and oracle_sweep["elapsed"] < 60.0)
    record(1, "oracle equivalence", ok,
           f"{oracle_sweep['corpora']} corpora, {oracle_sweep['mismatches']} "
           f"mismatches, {oracle_sweep['elapsed']:.1f}s")


def test_criterion_02_ordering_invariant(oracle_sweep):
    ok = oracle_sweep["ordering_violations"] == 0
    record(2, "H2 <= h <= |S| ordering", ok,
           f"{oracle_sweep['ordering_violations']} violations over "
           f"{oracle_sweep['corpora']} corpora")


def test_criterion_03_monotonicity():
    rng = np.random.default_rng(77)
    violations = 0
    performed = 0
    while performed < 1000:
        n = int(rng.integers(5, 50))
        corpus = _random_small_corpus(rng, n, int(rng.integers(0, 4 * n)))
        ids = sorted(corpus.pub_ids)
        base_set = ids[: max(1, len(ids) // 2)]
        h_before = hirsch_of_set(corpus, base_set).value
        h2_before = indirect_h2(corpus, base_set).value
        for _ in range(min(20, 1000 - performed)):
            performed += 1
            if performed % 2 == 0 and len(ids) > len(base_set):
                # add-publication perturbation: grow the evaluated set
                extra = ids[len(base_set) + int(rng.integers(0, len(ids) - len(base_set))) - 1]
                grown_set = sorted(set(base_set) | {extra})
                if (hirsch_of_set(corpus, grown_set).value < h_before
                        or indirect_h2(corpus, grown_set).value < h2_before):
                    violations += 1
            else:
                # add-edge perturbation: rebuild with one extra citation
                i, j = int(rng.integers(0, len(ids))), int(rng.integers(0, len(ids)))
                if i == j:
                    continue
                edge = (ids[i], ids[j])
                if edge in set(corpus.edge_pairs()):
                    continue
                grown = Corpus.from_records(
                    [corpus.pub(p) for p in corpus.declared_ids()],
                    list(corpus.edge_pairs()) + [edge])
                if (hirsch_of_set(grown, base_set).value < h_before
                        or indirect_h2(grown, base_set).value < h2_before):
                    violations += 1
    record(3, "monotone under growth", violations == 0,
           f"{performed} perturbations, {violations} decreases")


def test_criterion_04_gaming_reproduction(demo_corpus):
    golden = json.loads((GOLDEN / "gaming_expected.json").read_text())
    benchmark = build_benchmark(demo_corpus, "0705", WINDOW, OPTIONS)
    result = gaming_analysis(
        demo_corpus, "A", "0705", WINDOW,
        ("forestry", "silviculture", "timber", "eucalyptus"), 50, benchmark, OPTIONS)
    checks = [
        result.strict.total_articles == golden["strict_total"],
        result.all_inclusive.total_articles == golden["widened_total"],
        result.selective.total_articles == golden["selective_total"],
        result.strict.h == golden["strict_h"],
        result.strict.h2 == golden["strict_h2"],
        result.all_inclusive.h2 == golden["widened_h2"],
        result.selective.h2 == golden["selective_h2"],
        abs(result.strict.mean_rci - golden["strict_mean_rci"]) < 1e-9,
        abs(result.selective.mean_rci - golden["selective_mean_rci"]) < 1e-9,
        sorted(result.selected) == golden["selected"],
        result.mean_rci_ratio >= 1.9,
        result.selective.h2 == result.strict.h2 == 6,
    ]
    record(4, "gaming reproduction", all(checks),
           f"mean RCI {result.strict.mean_rci:.2f} -> {result.selective.mean_rci:.2f} "
           f"(x{result.mean_rci_ratio:.2f}), H2 "
           f"{result.all_inclusive.h2}/{result.strict.h2}/{result.selective.h2}")


def test_criterion_05_optimizer_exactness(demo_corpus):
    benchmark = build_benchmark(demo_corpus, "0705", WINDOW, OPTIONS)
    pool_universe = sorted(select(demo_corpus, WINDOW, institutions=["A"],
                                  field_code="0705"))
    rng = np.random.default_rng(11)
    cases = failures = 0
    for n in range(2, 13):
        for k in range(1, min(6, n) + 1):
            for _ in range(3):
                pool = list(rng.choice(pool_universe, size=n, replace=False))
                rcis = {p: article_rci(demo_corpus, p, benchmark, OPTIONS)
                        for p in pool}
                got = optimize_submission(demo_corpus, pool, k, benchmark,
                                          WINDOW, OPTIONS).after.mean_rci
                if got != oracles.best_mean_subset(rcis, k):
                    failures += 1
                cases += 1
    record(5, "optimizer equals exhaustive max", failures == 0,
           f"{cases} pools (n<=12, k<=6), {failures} mismatches, 0 tolerance")


def test_criterion_06_rci_boundaries():
    expected = {0.0: "0", 0.01: "I", 0.79: "I", 0.80: "II", 1.19: "II",
                1.20: "III", 1.99: "III", 2.00: "IV", 3.99: "IV", 4.00: "V",
                7.99: "V", 8.00: "VI"}
    failures = [v for v, label in expected.items()
                if classify_rci(v).label != label]
    inflated = classify_rci(rci(8, 0.9))
    ok = not failures and inflated.label == "VI"
    record(6, "RCI class boundaries", ok,
           f"12 boundary values exact; rci(8, 0.9) -> class {inflated.label}")


def test_criterion_07_percentile_thresholds():
    rng = np.random.default_rng(13)
    mismatches = non_monotone = 0
    for _ in range(200):
        size = int(rng.integers(1, 120))
        mode = rng.random()
        if mode < 0.3:
            values = [int(v) for v in rng.integers(0, 5, size=size)]  # heavy ties
        else:
            values = [int(v) for v in np.floor(rng.lognormal(1.0, 1.2, size=size))]
        bars = {}
        for p in PERCENTILE_LEVELS:
            got = percentile_threshold(values, p)
            bars[p] = got
            if got != oracles.threshold_scan(values, p):
                mismatches += 1
        seq = [bars[p] for p in PERCENTILE_LEVELS]
        if any(a < b for a, b in zip(seq, seq[1:])):
            non_monotone += 1
    ok = mismatches == 0 and non_monotone == 0
    record(7, "percentile threshold rule", ok,
           f"200 distributions, {mismatches} oracle mismatches, "
           f"{non_monotone} monotonicity breaks")


def test_criterion_08_confusion_matrix():
    import csv
    with open(FIXTURES / "ratings_dentistry.csv", newline="", encoding="utf-8") as fh:
        pairs = [(row["rating"], int(row["h2"])) for row in csv.DictReader(fh)]
    result = confusion_matrix(pairs, BandScheme.parse("4;5;6-7;8+"))
    ok = (int(result.percent_correct + 0.5) == 83
          and abs(result.percent_correct - 500 / 6) < 1e-9)
    record(8, "confusion matrix 83%", ok,
           f"percent correct {result.percent_correct:.2f} -> printed 83")


def test_criterion_09_h2_percentile_table():
    import csv
    with open(FIXTURES / "h2_forestry_institutions.csv", newline="",
              encoding="utf-8") as fh:
        values = {row["institution"]: int(row["h2"]) for row in csv.DictReader(fh)}
    table = h2_percentile_table(values)
    expected = {1: 8, 5: 7, 10: 6, 25: 4, 50: 3}
    record(9, "institutional H2 percentiles", table == expected,
           f"{len(values)} institutions -> "
           + "/".join(str(table[p]) for p in PERCENTILE_LEVELS))


def test_criterion_10_size_adjustment():
    ok = (all(size_adjusted_h2(h2, 1) == h2 for h2 in range(0, 12))
          and abs(predict_h2(1) - 3.0) <= 1e-12)
    record(10, "size adjustment", ok,
           f"adjusted(h2, 1) identity exact; predict(1) = {predict_h2(1)!r}")


def test_criterion_11_performance():
    proc = psutil.Process()
    corpus = synthesize_corpus(SynthSpec(n_pubs=100_000, seed=2024,
                                         skew_mu=1.6, skew_sigma=1.3))
    assert corpus.n_edges >= 1_000_000, corpus.n_edges
    start = time.perf_counter()
    benchmark = build_benchmark(corpus, "0705", WINDOW, OPTIONS)
    report = rec_table(corpus, "I000", "0705", WINDOW, benchmark, OPTIONS)
    h2_all = indirect_h2(corpus, corpus.declared_ids(), OPTIONS)
    elapsed = time.perf_counter() - start
    rss_gb = proc.memory_info().rss / 1e9
    ok = elapsed < 10.0 and rss_gb < 2.0 and report.total_articles > 0 and h2_all.value > 0
    record(11, "performance envelope", ok,
           f"{corpus.n_pubs} pubs / {corpus.n_edges} edges: metric suite "
           f"{elapsed:.2f}s (< 10s), rss {rss_gb:.2f} GB (< 2 GB)")


def test_criterion_12_cli_determinism(tmp_path):
    from test_cli import run_pipeline

    def tree(base: Path):
        return {str(p.relative_to(base)): p.read_bytes()
                for p in sorted(base.rglob("*")) if p.is_file()}

    run_pipeline(tmp_path / "one")
    run_pipeline(tmp_path / "two")
    a, b = tree(tmp_path / "one"), tree(tmp_path / "two")
    ok = a == b and len(a) >= 10
    record(12, "CLI byte determinism", ok,
           f"{len(a)} output files byte-identical across reruns")
