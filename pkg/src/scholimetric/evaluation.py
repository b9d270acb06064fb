"""Evaluation artifacts: committee tables, gaming analysis, band comparisons.

The committee report aggregates, for one publication set: mean RCI (with the
median alongside, since skewed citation distributions make the arithmetic
mean a poor summary), RCI-class shares, cumulative percentile shares, the
uncited share, totals, Hirsch h and indirect H2. The gaming analysis mirrors
how a submission can be tuned: keyword reassignment widens the pool, then a
fixed-size selection keeps only the highest-RCI articles -- the tabular
statistics move sharply while H2 stays put whenever its core survives the
cut.
"""

from __future__ import annotations

import dataclasses
import math
import re
import statistics
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .benchmarks import (
    PERCENTILE_LEVELS,
    BenchmarkTable,
    RCI_CLASS_ORDER,
    classify_rci,
    percentile_membership,
    percentile_threshold,
    rci,
)
from .classification import expand_reassignment
from .corpus import Corpus, Window, select
from .errors import (
    BandSchemeError,
    SubmissionPoolError,
    UndefinedCorrelationError,
    ValidationError,
)
from .metrics import (
    DEFAULT_OPTIONS,
    MetricOptions,
    check_options_window,
    citation_counts_all,
    hirsch_of_set,
    indirect_h2,
    pearson_correlation,
)

CLASS_LABELS = tuple(c.label for c in RCI_CLASS_ORDER)


@dataclass(frozen=True)
class MetricReport:
    """One committee-table column for a publication set."""

    label: str
    field_code: str | None
    window: str
    total_articles: int
    n_rci_defined: int
    mean_rci: float
    median_rci: float
    rci_class_shares: Mapping[str, float]
    percentile_shares: Mapping[int, float]
    uncited_share: float
    h: int
    h2: int

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "field": self.field_code,
            "window": self.window,
            "total_articles": self.total_articles,
            "n_rci_defined": self.n_rci_defined,
            "mean_rci": self.mean_rci,
            "median_rci": self.median_rci,
            "rci_class_shares": dict(self.rci_class_shares),
            "percentile_shares": {str(p): s for p, s in self.percentile_shares.items()},
            "uncited_share": self.uncited_share,
            "hirsch_h": self.h,
            "indirect_h2": self.h2,
        }


def article_rci(corpus: Corpus, pub_id: str, benchmark: BenchmarkTable,
                options: MetricOptions = DEFAULT_OPTIONS) -> float | None:
    """RCI of one article, or None when its year's cpp is zero.

    Raises MissingYearError when the benchmark lacks the article's year.
    """
    counts = citation_counts_all(corpus, options)
    yb = benchmark.year(corpus.pub(pub_id).year)
    if yb.cpp <= 0:
        return None
    return rci(int(counts[corpus.index_of(pub_id)]), yb.cpp)


def report_for_set(corpus: Corpus, pubs: Iterable[str], benchmark: BenchmarkTable,
                   window: Window, options: MetricOptions = DEFAULT_OPTIONS,
                   label: str = "set",
                   field_code: str | None = None) -> MetricReport:
    """Aggregate the committee statistics for an explicit publication set.

    Articles in years with cpp = 0 have no defined RCI; they are excluded
    from the mean and the class shares (whose denominator is the defined
    count, so shares sum to 1) but still appear in totals, the uncited share
    and the percentile block. Uncited articles never count toward percentile
    shares, even when a zero threshold would admit them.
    """
    check_options_window(options, window)
    members = sorted(pubs)
    field = field_code if field_code is not None else benchmark.field_code
    total = len(members)
    if total == 0:
        return MetricReport(label, field, str(window), 0, 0, 0.0, 0.0,
                            {c: 0.0 for c in CLASS_LABELS},
                            {p: 0.0 for p in PERCENTILE_LEVELS}, 0.0, 0, 0)

    counts = citation_counts_all(corpus, options)
    rcis: list[float] = []
    class_counts = {c: 0 for c in CLASS_LABELS}
    level_counts = {p: 0 for p in PERCENTILE_LEVELS}
    uncited = 0
    for pid in members:
        pub = corpus.pub(pid)
        c = int(counts[corpus.index_of(pid)])
        yb = benchmark.year(pub.year)
        if c == 0:
            uncited += 1
        membership = percentile_membership(c, pub.year, benchmark)
        if not membership.uncited:
            for p in membership.levels:
                level_counts[p] += 1
        if yb.cpp > 0:
            value = rci(c, yb.cpp)
            rcis.append(value)
            class_counts[classify_rci(value).label] += 1

    n_defined = len(rcis)
    mean_rci = sum(rcis) / n_defined if n_defined else 0.0
    median_rci = statistics.median(rcis) if n_defined else 0.0
    class_shares = {c: (class_counts[c] / n_defined if n_defined else 0.0)
                    for c in CLASS_LABELS}
    level_shares = {p: level_counts[p] / total for p in PERCENTILE_LEVELS}
    return MetricReport(
        label, field, str(window), total, n_defined, mean_rci, median_rci,
        class_shares, level_shares, uncited / total,
        hirsch_of_set(corpus, members, options).value,
        indirect_h2(corpus, members, options).value,
    )


def rec_table(corpus: Corpus, institution: str, field_code: str, window: Window,
              benchmark: BenchmarkTable, options: MetricOptions = DEFAULT_OPTIONS,
              eligibility: str = "strict") -> MetricReport:
    """Committee report for one institution's eligible articles."""
    pubs = select(corpus, window, institutions=[institution],
                  field_code=field_code, eligibility=eligibility)
    return report_for_set(corpus, pubs, benchmark, window, options,
                          label=institution, field_code=field_code)


# -- selective submission -----------------------------------------------------


@dataclass(frozen=True)
class OptimizeResult:
    """Outcome of picking the best fixed-size submission from a pool."""

    subset: frozenset[str]
    before: MetricReport
    after: MetricReport
    core_survived: bool


def optimize_submission(corpus: Corpus, pool: Iterable[str], min_size: int,
                        benchmark: BenchmarkTable, window: Window,
                        options: MetricOptions = DEFAULT_OPTIONS) -> OptimizeResult:
    """The exactly-min_size subset maximizing mean RCI, with before/after reports.

    The mean over a fixed-size subset is maximized by the top-k articles by
    RCI, so the selection is exact, not heuristic. Ties at the cut break by
    publication id; articles with undefined RCI rank below all defined ones.
    The result also records whether the pool's H2 core survived the cut
    (when it does, the indirect H2 is unchanged by the selection).
    """
    members = sorted(pool)
    if min_size < 1:
        raise ValidationError("min_size must be at least 1")
    if len(members) < min_size:
        raise SubmissionPoolError(
            f"pool has {len(members)} publications, need at least {min_size}")

    def sort_key(pid: str):
        value = article_rci(corpus, pid, benchmark, options)
        return (1, 0.0, pid) if value is None else (0, -value, pid)

    chosen = frozenset(sorted(members, key=sort_key)[:min_size])
    before = report_for_set(corpus, members, benchmark, window, options, label="pool")
    after = report_for_set(corpus, chosen, benchmark, window, options, label="selected")
    core = indirect_h2(corpus, members, options).core
    return OptimizeResult(chosen, before, after, set(core) <= chosen)


@dataclass(frozen=True)
class GamingResult:
    """Three-case submission comparison: all-inclusive / strict / selective."""

    all_inclusive: MetricReport
    strict: MetricReport
    selective: MetricReport
    selected: frozenset[str]
    core_survived: bool

    @property
    def mean_rci_ratio(self) -> float:
        """Selective over strict mean RCI (how far selection inflates it)."""
        if self.strict.mean_rci == 0:
            return math.inf if self.selective.mean_rci > 0 else 1.0
        return self.selective.mean_rci / self.strict.mean_rci

    def reports(self) -> tuple[MetricReport, MetricReport, MetricReport]:
        return (self.all_inclusive, self.strict, self.selective)

    def to_json_dict(self) -> dict:
        return {
            "cases": {
                "all_inclusive": self.all_inclusive.to_json_dict(),
                "strict": self.strict.to_json_dict(),
                "selective": self.selective.to_json_dict(),
            },
            "selected": sorted(self.selected),
            "core_survived": self.core_survived,
            "mean_rci_ratio_selective_vs_strict": self.mean_rci_ratio,
            "objective": "mean_rci",
            "note": ("selection maximizes mean RCI only; class and percentile "
                     "shares are reported, not optimized (top-k by RCI maximizes "
                     "threshold shares within a year, cross-year mixes may differ)"),
        }


def gaming_analysis(corpus: Corpus, institution: str, field_code: str,
                    window: Window, keywords: Iterable[str], min_size: int,
                    benchmark: BenchmarkTable,
                    options: MetricOptions = DEFAULT_OPTIONS) -> GamingResult:
    """Reproduce the three submission cases for one institution.

    strict: articles in journals carrying the field code. all-inclusive:
    strict plus keyword-reassigned articles from the institution's window
    (any journal). selective: the best min_size articles of the widened pool
    by RCI.
    """
    strict_set = select(corpus, window, institutions=[institution],
                        field_code=field_code, eligibility="strict")
    candidates = select(corpus, window, institutions=[institution],
                        field_code=None, eligibility="all")
    widened = expand_reassignment(corpus, strict_set, keywords, within=sorted(candidates))
    strict_report = report_for_set(corpus, strict_set, benchmark, window, options,
                                   label="strict", field_code=field_code)
    wide_report = report_for_set(corpus, widened, benchmark, window, options,
                                 label="all_inclusive", field_code=field_code)
    result = optimize_submission(corpus, widened, min_size, benchmark, window, options)
    selective_report = dataclasses.replace(result.after, label="selective",
                                           field_code=field_code)
    return GamingResult(wide_report, strict_report, selective_report,
                        result.subset, result.core_survived)


# -- external-rating comparison ------------------------------------------------


@dataclass(frozen=True)
class Band:
    label: str
    low: int
    high: int | None  # None = open-ended top


class BandScheme:
    """Ordered, disjoint H2 bands covering 0..infinity.

    Parsed from ``"4;5;6-7;8+"``: single values, closed ranges, and a
    trailing ``+`` for an open top. The first band is widened down to 0 and
    the last up to infinity so the bands are exhaustive; interior gaps are
    an error.
    """

    def __init__(self, bands: Sequence[Band]):
        if not bands:
            raise ValidationError("band scheme needs at least one band")
        widened = list(bands)
        widened[0] = Band(widened[0].label, 0, widened[0].high)
        widened[-1] = Band(widened[-1].label, widened[-1].low, None)
        for left, right in zip(widened, widened[1:]):
            if left.high is None or right.low != left.high + 1:
                raise BandSchemeError(
                    f"bands must be contiguous; {left.label!r} then {right.label!r}")
        self.bands: tuple[Band, ...] = tuple(widened)

    @classmethod
    def parse(cls, spec: str) -> "BandScheme":
        bands = []
        for token in spec.split(";"):
            token = token.strip()
            m = re.fullmatch(r"(\d+)-(\d+)", token)
            if m:
                low, high = int(m.group(1)), int(m.group(2))
                if high < low:
                    raise BandSchemeError(f"empty band {token!r}")
                bands.append(Band(token, low, high))
                continue
            m = re.fullmatch(r"(\d+)\+?", token)
            if m:
                value = int(m.group(1))
                bands.append(Band(token, value, None if token.endswith("+") else value))
                continue
            raise BandSchemeError(f"cannot parse band {token!r}")
        return cls(bands)

    def band_index(self, value: int) -> int:
        if value < 0:
            raise ValidationError("H2 values are non-negative")
        for i, band in enumerate(self.bands):
            if value >= band.low and (band.high is None or value <= band.high):
                return i
        raise AssertionError("exhaustive bands cannot miss")  # pragma: no cover

    def labels(self) -> tuple[str, ...]:
        return tuple(b.label for b in self.bands)


@dataclass(frozen=True)
class ConfusionResult:
    ratings: tuple[str, ...]
    band_labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    percent_correct: float

    def to_csv(self) -> str:
        lines = ["rating," + ",".join(self.band_labels)]
        for rating, row in zip(self.ratings, self.matrix):
            lines.append(f"{rating}," + ",".join(str(c) for c in row))
        lines.append(f"percent_correct,{int(self.percent_correct + 0.5)}")
        return "\n".join(lines) + "\n"


def _rating_sort_key(rating: str):
    try:
        return (0, int(rating), "")
    except ValueError:
        return (1, 0, rating)


def confusion_matrix(pairs: Iterable[tuple[str | int, int]],
                     scheme: BandScheme) -> ConfusionResult:
    """Cross-tabulate external ratings against H2 bands.

    Ratings are opaque ordinal labels; the i-th rating level (ascending)
    corresponds to the i-th band, so the diagonal counts agreements. The
    number of distinct rating levels must equal the number of bands.
    """
    entries = [(str(r), int(h)) for r, h in pairs]
    if not entries:
        raise ValidationError("no rating pairs given")
    levels = sorted({r for r, _ in entries}, key=_rating_sort_key)
    if len(levels) != len(scheme.bands):
        raise ValidationError(
            f"{len(levels)} rating levels vs {len(scheme.bands)} bands; "
            "the scheme must provide one band per level")
    row_of = {r: i for i, r in enumerate(levels)}
    matrix = [[0] * len(scheme.bands) for _ in levels]
    for rating, h2 in entries:
        matrix[row_of[rating]][scheme.band_index(h2)] += 1
    correct = sum(matrix[i][i] for i in range(len(levels)))
    percent = 100.0 * correct / len(entries)
    return ConfusionResult(tuple(levels), scheme.labels(),
                           tuple(tuple(row) for row in matrix), percent)


# -- institutional comparisons --------------------------------------------------


def h2_percentile_table(values: Mapping[str, int],
                        percentiles: Sequence[int] = PERCENTILE_LEVELS) -> dict[int, int]:
    """Percentile bars over institutions' H2 values (same rule as benchmarks)."""
    if not values:
        raise ValidationError("need at least one institution")
    observed = list(values.values())
    return {p: percentile_threshold(observed, p) for p in percentiles}


def size_adjusted_h2(h2: int, staff_count: int) -> float:
    """H2 minus the natural log of staff numbers (team-size adjustment)."""
    if staff_count < 1:
        raise ValidationError("staff_count must be at least 1")
    return h2 - math.log(staff_count)


def predict_h2(staff_count: int) -> float:
    """Reference log fit of H2 against staff numbers: 3.0 + 1.05 ln(N)."""
    if staff_count < 1:
        raise ValidationError("staff_count must be at least 1")
    return 3.0 + 1.05 * math.log(staff_count)


@dataclass(frozen=True)
class ScatterResult:
    """Per-institution (h, H2) pairs plus their correlation when defined."""

    points: tuple[tuple[str, int, int], ...]
    correlation: float | None

    def to_csv(self) -> str:
        lines = ["institution,h,h2"]
        lines.extend(f"{i},{h},{h2}" for i, h, h2 in self.points)
        return "\n".join(lines) + "\n"


def h_vs_h2_scatter(corpus: Corpus, institution_sets: Mapping[str, Iterable[str]],
                    options: MetricOptions = DEFAULT_OPTIONS) -> ScatterResult:
    """Hirsch h against indirect H2 for each institution's publication set.

    The correlation is omitted (None) below two institutions or when either
    column is constant.
    """
    points = []
    for inst in sorted(institution_sets):
        pubs = institution_sets[inst]
        points.append((inst,
                       hirsch_of_set(corpus, pubs, options).value,
                       indirect_h2(corpus, pubs, options).value))
    correlation = None
    if len(points) >= 2:
        try:
            correlation = pearson_correlation([p[1] for p in points],
                                              [p[2] for p in points])
        except UndefinedCorrelationError:
            correlation = None
    return ScatterResult(tuple(points), correlation)


# -- text rendering --------------------------------------------------------------


def render_rec_table_text(reports: Sequence[MetricReport], title: str | None = None) -> str:
    """Aligned text table, one column per report.

    Every share row is labeled for what it is (percent of outputs within an
    RCI class; cumulative percent at or above a percentile bar) rather than
    leaving averages and totals to be guessed apart.
    """
    if not reports:
        raise ValidationError("nothing to render")

    def pct(x: float) -> str:
        return f"{100 * x:.0f}%"

    rows: list[tuple[str, list[str]]] = [
        ("Mean RCI", [f"{r.mean_rci:.2f}" for r in reports]),
        ("Median RCI", [f"{r.median_rci:.2f}" for r in reports]),
    ]
    for label in CLASS_LABELS:
        rows.append((f"RCI class {label} (% of outputs)",
                     [pct(r.rci_class_shares[label]) for r in reports]))
    for p in PERCENTILE_LEVELS:
        name = "Median" if p == 50 else f"Top {p}%"
        rows.append((f"{name} (cumulative % of outputs)",
                     [pct(r.percentile_shares[p]) for r in reports]))
    rows.append(("Uncited articles (% of outputs)", [pct(r.uncited_share) for r in reports]))
    rows.append(("Total indexed articles (count)", [str(r.total_articles) for r in reports]))
    rows.append(("Hirsch h-index", [str(r.h) for r in reports]))
    rows.append(("Indirect H2 index", [str(r.h2) for r in reports]))

    name_width = max(len(name) for name, _ in rows)
    col_widths = [max(len(r.label), max(len(row[1][i]) for row in rows))
                  for i, r in enumerate(reports)]
    lines = []
    if title:
        lines.append(title)
    header = " " * name_width + "  " + "  ".join(
        r.label.rjust(col_widths[i]) for i, r in enumerate(reports))
    lines.append(header)
    for name, cells in rows:
        lines.append(name.ljust(name_width) + "  " + "  ".join(
            cell.rjust(col_widths[i]) for i, cell in enumerate(cells)))
    if any(r.n_rci_defined < r.total_articles for r in reports):
        lines.append("note: articles in zero-cpp years carry no RCI; they are "
                     "counted in totals and percentiles only")
    lines.append("note: citation distributions are highly skewed; prefer the "
                 "median RCI and percentile rows to the mean")
    return "\n".join(lines) + "\n"
