"""Per-field, per-year citation benchmarks: global means and percentile bars.

The threshold for the top p% of a year is the smallest *observed* citation
count c such that the share of that year's articles with count >= c is at
most p/100 -- a qualifying bar attained by an actual article. Ties at the
bar are included downstream, so realized shares may overshoot the nominal
fraction; reports print realized shares rather than hiding the overshoot.
When no observed count qualifies (every article tied, e.g. an all-zero
year), the bar falls back to the maximum observed count.

RCI (relative citation impact) divides an article's citation count by the
global mean citations per paper (cpp) of its field and year; seven classes
partition the RCI axis at 0.01 / 0.8 / 1.2 / 2 / 4 / 8.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus, Window, journal_matches_field
from .errors import (
    MissingYearError,
    UndefinedRciError,
    UnknownFieldError,
    ValidationError,
)
from .metrics import DEFAULT_OPTIONS, MetricOptions, check_options_window, citation_counts_all

PERCENTILE_LEVELS = (1, 5, 10, 25, 50)


def percentile_threshold(values: Sequence[int], percentile: float) -> int:
    """Minimum observed value qualifying for the top ``percentile`` percent.

    Smallest observed v with share(value >= v) <= percentile/100, falling
    back to the maximum observed value when nothing qualifies.
    """
    n = len(values)
    if n == 0:
        raise ValidationError("percentile threshold of an empty distribution")
    ordered = sorted(values)
    limit = percentile / 100.0
    for v in sorted(set(ordered)):  # ascending: first qualifying is smallest
        at_or_above = n - bisect.bisect_left(ordered, v)
        if at_or_above / n <= limit:
            return v
    return ordered[-1]


@dataclass(frozen=True)
class YearBenchmark:
    """Global calibration for one publication year of a field."""

    year: int
    cpp: float
    n_articles: int
    thresholds: Mapping[int, int]


@dataclass(frozen=True)
class BenchmarkTable:
    """Per-year benchmarks for one field; years without articles are absent."""

    field_code: str
    years: Mapping[int, YearBenchmark]

    def year(self, year: int) -> YearBenchmark:
        try:
            return self.years[year]
        except KeyError:
            raise MissingYearError(year) from None

    def to_json_dict(self) -> dict:
        return {
            "field": self.field_code,
            "years": [
                {
                    "year": yb.year,
                    "cpp": yb.cpp,
                    "n": yb.n_articles,
                    "thresholds": {f"p{p}": yb.thresholds[p] for p in PERCENTILE_LEVELS},
                }
                for _, yb in sorted(self.years.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BenchmarkTable":
        years = {}
        for row in data["years"]:
            thresholds = {p: int(row["thresholds"][f"p{p}"]) for p in PERCENTILE_LEVELS}
            years[int(row["year"])] = YearBenchmark(
                int(row["year"]), float(row["cpp"]), int(row["n"]), thresholds)
        return cls(str(data["field"]), years)


def field_articles_by_year(corpus: Corpus, field_code: str,
                           window: Window) -> dict[int, list[str]]:
    """All corpus articles in the field's journals, grouped by year (global:
    every institution, every declared publication)."""
    if field_code not in corpus.field_codes:
        raise UnknownFieldError(f"no journal carries field code {field_code!r}")
    by_year: dict[int, list[str]] = {}
    for pid in corpus.pub_ids:
        pub = corpus.pub(pid)
        if pub.year is None or not (window.start_year <= pub.year <= window.end_year):
            continue
        if journal_matches_field(corpus.journal_of(pid), field_code, "strict"):
            by_year.setdefault(pub.year, []).append(pid)
    return by_year


def build_benchmark(corpus: Corpus, field_code: str, window: Window,
                    options: MetricOptions = DEFAULT_OPTIONS) -> BenchmarkTable:
    """Global cpp and percentile bars per year of the window."""
    check_options_window(options, window)
    by_year = field_articles_by_year(corpus, field_code, window)
    counts = citation_counts_all(corpus, options)
    years = {}
    for year, pids in sorted(by_year.items()):
        year_counts = [int(counts[corpus.index_of(p)]) for p in pids]
        cpp = sum(year_counts) / len(year_counts)
        thresholds = {p: percentile_threshold(year_counts, p) for p in PERCENTILE_LEVELS}
        years[year] = YearBenchmark(year, cpp, len(year_counts), thresholds)
    return BenchmarkTable(field_code, years)


def render_benchmark_text(table: BenchmarkTable) -> str:
    """Aligned text table: year, mean citations per article, percentile bars.

    cpp is kept at full precision internally but printed to one decimal.
    """
    header = (f"{'year':>4}  {'cpp':>6}  {'n':>6}  "
              + "  ".join(f"{'top ' + str(p) + '%':>7}" for p in PERCENTILE_LEVELS))
    lines = [f"field {table.field_code}", header]
    for _, yb in sorted(table.years.items()):
        lines.append(f"{yb.year:>4}  {yb.cpp:>6.1f}  {yb.n_articles:>6}  "
                     + "  ".join(f"{yb.thresholds[p]:>7}" for p in PERCENTILE_LEVELS))
    return "\n".join(lines) + "\n"


class RciClass(enum.Enum):
    """Seven RCI bins: 0, then (0,0.8), [0.8,1.2), [1.2,2), [2,4), [4,8), [8,inf)."""

    ZERO = "0"
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"

    @property
    def label(self) -> str:
        return self.value


RCI_CLASS_ORDER = (RciClass.ZERO, RciClass.I, RciClass.II, RciClass.III,
                   RciClass.IV, RciClass.V, RciClass.VI)

_RCI_UPPER_BOUNDS = ((0.80, RciClass.I), (1.20, RciClass.II), (2.00, RciClass.III),
                     (4.00, RciClass.IV), (8.00, RciClass.V))


def rci(citations: int, cpp_global: float) -> float:
    """Relative citation impact: citations / global mean citations per paper."""
    if citations < 0:
        raise ValidationError("citation count cannot be negative")
    if cpp_global <= 0:
        raise UndefinedRciError(
            f"RCI undefined for cpp {cpp_global!r}; year belongs in percentile "
            "analysis only")
    return citations / cpp_global


def classify_rci(rci_value: float) -> RciClass:
    """The class whose interval contains the value (exact 0 -> class 0)."""
    if rci_value < 0:
        raise ValidationError("RCI cannot be negative")
    if rci_value == 0:
        return RciClass.ZERO
    for upper, cls in _RCI_UPPER_BOUNDS:
        if rci_value < upper:
            return cls
    return RciClass.VI


@dataclass(frozen=True)
class PercentileMembership:
    """Percentile labels an article qualifies for, plus its uncited flag.

    Membership is cumulative (top 1% implies top 5% and so on). The flag
    lets report aggregation omit uncited articles from percentile counts
    when a zero threshold would otherwise admit them.
    """

    levels: frozenset[int]
    uncited: bool


def percentile_membership(citations: int, year: int,
                          table: BenchmarkTable) -> PercentileMembership:
    """All percentile levels with citations >= the year's threshold."""
    if citations < 0:
        raise ValidationError("citation count cannot be negative")
    yb = table.year(year)
    levels = frozenset(p for p in PERCENTILE_LEVELS if citations >= yb.thresholds[p])
    return PercentileMembership(levels, citations == 0)


# -- distribution curves ------------------------------------------------------


@dataclass(frozen=True)
class YearDistribution:
    year: int
    counts_desc: tuple[int, ...]
    mean: float


@dataclass(frozen=True)
class Distribution:
    """Plot-ready per-year citation curves (rank vs count) with mean markers."""

    field_code: str
    window: str
    years: Mapping[int, YearDistribution]

    def to_csv(self) -> str:
        lines = ["year,rank,citations"]
        for _, yd in sorted(self.years.items()):
            for rank, c in enumerate(yd.counts_desc, start=1):
                lines.append(f"{yd.year},{rank},{c}")
        return "\n".join(lines) + "\n"

    def means_dict(self) -> dict:
        return {
            "field": self.field_code,
            "window": self.window,
            "means": {str(y): yd.mean for y, yd in sorted(self.years.items())},
            "n_articles": {str(y): len(yd.counts_desc) for y, yd in sorted(self.years.items())},
        }


def distribution_export(corpus: Corpus, field_code: str, window: Window,
                        options: MetricOptions = DEFAULT_OPTIONS,
                        pubs: Iterable[str] | None = None) -> Distribution:
    """Descending citation-count curve and mean, per year.

    By default covers the field's global article set; pass ``pubs`` to plot
    a subset (an institution, say) over the same axis.
    """
    check_options_window(options, window)
    counts = citation_counts_all(corpus, options)
    if pubs is None:
        by_year = field_articles_by_year(corpus, field_code, window)
    else:
        if field_code not in corpus.field_codes:
            raise UnknownFieldError(f"no journal carries field code {field_code!r}")
        by_year = {}
        for pid in sorted(pubs):
            pub = corpus.pub(pid)
            if pub.year is None or not (window.start_year <= pub.year <= window.end_year):
                continue
            if journal_matches_field(corpus.journal_of(pid), field_code, "strict"):
                by_year.setdefault(pub.year, []).append(pid)
    years = {}
    for year, pids in sorted(by_year.items()):
        year_counts = sorted((int(counts[corpus.index_of(p)]) for p in pids), reverse=True)
        mean = sum(year_counts) / len(year_counts)
        years[year] = YearDistribution(year, tuple(year_counts), mean)
    return Distribution(field_code, str(window), years)
