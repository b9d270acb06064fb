"""Citation indexes over a corpus snapshot.

Definitions implemented here:

* citation count: the number of distinct publications citing a target
  (multiple edges from one citing publication count once);
* h-index of a value multiset: the largest n such that at least n values
  are >= n;
* Hirsch h of a publication set: h over the members' citation counts;
* single-publication h: h over the citation counts of a publication's own
  citers, those counts taken corpus-wide;
* indirect H2 of a set: h over the members' single-publication h values --
  n publications, each cited by n publications that are themselves cited
  at least n times.

Options control which citations count: an optional cap on citing-publication
years (the census year) and optional exclusion of self-citations, detected
as citing and cited sharing at least one institution (the corpus has no
author entities, so institutional overlap is the available approximation).
Options apply identically at both tiers, so sph(p) <= citation_count(p)
holds for every option combination.

All functions are pure reads of an immutable corpus; per-corpus arrays are
cached under the option key after the first call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kernels
from .corpus import Corpus, Window
from .errors import UndefinedCorrelationError, ValidationError


@dataclass(frozen=True)
class MetricOptions:
    """Citation-eligibility switches shared by every metric."""

    exclude_self_citations: bool = False
    citing_year_max: int | None = None

    @classmethod
    def for_window(cls, window: Window, exclude_self_citations: bool = False):
        """Options capping citing years at the window's census year."""
        return cls(exclude_self_citations, window.census_year)


DEFAULT_OPTIONS = MetricOptions()


@dataclass(frozen=True)
class IndexValue:
    """An index value together with the core that attains it.

    The core holds exactly ``value`` members, ordered by descending metric
    value with ties broken by id, every one of which meets the defining
    threshold at n = value.
    """

    value: int
    core: tuple[str, ...]

    def __int__(self) -> int:
        return self.value


def check_options_window(options: MetricOptions, window: Window) -> None:
    """A citing-year cap below the window start would zero every count."""
    if (options.citing_year_max is not None
            and options.citing_year_max < window.start_year):
        raise ValidationError(
            f"citing_year_max {options.citing_year_max} precedes window "
            f"start {window.start_year}")


# -- cached per-corpus arrays -------------------------------------------------


def _self_mask(corpus: Corpus):
    cache = corpus._cache
    if "self_mask" not in cache:
        mask = kernels.self_citation_mask(
            corpus._in_indptr, corpus._in_indices,
            corpus._inst_indptr, corpus._inst_codes)
        mask.setflags(write=False)
        cache["self_mask"] = mask
    return cache["self_mask"]


def _counts(corpus: Corpus, options: MetricOptions):
    key = ("tier1", options.exclude_self_citations, options.citing_year_max)
    cache = corpus._cache
    if key not in cache:
        mask = _self_mask(corpus) if options.exclude_self_citations else None
        arr = kernels.tier1_counts(corpus._in_indptr, corpus._in_indices,
                                   corpus._years, mask, options.citing_year_max)
        arr.setflags(write=False)
        cache[key] = arr
    return cache[key]


def _sph(corpus: Corpus, options: MetricOptions):
    key = ("tier2", options.exclude_self_citations, options.citing_year_max)
    cache = corpus._cache
    if key not in cache:
        mask = _self_mask(corpus) if options.exclude_self_citations else None
        arr = kernels.tier2_h(corpus._in_indptr, corpus._in_indices,
                              corpus._years, mask, options.citing_year_max,
                              _counts(corpus, options))
        arr.setflags(write=False)
        cache[key] = arr
    return cache[key]


def _eligible_citer_indices(corpus: Corpus, i: int, options: MetricOptions):
    lo, hi = corpus._in_indptr[i], corpus._in_indptr[i + 1]
    citers = corpus._in_indices[lo:hi]
    keep = np.ones(citers.shape[0], dtype=bool)
    if options.citing_year_max is not None:
        years = corpus._years[citers]
        keep &= (years < 0) | (years <= options.citing_year_max)
    if options.exclude_self_citations:
        keep &= ~_self_mask(corpus)[lo:hi]
    return citers[keep]


# -- index operations ---------------------------------------------------------


def h_index(values: Iterable[int]) -> int:
    """Largest n such that at least n of the values are >= n (0 if empty)."""
    ranked = sorted((int(v) for v in values), reverse=True)
    h = 0
    for position, value in enumerate(ranked, start=1):
        if value >= position:
            h = position
        else:
            break
    return h


def h_index_keyed(items: Iterable[tuple[str, int]]) -> IndexValue:
    """h-index over (key, value) pairs, returning the attaining core.

    When more items meet the threshold than the index value, the core keeps
    the highest values, remaining ties resolved by key order.
    """
    ranked = sorted(items, key=lambda kv: (-kv[1], kv[0]))
    h = 0
    for position, (_, value) in enumerate(ranked, start=1):
        if value >= position:
            h = position
        else:
            break
    return IndexValue(h, tuple(key for key, _ in ranked[:h]))


def citation_count(corpus: Corpus, pub_id: str,
                   options: MetricOptions = DEFAULT_OPTIONS) -> int:
    """Distinct citing publications of ``pub_id`` under the options."""
    i = corpus.index_of(pub_id)
    return int(_counts(corpus, options)[i])


def citation_counts_all(corpus: Corpus, options: MetricOptions = DEFAULT_OPTIONS):
    """Read-only citation-count array over every publication, in pub_ids order."""
    return _counts(corpus, options)


def _h_over_indices(corpus: Corpus, indices, values) -> IndexValue:
    if indices.shape[0] == 0:
        return IndexValue(0, ())
    vals = values[indices].astype(np.int64)
    order = np.lexsort((indices, -vals))
    ranked = vals[order]
    h = int(np.count_nonzero(ranked >= np.arange(1, ranked.shape[0] + 1)))
    core = tuple(corpus.id_at(int(indices[j])) for j in order[:h])
    return IndexValue(h, core)


def _set_indices(corpus: Corpus, pubs: Iterable[str]):
    return np.array(sorted(corpus.index_of(p) for p in pubs), dtype=np.int64)


def hirsch_of_set(corpus: Corpus, pubs: Iterable[str],
                  options: MetricOptions = DEFAULT_OPTIONS) -> IndexValue:
    """Hirsch h over the citation counts of a publication set."""
    return _h_over_indices(corpus, _set_indices(corpus, pubs), _counts(corpus, options))


def single_publication_h(corpus: Corpus, pub_id: str,
                         options: MetricOptions = DEFAULT_OPTIONS) -> IndexValue:
    """h over the corpus-wide citation counts of ``pub_id``'s citers.

    The core lists the citing publications that attain the index.
    """
    i = corpus.index_of(pub_id)
    counts = _counts(corpus, options)
    citers = _eligible_citer_indices(corpus, i, options)
    return _h_over_indices(corpus, citers.astype(np.int64), counts)


def indirect_h2(corpus: Corpus, pubs: Iterable[str],
                options: MetricOptions = DEFAULT_OPTIONS) -> IndexValue:
    """h over the single-publication h values of a set.

    Equivalently: the largest n such that at least n member publications
    each have n citers that are themselves cited at least n times. The core
    lists the qualifying publications.
    """
    return _h_over_indices(corpus, _set_indices(corpus, pubs), _sph(corpus, options))


def single_publication_h_all(corpus: Corpus,
                             options: MetricOptions = DEFAULT_OPTIONS) -> dict[str, int]:
    """Single-publication h for every corpus member (bulk, kernel-backed)."""
    sph = _sph(corpus, options)
    return {pid: int(sph[i]) for i, pid in enumerate(corpus.pub_ids)}


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation in [-1, 1].

    Raises on length mismatch, fewer than two points, or constant input
    (the correlation is undefined when either variance vanishes).
    """
    if len(xs) != len(ys):
        raise ValidationError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValidationError("correlation needs at least 2 points")
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    syy = math.fsum((y - mean_y) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for constant input")
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))
