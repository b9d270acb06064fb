"""Deterministic synthetic corpora for tests and benchmarks.

Citation counts are drawn from a discretized lognormal (heavy right tail:
many uncited articles, a few very highly cited ones) and realized as edges
from randomly chosen publications of the same or a later year, self-edges
excluded. Everything flows from one seeded generator, so the same spec and
seed reproduce the corpus byte for byte on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import Corpus, Institution, JournalRecord, Publication
from .errors import ValidationError

DEFAULT_KEYWORDS = ("forestry", "silviculture", "timber", "eucalyptus",
                    "ecology", "soils", "genetics", "hydrology")


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of a synthetic corpus; ``seed`` is mandatory."""

    n_pubs: int
    seed: int
    year_start: int = 2005
    year_end: int = 2010
    skew_mu: float = 1.1
    skew_sigma: float = 1.3
    n_journals: int = 8
    n_institutions: int = 12
    field_code: str = "0705"
    unlisted_share: float = 0.05
    keyword_prob: float = 0.35
    keyword_vocab: Sequence[str] = field(default=DEFAULT_KEYWORDS)

    def __post_init__(self):
        if self.n_pubs < 1:
            raise ValidationError("n_pubs must be at least 1")
        if self.year_start > self.year_end:
            raise ValidationError("year_start must not exceed year_end")
        if self.skew_sigma < 0:
            raise ValidationError("skew_sigma must be non-negative")
        if self.n_journals < 1 or self.n_institutions < 1:
            raise ValidationError("need at least one journal and institution")


def _journal_codes(spec: SynthSpec, j: int) -> tuple[str, ...]:
    # A few journals get off-field codes so eligibility logic has targets:
    # one multi-coded, one division sibling, one MD, one excluded.
    division = spec.field_code[:2]
    sibling = division + ("01" if spec.field_code[2:] != "01" else "02")
    other_division = "14" if division != "14" else "15"
    other = other_division + "01"
    if spec.n_journals >= 5:
        if j == 1:
            return (spec.field_code, other)
        if j == 2:
            return (sibling,)
        if j == 3:
            return ("MD",)
        if j == 4:
            return (other,)
    return (spec.field_code,)


def synthesize_corpus(spec: SynthSpec) -> Corpus:
    """Generate an immutable corpus from the spec (same spec -> same corpus)."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n_pubs

    years = np.sort(rng.integers(spec.year_start, spec.year_end + 1, size=n))

    journals = [
        JournalRecord(f"{90000000 + j:08d}", f"Synthetic Journal {j:02d}",
                      _journal_codes(spec, j))
        for j in range(spec.n_journals)
    ]
    institutions = [
        Institution(f"I{k:03d}", f"Institution {k:03d}",
                    country=("AU", "DE", "US", "BR")[k % 4],
                    staff_count=int(rng.integers(5, 400)))
        for k in range(spec.n_institutions)
    ]

    journal_pick = rng.integers(0, spec.n_journals, size=n)
    unlisted = rng.random(n) < spec.unlisted_share
    inst_first = rng.integers(0, spec.n_institutions, size=n)
    inst_second = rng.integers(0, spec.n_institutions, size=n)
    has_second = rng.random(n) < 0.3
    has_kw = rng.random(n) < spec.keyword_prob
    kw_n = rng.integers(1, 4, size=n)
    vocab = tuple(spec.keyword_vocab)
    kw_pick = rng.integers(0, len(vocab), size=(n, 3))

    width = max(6, len(str(n - 1)))
    ids = [f"S{i:0{width}d}" for i in range(n)]
    pubs = []
    for i in range(n):
        insts = {institutions[inst_first[i]].inst_id}
        if has_second[i]:
            insts.add(institutions[inst_second[i]].inst_id)
        kws = frozenset(vocab[k] for k in kw_pick[i, :kw_n[i]]) if has_kw[i] else frozenset()
        pubs.append(Publication(
            ids[i],
            int(years[i]),
            None if unlisted[i] else journals[journal_pick[i]].issn,
            frozenset(insts),
            kws,
        ))

    # Target citation counts, capped by the number of same-or-later-year
    # publications available as citers.
    drawn = np.floor(rng.lognormal(spec.skew_mu, spec.skew_sigma, size=n)).astype(np.int64)
    lo = np.searchsorted(years, years, side="left")
    span = n - lo - 1
    counts = np.minimum(drawn, span)
    np.maximum(counts, 0, out=counts)

    total = int(counts.sum())
    edges: list[tuple[str, str]] = []
    if total:
        cited_rep = np.repeat(np.arange(n, dtype=np.int64), counts)
        lo_rep = lo[cited_rep]
        r = lo_rep + (rng.random(total) * (n - lo_rep - 1)).astype(np.int64)
        r += (r >= cited_rep)  # skip the cited publication itself
        keys = np.unique(r * n + cited_rep)
        citing_idx = keys // n
        cited_idx = keys % n
        edges = [(ids[c], ids[d]) for c, d in zip(citing_idx, cited_idx)]

    return Corpus.from_records(pubs, edges, journals, institutions)
