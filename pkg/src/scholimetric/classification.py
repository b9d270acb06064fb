"""Field-code eligibility: explicit/implicit/excluded partitions and bounds.

A journal admits an article into a 4-digit field submission explicitly when
it carries that code, implicitly when it carries another code of the same
2-digit division or the MD multidisciplinary marker, and not at all
otherwise. Because multi-coded journals let the submitting institution pick
the code, a submission's size is bounded below by single-coded journals and
above by every explicitly or implicitly eligible article.

The reassignment rule (articles whose content mostly belongs to the target
field may be re-coded into it) is modeled as keyword-set intersection over
the articles' keyword fields; content-share judgments are not recoverable
from bibliographic records.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Iterable

from .corpus import Corpus
from .errors import ValidationError

_TARGET_RE = re.compile(r"^[0-9]{4}$")

BUCKET_ORDER = ("explicit", "implicit", "excluded", "unlisted")


@dataclass(frozen=True)
class EligibilityPartition:
    """Disjoint, exhaustive split of a publication set for one target code."""

    target_code: str
    explicit: frozenset[str]
    implicit: frozenset[str]
    excluded: frozenset[str]
    unlisted: frozenset[str]

    def bucket_sizes(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in BUCKET_ORDER}

    @property
    def total(self) -> int:
        return sum(self.bucket_sizes().values())


@dataclass(frozen=True)
class SubmissionBounds:
    """How large a hand-crafted submission can be.

    ``minimal`` counts articles in journals carrying only the target code
    (unavoidably submitted there); ``explicit`` counts every article whose
    journal carries the target code; ``maximal`` adds the implicitly
    eligible articles. Both upper readings are reported so either convention
    is available.
    """

    minimal: int
    explicit: int
    maximal: int


def _check_target(target_code: str) -> None:
    if not _TARGET_RE.match(target_code):
        raise ValidationError(f"target code must be 4 digits, got {target_code!r}")


def partition(corpus: Corpus, pubs: Iterable[str],
              target_code: str) -> EligibilityPartition:
    """Assign each publication to exactly one eligibility bucket."""
    _check_target(target_code)
    division = target_code[:2]
    explicit, implicit, excluded, unlisted = set(), set(), set(), set()
    for pid in pubs:
        journal = corpus.journal_of(pid)
        if journal is None:
            unlisted.add(pid)
        elif target_code in journal.for_codes:
            explicit.add(pid)
        elif any(code == "MD" or code.startswith(division)
                 for code in journal.for_codes):
            implicit.add(pid)
        else:
            excluded.add(pid)
    return EligibilityPartition(target_code, frozenset(explicit), frozenset(implicit),
                                frozenset(excluded), frozenset(unlisted))


def submission_bounds(corpus: Corpus, pubs: Iterable[str],
                      target_code: str) -> SubmissionBounds:
    """Minimal and maximal submission sizes under journal-code ambiguity."""
    part = partition(corpus, pubs, target_code)
    minimal = sum(
        1 for pid in part.explicit
        if corpus.journal_of(pid).for_codes == (target_code,)
    )
    return SubmissionBounds(minimal, len(part.explicit),
                            len(part.explicit) + len(part.implicit))


def expand_reassignment(corpus: Corpus, base_pubs: Iterable[str],
                        keyword_set: Iterable[str],
                        within: Iterable[str] | None = None) -> frozenset[str]:
    """Base set plus every candidate whose keywords intersect the given set.

    Candidates default to the whole corpus; pass ``within`` to confine the
    expansion (e.g. to one institution's window). Monotone and idempotent.
    """
    keywords = frozenset(k.lower() for k in keyword_set)
    if not keywords:
        raise ValidationError("keyword set must be non-empty")
    candidates = corpus.pub_ids if within is None else within
    expanded = set(base_pubs)
    for pid in candidates:
        if corpus.pub(pid).keywords & keywords:
            expanded.add(pid)
    return frozenset(expanded)


def render_partition_csv(part: EligibilityPartition) -> str:
    """CSV report ``bucket,count,share`` over the four buckets."""
    total = part.total
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bucket", "count", "share"])
    for name in BUCKET_ORDER:
        count = len(getattr(part, name))
        share = count / total if total else 0.0
        writer.writerow([name, count, f"{share:.4f}"])
    return buf.getvalue()
