"""Brute-force reference implementations, independent of the package kernels.

Everything here works from raw (citing, cited) pairs and per-publication
metadata using literal definition scans: an index takes value n only if at
least n items meet the >= n condition, checked by counting, for every
candidate n. Deliberately slow and simple.
"""

from __future__ import annotations

import json
from collections import defaultdict
from itertools import combinations


def h_scan(values) -> int:
    """Definition scan: largest n in [0, len] with at least n values >= n."""
    vals = list(values)
    for n in range(len(vals), -1, -1):
        if sum(1 for v in vals if v >= n) >= n:
            return n
    return 0


class RawGraph:
    """Citation graph rebuilt from raw pairs + metadata for oracle checks."""

    def __init__(self, meta: dict[str, tuple[int | None, frozenset]], edges):
        self.meta = dict(meta)
        self.edges = set()
        for citing, cited in edges:
            self.edges.add((citing, cited))
            for endpoint in (citing, cited):
                self.meta.setdefault(endpoint, (None, frozenset()))
        self.in_map: dict[str, set[str]] = defaultdict(set)
        for citing, cited in self.edges:
            self.in_map[cited].add(citing)

    @classmethod
    def from_corpus(cls, corpus) -> "RawGraph":
        meta = {pid: (corpus.pub(pid).year, corpus.pub(pid).institution_ids)
                for pid in corpus.pub_ids}
        return cls(meta, corpus.edge_pairs())

    @classmethod
    def from_files(cls, pubs_path, cites_path) -> "RawGraph":
        meta = {}
        with open(pubs_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    rec = json.loads(line)
                    meta[rec["id"]] = (rec["year"],
                                      frozenset(rec.get("institutions", [])))
        edges = []
        with open(cites_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    rec = json.loads(line)
                    edges.append((rec["citing"], rec["cited"]))
        return cls(meta, edges)

    def _eligible(self, citing: str, cited: str, exclude_self: bool,
                  year_cap: int | None) -> bool:
        year, insts = self.meta[citing]
        if year_cap is not None and year is not None and year > year_cap:
            return False
        if exclude_self and insts & self.meta[cited][1]:
            return False
        return True

    def count(self, pid: str, exclude_self=False, year_cap=None) -> int:
        return sum(1 for q in self.in_map.get(pid, ())
                   if self._eligible(q, pid, exclude_self, year_cap))

    def _counts_map(self, exclude_self, year_cap) -> dict[str, int]:
        key = (exclude_self, year_cap)
        cache = getattr(self, "_count_cache", None)
        if cache is None:
            cache = self._count_cache = {}
        if key not in cache:
            cache[key] = {p: self.count(p, exclude_self, year_cap) for p in self.meta}
        return cache[key]

    def _citer_counts(self, pid, exclude_self, year_cap) -> list[int]:
        counts = self._counts_map(exclude_self, year_cap)
        return [counts[q] for q in self.in_map.get(pid, ())
                if self._eligible(q, pid, exclude_self, year_cap)]

    def sph(self, pid: str, exclude_self=False, year_cap=None) -> int:
        return h_scan(self._citer_counts(pid, exclude_self, year_cap))

    def hirsch(self, pids, exclude_self=False, year_cap=None) -> int:
        counts = self._counts_map(exclude_self, year_cap)
        return h_scan(counts[p] for p in pids)

    def h2(self, pids, exclude_self=False, year_cap=None) -> int:
        """Largest n such that >= n members have >= n citers cited >= n times.

        Scans n upward, checking the defining predicate at every step by
        literal counting; the predicate is monotone in n, so the first
        failure certifies the maximum.
        """
        pids = list(pids)
        per_pub = {p: self._citer_counts(p, exclude_self, year_cap) for p in pids}
        best = 0
        for n in range(1, len(pids) + 1):
            qualifying = sum(
                1 for p in pids
                if sum(1 for c in per_pub[p] if c >= n) >= n)
            if qualifying >= n:
                best = n
            else:
                break
        return best


def threshold_scan(values, percentile) -> int:
    """Try every observed candidate against the qualifying-bar predicate."""
    n = len(values)
    qualifying = [c for c in sorted(set(values))
                  if sum(1 for v in values if v >= c) / n <= percentile / 100.0]
    return min(qualifying) if qualifying else max(values)


def best_mean_subset(rcis: dict[str, float], k: int) -> float:
    """Exhaustive maximum mean RCI over all size-k subsets."""
    best = None
    for combo in combinations(sorted(rcis), k):
        mean = sum(rcis[p] for p in combo) / k
        if best is None or mean > best:
            best = mean
    return best


def pearson_textbook(xs, ys) -> float:
    """Sum-form product-moment formula."""
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    syy = sum(y * y for y in ys)
    sxy = sum(x * y for x, y in zip(xs, ys))
    num = n * sxy - sx * sy
    den = ((n * sxx - sx * sx) * (n * syy - sy * sy)) ** 0.5
    return num / den
