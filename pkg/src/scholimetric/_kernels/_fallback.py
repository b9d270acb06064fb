"""Pure-numpy implementations of the hot citation kernels.

Used when the compiled extension is unavailable (or forced via
SCHOLIMETRIC_PURE=1). Matches `_speedups` exactly; only speed differs.

All three kernels walk the in-adjacency CSR of the citation graph:
``in_indptr``/``in_indices`` map each cited publication to its distinct
citing publications. ``years`` holds -1 for publications of unknown year
(materialized externals), which are never filtered by a year cap.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "fallback"


def self_citation_mask(in_indptr, in_indices, inst_indptr, inst_codes):
    """Boolean mask over in-edges: True where citing and cited share an institution."""
    n = in_indptr.shape[0] - 1
    n_edges = in_indices.shape[0]
    if n_edges == 0 or inst_codes.shape[0] == 0:
        return np.zeros(n_edges, dtype=bool)

    cited = np.repeat(np.arange(n, dtype=np.int64), np.diff(in_indptr))
    n_codes = int(inst_codes.max()) + 1
    inst_deg = np.diff(inst_indptr)

    # Encode (edge, institution) pairs for both endpoints and intersect.
    citing_deg = inst_deg[in_indices]
    edge_ids_citing = np.repeat(np.arange(n_edges, dtype=np.int64), citing_deg)
    code_starts = inst_indptr[in_indices]
    offsets = np.arange(citing_deg.sum(), dtype=np.int64) - np.repeat(
        np.cumsum(citing_deg) - citing_deg, citing_deg)
    citing_keys = edge_ids_citing * n_codes + inst_codes[
        np.repeat(code_starts, citing_deg) + offsets]

    cited_deg = inst_deg[cited]
    edge_ids_cited = np.repeat(np.arange(n_edges, dtype=np.int64), cited_deg)
    code_starts = inst_indptr[cited]
    offsets = np.arange(cited_deg.sum(), dtype=np.int64) - np.repeat(
        np.cumsum(cited_deg) - cited_deg, cited_deg)
    cited_keys = edge_ids_cited * n_codes + inst_codes[
        np.repeat(code_starts, cited_deg) + offsets]

    shared = np.intersect1d(citing_keys, cited_keys, assume_unique=False)
    mask = np.zeros(n_edges, dtype=bool)
    mask[(shared // n_codes).astype(np.int64)] = True
    return mask


def _edge_keep(in_indices, years, self_mask, year_cap):
    keep = np.ones(in_indices.shape[0], dtype=bool)
    if year_cap is not None:
        citing_years = years[in_indices]
        keep &= (citing_years < 0) | (citing_years <= year_cap)
    if self_mask is not None:
        keep &= ~self_mask
    return keep


def tier1_counts(in_indptr, in_indices, years, self_mask, year_cap):
    """Distinct eligible citing publications per publication (int32)."""
    n = in_indptr.shape[0] - 1
    keep = _edge_keep(in_indices, years, self_mask, year_cap)
    cited = np.repeat(np.arange(n, dtype=np.int64), np.diff(in_indptr))
    return np.bincount(cited[keep], minlength=n).astype(np.int32)


def tier2_h(in_indptr, in_indices, years, self_mask, year_cap, counts):
    """Per-publication h over the eligible citers' own citation counts.

    For each publication, sort its citers' counts descending and count the
    prefix where value >= rank; grouped over the whole graph in one lexsort.
    """
    n = in_indptr.shape[0] - 1
    keep = _edge_keep(in_indices, years, self_mask, year_cap)
    cited = np.repeat(np.arange(n, dtype=np.int64), np.diff(in_indptr))[keep]
    vals = counts[in_indices[keep]].astype(np.int64)
    if cited.shape[0] == 0:
        return np.zeros(n, dtype=np.int32)

    order = np.lexsort((-vals, cited))
    grp = cited[order]
    v = vals[order]
    sizes = np.bincount(grp, minlength=n)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    rank = np.arange(v.shape[0], dtype=np.int64) - starts[grp] + 1
    qualifies = v >= rank
    return np.bincount(grp[qualifies], minlength=n).astype(np.int32)
