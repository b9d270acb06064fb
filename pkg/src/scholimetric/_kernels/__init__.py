"""Kernel backend selection.

Prefers the compiled extension; falls back to the numpy implementation when
the extension was not built. SCHOLIMETRIC_PURE=1 forces the fallback (used
by the kernel benchmark and equivalence tests).
"""

import os

if os.environ.get("SCHOLIMETRIC_PURE"):
    from . import _fallback as _backend
else:
    try:
        from . import _speedups as _backend  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _backend

BACKEND = _backend.BACKEND_NAME
self_citation_mask = _backend.self_citation_mask
tier1_counts = _backend.tier1_counts
tier2_h = _backend.tier2_h
