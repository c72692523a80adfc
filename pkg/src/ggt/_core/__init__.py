"""Kernel selection: compiled extension if available, numpy fallback otherwise.

Set GGT_FORCE_PURE=1 to force the fallback (used by the benchmark and to
cross-check the two implementations).
"""

import os

if os.environ.get("GGT_FORCE_PURE"):
    from . import pure as kernels
else:
    try:
        from . import _speedups as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as kernels

BACKEND = kernels.BACKEND
all_pairs_bfs = kernels.all_pairs_bfs
four_point_gap = kernels.four_point_gap
diff_table = kernels.diff_table
