"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``CLASSCOVER_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("CLASSCOVER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

INT64_LIMIT = 1 << 62


def fits_int64(*seqs) -> bool:
    return all(abs(v) < INT64_LIMIT for seq in seqs for v in seq)


def slab_runs(bx, by, rx, ry):
    if _impl is not _kernels_py and not fits_int64(bx, by, rx, ry):
        return _kernels_py.slab_runs(bx, by, rx, ry)
    return _impl.slab_runs(bx, by, rx, ry)


def maximal_masks(masks):
    return _impl.maximal_masks(masks)
