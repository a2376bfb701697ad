"""Kernel selection: compiled `_speedups` when available, pure Python otherwise.

Set ``LEAVITTPATH_PURE=1`` to force the pure-Python kernels.  The compiled
bitmask routines only handle graphs of at most 64 vertices; larger graphs
silently use the pure versions (which run on arbitrary-width Python ints).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("LEAVITTPATH_PURE"):
    _compiled = None
else:
    try:
        from . import _speedups as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

IMPLEMENTATION = "compiled" if _compiled is not None else "pure"

_MASK_LIMIT = 64


def reach_masks(n: int, adj: list[int]) -> list[int]:
    if _compiled is not None and n <= _MASK_LIMIT:
        return _compiled.reach_masks(n, adj)
    return _kernel_py.reach_masks(n, adj)


def scc_labels(n: int, indptr: list[int], indices: list[int]) -> list[int]:
    if _compiled is not None:
        return _compiled.scc_labels(n, indptr, indices)
    return _kernel_py.scc_labels(n, indptr, indices)


def saturation_fixpoint(
    n: int, mask: int, reg_vs: list[int], reg_targets: list[int]
) -> tuple[int, int]:
    if _compiled is not None and n <= _MASK_LIMIT:
        return _compiled.saturation_fixpoint(n, mask, reg_vs, reg_targets)
    return _kernel_py.saturation_fixpoint(n, mask, reg_vs, reg_targets)
