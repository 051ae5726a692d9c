"""Kernel dispatch: the compiled extension when available, else pure Python.

Set ``SPHERECOLOR_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py
from ._kernels_py import BudgetExceeded, decode

_impl = _kernels_py
BACKEND = "python"
if os.environ.get("SPHERECOLOR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:
        pass

enumerate_colorings = _impl.enumerate_colorings
component_labels = _impl.component_labels
dual_bfs = _impl.dual_bfs
list_triangles = _impl.list_triangles
frozen_search = _impl.frozen_search

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "component_labels",
    "decode",
    "dual_bfs",
    "enumerate_colorings",
    "frozen_search",
    "list_triangles",
]
