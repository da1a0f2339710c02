"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure
Python module is.  Set ``ACYCLIC_PLANAR_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pure

BACKEND = "python"
first_bicolored_cycle = _pure.first_bicolored_cycle
search_acyclic = _pure.search_acyclic

if os.environ.get("ACYCLIC_PLANAR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        first_bicolored_cycle = _ckernels.first_bicolored_cycle
        search_acyclic = _ckernels.search_acyclic

__all__ = ["BACKEND", "first_bicolored_cycle", "search_acyclic"]
