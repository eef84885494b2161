"""Kernel backend selection.

The compiled module is used when it was built; setting MTZETA_PURE_PYTHON=1
forces the numpy fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("MTZETA_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

weighted_double_sum = _impl.weighted_double_sum
point_sum = _impl.point_sum


def backends() -> dict:
    """Every importable backend by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as _compiled
        out["cython"] = _compiled
    except ImportError:
        pass
    return out
