"""Pure-numpy versions of the hot double-sum kernels.

Same signatures and semantics as the compiled module ``_kernels``.
"""
from __future__ import annotations

import numpy as np

_BLOCK = 256


def weighted_double_sum(a, b, x: float, s: complex, log_weight: bool = False) -> complex:
    """sum_{m=1}^{M} sum_{n=1}^{N} a[m-1] b[n-1] (n + m x)^{-s}, optionally
    times log(n + m x)."""
    a = np.ascontiguousarray(a, dtype=complex)
    b = np.ascontiguousarray(b, dtype=complex)
    s = complex(s)
    n = np.arange(1, len(b) + 1, dtype=float)
    real_s = s.imag == 0.0
    acc = 0j
    for start in range(0, len(a), _BLOCK):
        stop = min(start + _BLOCK, len(a))
        m = np.arange(start + 1, stop + 1, dtype=float)
        y = n[None, :] + m[:, None] * x
        ly = np.log(y)
        p = np.exp(-s.real * ly) if real_s else np.exp(-s * ly)
        if log_weight:
            p = p * ly
        acc += complex(a[start:stop] @ (p @ b))
    return acc


def point_sum(weights, y, s: complex, log_weight: bool = False) -> complex:
    """sum_k weights[k] y[k]^{-s} for scattered positive y."""
    weights = np.asarray(weights, dtype=complex)
    y = np.asarray(y, dtype=float)
    ly = np.log(y)
    s = complex(s)
    p = np.exp(-s.real * ly) if s.imag == 0.0 else np.exp(-s * ly)
    if log_weight:
        p = p * ly
    return complex(np.sum(weights * p))
