"""Double-exponential quadrature on (0, 1) and (0, inf), plus the numerical
differentiation helpers used for z-limits.

Integrands are called with numpy arrays of abscissas and must return arrays
(real or complex) of the same shape.  Node tables are built once per level
and cached, so results are bit-identical across runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .results import DomainError, EvalResult

Integrand = Callable[[np.ndarray], np.ndarray]

_V_MAX = 5.0        # tanh-sinh parameter range [-V_MAX, V_MAX]
_TAIL_V = (-5.0, 3.2)  # exp-sinh range for the (split, inf) piece


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature controls.

    Level ``l`` uses step ``2**-l`` in the double-exponential variable.
    """

    scheme: str = "tanh_sinh_01"
    max_level: int = 9
    abs_tol: float = 1e-12
    split_point: float = 1.0
    rel_tol: float = 1e-14
    min_level: int = 3

    def __post_init__(self):
        if self.scheme not in ("tanh_sinh_01", "split_semiinfinite"):
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not 0 <= self.max_level <= 14:
            raise DomainError("max_level must lie in [0, 14]")
        if not self.split_point > 0:
            raise DomainError("split_point must be positive")


DEFAULT_SPEC = QuadratureSpec()
DEFAULT_INF_SPEC = QuadratureSpec(scheme="split_semiinfinite")


def _level_params(level: int, lo: float, hi: float) -> np.ndarray:
    h = 2.0 ** -level
    if level == 0:
        k = np.arange(math.ceil(lo), math.floor(hi) + 1)
        return k.astype(float)
    k0 = math.ceil((lo / h - 1) / 2)
    k1 = math.floor((hi / h - 1) / 2)
    return (2 * np.arange(k0, k1 + 1) + 1) * h


@lru_cache(maxsize=None)
def tanh_sinh_nodes(level: int) -> tuple:
    """New (u, 1-u, w) on (0, 1) introduced at ``level``; w is du/dv."""
    v = _level_params(level, -_V_MAX, _V_MAX)
    q = 0.5 * math.pi * np.sinh(v)
    u = 1.0 / (1.0 + np.exp(-2.0 * q))
    uc = 1.0 / (1.0 + np.exp(2.0 * q))
    e = np.exp(-2.0 * np.abs(q))
    w = math.pi * np.cosh(v) * e / (1.0 + e) ** 2
    for arr in (u, uc, w):
        arr.setflags(write=False)
    return u, uc, w


@lru_cache(maxsize=None)
def exp_sinh_nodes(level: int) -> tuple:
    """New (s, None, w) on (0, inf) for s = exp(pi/2 sinh v)."""
    v = _level_params(level, *_TAIL_V)
    q = 0.5 * math.pi * np.sinh(v)
    s = np.exp(q)
    w = 0.5 * math.pi * np.cosh(v) * s
    s.setflags(write=False)
    w.setflags(write=False)
    return s, None, w


def _run_levels(pieces, spec: QuadratureSpec, with_complement: bool = False) -> EvalResult:
    """Trapezoid sums over refining levels for a list of (f, node_fn, a, scale).

    With ``with_complement`` the integrand also receives b - t computed
    without cancellation (tanh-sinh pieces only).
    """
    acc = 0j
    absacc = 0.0
    history = []
    err = math.inf
    bad = False
    for level in range(spec.max_level + 1):
        h = 2.0 ** -level
        for f, node_fn, offset, scale in pieces:
            x, xc, w = node_fn(level)
            t = offset + scale * x
            with np.errstate(all="ignore"):
                if with_complement:
                    vals = np.asarray(f(t, scale * xc))
                else:
                    vals = np.asarray(f(t))
            contrib = w * scale * vals
            if not np.all(np.isfinite(contrib)):
                bad = True
                contrib = np.where(np.isfinite(contrib), contrib, 0.0)
            acc += complex(np.sum(contrib))
            absacc += float(np.sum(np.abs(contrib)))
        est = h * acc
        history.append(est)
        if level >= 2:
            d1 = abs(history[-1] - history[-2])
            d2 = abs(history[-2] - history[-3])
            if d1 == 0.0:
                err = 0.0
            elif d2 == 0.0 or d1 >= d2:
                err = d1
            else:
                err = min(d1, d1 * d1 / d2)
            err = max(err, 16 * 2.2e-16 * h * absacc)
            tol = max(spec.abs_tol, spec.rel_tol * abs(est))
            if level >= spec.min_level and err <= tol:
                return EvalResult(est, err, not bad)
    tol = max(spec.abs_tol, spec.rel_tol * abs(history[-1]))
    return EvalResult(history[-1], err, (err <= tol) and not bad)


def integrate_interval(f: Integrand, a: float, b: float, spec: QuadratureSpec | None = None,
                       with_complement: bool = False) -> EvalResult:
    """tanh-sinh quadrature of f over (a, b).

    If ``with_complement`` is set, f is called as f(t, b - t).
    """
    spec = spec or DEFAULT_SPEC
    return _run_levels([(f, tanh_sinh_nodes, a, b - a)], spec, with_complement)


def integrate_01(f: Integrand, spec: QuadratureSpec | None = None,
                 with_complement: bool = False) -> EvalResult:
    return integrate_interval(f, 0.0, 1.0, spec, with_complement)


def integrate_0inf(f: Integrand, spec: QuadratureSpec | None = None) -> EvalResult:
    """Integral over (0, inf): tanh-sinh on (0, split] and exp-sinh beyond."""
    spec = spec or DEFAULT_INF_SPEC
    c = spec.split_point
    return _run_levels([(f, tanh_sinh_nodes, 0.0, c), (f, exp_sinh_nodes, c, 1.0)], spec)


def mellin_log_singular(f: Integrand, z, spec: QuadratureSpec | None = None, *,
                        log_power: int = 0, variable: str = "t") -> EvalResult:
    """Integral over (0, 1) of (log 1/t)^{z-1} (log log 1/t)^p f(t) dt.

    Computed as the (0, inf) integral of y^{z-1} (log y)^p e^{-y} f(e^{-y}).
    With ``variable="y"`` the callable receives y instead of t.
    """
    z = complex(z)
    if not z.real > 0:
        raise DomainError("Mellin weight needs Re(z) > 0")
    zm1 = z - 1.0
    real_weight = zm1.imag == 0

    def g(y):
        ly = np.log(y)
        wgt = np.exp((zm1.real if real_weight else zm1) * ly - y)
        if log_power:
            wgt = wgt * ly ** log_power
        inner = f(y) if variable == "y" else f(np.exp(-y))
        return wgt * inner

    return integrate_0inf(g, spec)


# ---------------------------------------------------------------------------
# numerical differentiation of analytic functions

def complex_step(f: Callable[[complex], complex], x0: float, h: float = 1e-20) -> float:
    """f'(x0) for f real on the real axis, via Im f(x0 + i h)/h."""
    return complex(f(complex(x0, h))).imag / h


def central_derivative(f: Callable[[complex], complex], z0, order: int = 1,
                       h: float = 1e-3, levels: int = 4) -> EvalResult:
    """order-th derivative by central differences with Richardson extrapolation."""
    z0 = complex(z0)

    def stencil(step):
        tot = 0j
        for k in range(order + 1):
            tot += (-1) ** k * math.comb(order, k) * complex(f(z0 + (order / 2 - k) * step))
        return tot / step ** order

    table = [[stencil(h / 2 ** i)] for i in range(levels)]
    for j in range(1, levels):
        for i in range(j, levels):
            fac = 4.0 ** j
            table[i].append((fac * table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1))
    best = table[-1][-1]
    err = abs(best - table[-2][-1]) if levels > 1 else abs(best) * 1e-8
    return EvalResult(best, err)


def taylor_coefficients(f: Callable[[complex], complex], z0, n: int,
                        radius: float = 0.25, points: int = 32) -> np.ndarray:
    """First n+1 Taylor coefficients of an analytic f about z0 (Cauchy formula)."""
    z0 = complex(z0)
    ang = 2 * math.pi * np.arange(points) / points
    nodes = z0 + radius * np.exp(1j * ang)
    vals = np.array([complex(f(p)) for p in nodes])
    coef = np.fft.fft(vals) / points
    return coef[: n + 1] / radius ** np.arange(n + 1)
