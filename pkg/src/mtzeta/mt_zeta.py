"""Mordell-Tornheim type double series and the integrals tied to them.

Theta(z, x) = sum_{n,m>=1} 1/(n m (n + m x)^{z-1}) and its three-exponent
form, the alternating version, scriptF_z(x; u, v), J(z, x), J(x), T(x), the
character integrals J_r and K_r, the periodic-function version of J_r, and
the Crandall continuation W_{c,d}(z, x) of

    sum_{n,m>=1} e(m c/r) e(n d/r) / (m n (n + m x)^{z-1}).

Every direct double sum carries a rigorous truncation bound (or, for
log-weighted sums, an estimate) in ``abs_err``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
from scipy import special as sps

from . import characters as ch
from . import kernels
from . import special_functions as sf
from .quadrature import (QuadratureSpec, central_derivative, integrate_01,
                         integrate_0inf, mellin_log_singular)
from .results import ConvergenceError, DomainError, EvalResult, PoleError, total

TWO_PI = 2.0 * math.pi


def _check_x(x) -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError("x must be a positive real number")
        x = x.real
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("x must be a positive real number")
    return x


def _inf_spec(x: float, spec: QuadratureSpec | None) -> QuadratureSpec:
    if spec is not None:
        return spec
    return QuadratureSpec(scheme="split_semiinfinite", split_point=min(1.0, 1.0 / x))


def _tpow(t, e: complex):
    return np.exp(e * np.log(t)) if e.imag else t ** e.real


def _scaled(res: EvalResult, c: complex) -> EvalResult:
    return EvalResult(c * res.value, abs(c) * res.abs_err, res.converged)


# ---------------------------------------------------------------------------
# weights and truncated double sums

@dataclass(frozen=True)
class SeriesWeight:
    """Coefficients w_n, n >= 1: periodic (values for n = 1..r) or q^n."""

    periodic: tuple | None = None
    ratio: complex | None = None

    def __post_init__(self):
        if (self.periodic is None) == (self.ratio is None):
            raise DomainError("give exactly one of periodic values or a ratio")
        if self.ratio is not None and not abs(self.ratio) < 1:
            raise DomainError("geometric weights need |q| < 1")
        if self.periodic is not None:
            object.__setattr__(self, "periodic", tuple(complex(v) for v in self.periodic))

    @classmethod
    def constant(cls) -> "SeriesWeight":
        return cls(periodic=(1.0,))

    @classmethod
    def of_unit(cls, u) -> "SeriesWeight":
        """Weight u^n, as a periodic table when u is a root of unity."""
        u = complex(u)
        if abs(u) < 1:
            return cls(ratio=u)
        if abs(abs(u) - 1) > 1e-14:
            raise DomainError("weight base must satisfy |u| <= 1")
        frac = Fraction(cmath.phase(u) / TWO_PI).limit_denominator(1000)
        if abs(complex(ch.root_of_unity(frac)) - u) > 1e-12:
            raise DomainError("unimodular weights must be roots of unity")
        r = frac.denominator
        return cls(periodic=tuple(ch.root_of_unity(frac * n) for n in range(1, r + 1)))

    def array(self, n: int) -> np.ndarray:
        if self.periodic is not None:
            p = np.array(self.periodic, dtype=complex)
            reps = -(-n // len(p))
            return np.tile(p, reps)[:n]
        return self.ratio ** np.arange(1, n + 1)

    @property
    def bound(self) -> float:
        if self.periodic is not None:
            return max(abs(v) for v in self.periodic)
        return abs(self.ratio)

    @property
    def zero_mean(self) -> bool:
        if self.periodic is None:
            return False
        s = abs(sum(self.periodic))
        return s <= 1e-12 * (1 + sum(abs(v) for v in self.periodic))

    @property
    def spread(self) -> float:
        """max |S_i - S_j| over partial sums S_0 = 0, S_k = w_1 + ... + w_k."""
        ps = np.concatenate([[0], np.cumsum(np.array(self.periodic, dtype=complex))])
        return float(np.max(np.abs(ps[:, None] - ps[None, :])))

    def abs_tail(self, p: float, start: int) -> float:
        """Upper bound for sum_{n > start} |w_n| n^{-p}, or inf."""
        if self.ratio is not None:
            q = abs(self.ratio)
            if q == 0:
                return 0.0
            if p < 0:
                return math.inf
            return q ** (start + 1) / (1 - q) * (start + 1) ** (-p)
        if p <= 1:
            return math.inf
        return self.bound * float(sps.zeta(p, start + 1))


@dataclass(frozen=True)
class DoubleSumTruncation:
    """Box 1 <= n <= n_max, 1 <= m <= m_max and a bound for what lies outside."""

    n_max: int
    m_max: int
    tail_estimate: float


_THETA_GRID = np.linspace(0.0, 1.0, 81)


def _amgm_tail(wa: SeriesWeight, wb: SeriesWeight, pm: float, pn: float, x: float,
               sigma: float, N: int, M: int) -> float:
    # n + m x >= n^th (m x)^(1-th), which factorizes the majorant
    if sigma < 0:
        return math.inf
    best_n = best_m = math.inf
    for th in _THETA_GRID:
        tn = wb.abs_tail(pn + sigma * th, N)
        if math.isfinite(tn):
            fm = wa.abs_tail(pm + sigma * (1 - th), 0)
            best_n = min(best_n, x ** (-sigma * (1 - th)) * tn * fm)
        tm = wa.abs_tail(pm + sigma * th, M)
        if math.isfinite(tm):
            fn = wb.abs_tail(pn + sigma * (1 - th), 0)
            best_m = min(best_m, x ** (-sigma * th) * tm * fn)
    return best_n + best_m


def _variation_const(pn: int, s: complex, sigma: float) -> float:
    """V[t^{-p}(t+a)^{-s}] on [N, inf) is at most this times N^{-p}(N+a)^{-sigma}."""
    return (1.0 if pn == 1 else 0.0) + abs(s) / sigma


def _abel_tail(wa: SeriesWeight, wb: SeriesWeight, pn: int, x: float, s: complex,
               N: int, M: int) -> float:
    """Summation-by-parts bound when both weights are zero-mean periodic and
    the summand is a_m b_n / (m n^pn (n + m x)^s)."""
    sigma = s.real
    da, db = wa.spread, wb.spread
    m = np.arange(1, M + 1, dtype=float)
    am = np.abs(wa.array(M))
    r1 = db * _variation_const(pn, s, sigma) * float(np.sum(am / m * N ** (-pn) * (N + m * x) ** (-sigma)))
    brack = abs(s) * _variation_const(pn, s + 1, sigma + 1) / sigma + _variation_const(pn, s, sigma)
    r2 = da * db * brack / (M * (1 + M * x) ** sigma)
    return r1 + r2


def _tail_bound(wa, wb, pm: complex, pn: complex, x, s: complex, N, M, log_weight) -> float:
    sigma = s.real
    if log_weight:
        # log y <= y^eps/(e eps), so the log-weighted sum is bounded by the
        # unweighted one at sigma - eps
        best = math.inf
        for frac in (0.1, 0.25, 0.5):
            eps = frac * sigma
            b = _tail_bound(wa, wb, pm, pn, x, complex(s.real - eps, s.imag), N, M, False)
            best = min(best, b / (math.e * eps) * (1 + eps))
        return best
    out = _amgm_tail(wa, wb, pm.real, pn.real, x, sigma, N, M)
    if (sigma > 0 and wa.zero_mean and wb.zero_mean and pm == 1 and pn in (0, 1)):
        out = min(out, _abel_tail(wa, wb, int(pn.real), x, s, N, M))
    return out


_BOX_SIZES = (250, 500, 1000, 2000, 4000, 8000, 16000)


def direct_double_sum(wa: SeriesWeight, wb: SeriesWeight, pm, pn, x, s, *,
                      log_weight: bool = False, tol: float = 1e-12,
                      max_terms: int = 4000) -> tuple:
    """sum_{m,n} a_m b_n m^{-pm} n^{-pn} (n + m x)^{-s} [log(n + m x)] over a
    square box grown until the tail bound meets ``tol`` or hits ``max_terms``.

    Returns (EvalResult, DoubleSumTruncation).  ``converged`` reports whether
    the bound met ``tol``.
    """
    x = _check_x(x)
    pm, pn, s = complex(pm), complex(pn), complex(s)
    if max_terms < 1:
        raise DomainError("max_terms must be positive")
    sizes = [k for k in _BOX_SIZES if k < max_terms] + [max_terms]
    for K in sizes:
        tail = _tail_bound(wa, wb, pm, pn, x, s, K, K, log_weight)
        if tail <= tol:
            break
    m = np.arange(1, K + 1, dtype=float)
    a = wa.array(K) * np.exp(-pm * np.log(m))
    b = wb.array(K) * np.exp(-pn * np.log(m))
    val = kernels.weighted_double_sum(a, b, x, s, log_weight)
    err = tail + 1e-15 * (abs(val) + 1.0)
    res = EvalResult(val, err, bool(tail <= tol))
    return res, DoubleSumTruncation(K, K, float(tail))


# ---------------------------------------------------------------------------
# Theta(z, x)

def _check_z(z, lower: float, what: str) -> complex:
    z = complex(z)
    if not z.real > lower:
        raise DomainError(f"{what} needs Re(z) > {lower:g}")
    return z


def _theta_integral(z: complex, x: float, spec) -> EvalResult:
    e = z - 2.0

    def f(y):
        return _tpow(y, e) * sf.log_one_minus_exp(y) * sf.log_one_minus_exp(x * y)

    res = integrate_0inf(f, _inf_spec(x, spec))
    return _scaled(res, sf.rgamma(z - 1.0))


def theta(z, x, method: str = "integral", spec: QuadratureSpec | None = None,
          tol: float = 1e-12, max_terms: int = 4000) -> EvalResult:
    """Theta(z, x) for Re z > 1 by its Mellin integral or by direct summation."""
    z = _check_z(z, 1.0, "Theta(z, x)")
    x = _check_x(x)
    if method == "integral":
        return _theta_integral(z, x, spec)
    if method == "direct":
        one = SeriesWeight.constant()
        res, _ = direct_double_sum(one, one, 1, 1, x, z - 1, tol=tol, max_terms=max_terms)
        return EvalResult(res.value, res.abs_err, True)
    raise DomainError(f"unknown method {method!r}")


def theta_truncation(z, x, tol: float = 1e-12, max_terms: int = 4000) -> DoubleSumTruncation:
    z = _check_z(z, 1.0, "Theta(z, x)")
    one = SeriesWeight.constant()
    return direct_double_sum(one, one, 1, 1, x, z - 1, tol=tol, max_terms=max_terms)[1]


def theta_continued(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """Theta(z, x) continued to Re z > 0, z != 1.

    The factor log(1 - e^{-y}) is split as log((1 - e^{-y})/y) + log y; the
    log y part integrates in closed form.
    """
    z = _check_z(z, 0.0, "continued Theta")
    x = _check_x(x)
    if z == 1:
        raise PoleError("Theta(z, x) has a double pole at z = 1")
    e = z - 2.0

    def f(y):
        return _tpow(y, e) * sf.log_expm1_ratio(y) * sf.log_one_minus_exp(x * y)

    res = integrate_0inf(f, _inf_spec(x, spec))
    zz = sf.riemann_zeta(z)
    zp = sf.riemann_zeta(z, 1)
    lx = math.log(x)
    closed = x ** (1 - z) * (lx * zz.value - sf.digamma(z - 1.0) * zz.value - zp.value)
    rg = sf.rgamma(z - 1.0)
    err = abs(rg) * res.abs_err + abs(x ** (1 - z)) * (zz.abs_err * (lx + 5) + zp.abs_err) \
        + 1e-15 * abs(closed)
    return EvalResult(rg * res.value + closed, err, res.converged)


def theta_laurent_exact(x) -> tuple:
    """(c_-2, c_-1, c_0) of Theta(z, x) about z = 1."""
    x = _check_x(x)
    g = sf.EULER_GAMMA
    lx = math.log(x)
    return (2.0, 2 * g - lx, g * g - g * lx - math.pi ** 2 / 6)


def theta_laurent_fit(x, eps=(1e-2, 5e-3, 2.5e-3)) -> tuple:
    """Fit (c_-2, c_-1, c_0) from Theta(1 +- eps, x).

    With g(e) = e^2 Theta(1 + e), the even part of g is c_-2 + c_0 e^2 + O(e^4)
    and the odd part over e is c_-1 + O(e^2); both are extrapolated in e^2.
    """
    x = _check_x(x)
    eps = np.asarray(eps, dtype=float)
    even, odd = [], []
    for e in eps:
        gp = e * e * theta_continued(1 + e, x).value.real
        gm = e * e * theta_continued(1 - e, x).value.real
        even.append(0.5 * (gp + gm))
        odd.append(0.5 * (gp - gm) / e)
    k = len(eps)
    vand = np.vander(eps ** 2, k, increasing=True)
    ce = np.linalg.solve(vand, np.array(even))
    co = np.linalg.solve(vand, np.array(odd))
    return (float(ce[0]), float(co[0]), float(ce[1]))


def theta_general(s1, s2, s3, x, tol: float = 1e-12, max_terms: int = 4000) -> EvalResult:
    """sum_{n,m} n^{-s1} m^{-s2} (n + m x)^{-s3} by truncated summation."""
    s1, s2, s3 = complex(s1), complex(s2), complex(s3)
    x = _check_x(x)
    if not ((s1 + s3).real > 1 and (s2 + s3).real > 1 and (s1 + s2 + s3).real > 2):
        raise DomainError("Theta(s1, s2, s3, x) needs Re(s1+s3) > 1, Re(s2+s3) > 1, Re(s1+s2+s3) > 2")
    if min(s1.real, s2.real, s3.real) < 0:
        raise DomainError("direct summation supports exponents with Re >= 0")
    one = SeriesWeight.constant()
    res, _ = direct_double_sum(one, one, s2, s1, x, s3, tol=tol, max_terms=max_terms)
    return EvalResult(res.value, res.abs_err, True)


def alternating_theta(z, x, method: str = "integral", spec: QuadratureSpec | None = None,
                      tol: float = 1e-12, max_terms: int = 4000) -> EvalResult:
    """sum_{n,m} (-1)^{n+m} / (n m (n + m x)^{z-1}) for Re z > 1."""
    z = _check_z(z, 1.0, "alternating Theta")
    x = _check_x(x)
    if method == "integral":
        e = z - 2.0

        def f(y):
            return _tpow(y, e) * np.log1p(np.exp(-y)) * np.log1p(np.exp(-x * y))

        res = integrate_0inf(f, _inf_spec(x, spec))
        return _scaled(res, sf.rgamma(z - 1.0))
    if method == "direct":
        alt = SeriesWeight(periodic=(-1.0, 1.0))
        res, _ = direct_double_sum(alt, alt, 1, 1, x, z - 1, tol=tol, max_terms=max_terms)
        return EvalResult(res.value, res.abs_err, True)
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# scriptF_z(x; u, v)

def _script_f_integral(z: complex, x: float, u: complex, v: complex, spec) -> EvalResult:
    if v == 0 or u == 0:
        return EvalResult(0j, 0.0)
    if u.imag == 0 and u.real > 1:
        raise DomainError("scriptF integral needs u outside (1, inf)")
    if v.imag == 0 and v.real >= 1 and not (v.real == 1 and z.real > 1):
        raise DomainError("scriptF integral needs v outside [1, inf) (v = 1 allowed for Re z > 1)")
    if not z.real > 0:
        raise DomainError("scriptF integral needs Re(z) > 0")
    e = z - 1.0

    def f(y):
        if u == 1:
            num = sf.log_one_minus_exp(x * y)
        else:
            num = np.log1p(-u * np.exp(-x * y))
        if v == 1:
            with np.errstate(over="ignore"):
                kern = 1.0 / np.expm1(y)
        else:
            ev = v * np.exp(-y)
            kern = ev / (1.0 - ev)
        return _tpow(y, e) * num * kern

    res = integrate_0inf(f, _inf_spec(x, spec))
    return _scaled(res, sf.rgamma(z))


def script_f(z, x, u, v, method: str = "integral", spec: QuadratureSpec | None = None,
             tol: float = 1e-12, max_terms: int = 4000) -> EvalResult:
    """scriptF_z(x; u, v) = -sum_{m,n} u^m v^n / (m (n + m x)^z)."""
    z = complex(z)
    x = _check_x(x)
    u, v = complex(u), complex(v)
    if method == "integral":
        return _script_f_integral(z, x, u, v, spec)
    if method != "series":
        raise DomainError(f"unknown method {method!r}")
    if abs(u) > 1 + 1e-14 or abs(v) > 1 + 1e-14:
        raise DomainError("scriptF series needs |u| <= 1 and |v| <= 1")
    both_inside = abs(u) < 1 and abs(v) < 1
    if not (z.real > 1 or (both_inside and z.real > 0)):
        raise DomainError("scriptF series needs Re z > 1 (Re z > 0 when |u|, |v| < 1)")
    if u == 0 or v == 0:
        return EvalResult(0j, 0.0)
    wa, wb = SeriesWeight.of_unit(u), SeriesWeight.of_unit(v)
    res, _ = direct_double_sum(wa, wb, 1, 0, x, z, tol=tol, max_terms=max_terms)
    return EvalResult(-res.value, res.abs_err, res.converged or res.abs_err < 1e-6)


# ---------------------------------------------------------------------------
# J(z, x), J(x), T(x)

def j_cap(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """J(z, x) = -(1/Gamma(z)) int_0^1 (log 1/y)^{z-1} log(1 + y^x)/(1 + y) dy."""
    z = _check_z(z, 0.0, "J(z, x)")
    x = _check_x(x)

    def f(y):
        return np.log1p(np.exp(-x * y)) / (1.0 + np.exp(-y))

    res = mellin_log_singular(f, z, _inf_spec(x, spec), variable="y")
    return _scaled(res, -sf.rgamma(z))


def j_classic(x, spec: QuadratureSpec | None = None) -> EvalResult:
    """J(x) = int_0^1 log(1 + t^x)/(1 + t) dt."""
    res = j_cap(1.0, x, spec)
    return EvalResult(-res.value.real, res.abs_err, res.converged)


def t_classic(x, spec: QuadratureSpec | None = None) -> EvalResult:
    """T(x) = int_0^1 arctan(t^x)/(1 + t^2) dt."""
    x = _check_x(x)
    res = integrate_01(lambda t: np.arctan(t ** x) / (1.0 + t * t), spec)
    return EvalResult(res.value.real, res.abs_err, res.converged)


# ---------------------------------------------------------------------------
# J_r and K_r

def _mellin_y(f, z: complex, x: float, spec, log_power: int = 0) -> EvalResult:
    return mellin_log_singular(f, z, _inf_spec(x, spec), log_power=log_power, variable="y")


def _jr_integrand(chi1, chi2, x: float):
    fek = ch.fekete_reduce(chi2)

    def f(y):
        return fek.ratio(np.exp(-y)) * ch.b_chi_from_power(chi1, np.exp(-x * y))

    return f


def _unit(frac: Fraction) -> complex:
    return complex(ch.root_of_unity(frac))


def j_r(z, x, chi1, chi2, method: str = "quadrature", spec: QuadratureSpec | None = None) -> EvalResult:
    """J_{r, chi1, chi2}(z, x) for Re z > 0."""
    z = _check_z(z, 0.0, "J_r")
    x = _check_x(x)
    r = chi1.modulus
    if chi2.modulus != r:
        raise DomainError("characters must share a modulus")
    if r < 2:
        raise DomainError("J_r needs r >= 2")
    if method == "quadrature":
        res = _mellin_y(_jr_integrand(chi1, chi2, x), z, x, spec)
        return _scaled(res, sf.rgamma(z))
    if method == "scriptF_sum":
        return periodic_j(z, x, ch.as_periodic(chi1), ch.as_periodic(chi2), "scriptF_sum", spec)
    raise DomainError(f"unknown method {method!r}")


def k_r(z, chi1, chi2, spec: QuadratureSpec | None = None) -> EvalResult:
    """K_{r, chi1, chi2}(z): the J_r integral at x = 1 with an extra log log(1/t)."""
    z = _check_z(z, 1.0, "K_r")
    if chi1.modulus != chi2.modulus:
        raise DomainError("characters must share a modulus")
    res = _mellin_y(_jr_integrand(chi1, chi2, 1.0), z, 1.0, spec, log_power=1)
    return _scaled(res, sf.rgamma(z))


def periodic_j(z, x, f1, f2, method: str = "scriptF_sum", spec: QuadratureSpec | None = None) -> EvalResult:
    """J_{r, f1, f2}(z, x) for r-periodic f1, f2 with f(r) = 0."""
    z = _check_z(z, 0.0, "J_r")
    x = _check_x(x)
    f1, f2 = ch.as_periodic(f1), ch.as_periodic(f2)
    r = f1.period
    if f2.period != r:
        raise DomainError("periodic functions must share a period")
    if method == "scriptF_sum":
        parts, coeffs = [], []
        for j in range(1, r):
            if f1(j) == 0:
                continue
            for k in range(1, r):
                if f2(k) == 0:
                    continue
                parts.append(script_f(z, x, _unit(Fraction(j, r)), _unit(Fraction(k, r)),
                                      "integral", spec))
                coeffs.append(f1(j) * f2(k))
        return total(parts, coeffs) if parts else EvalResult(0j, 0.0)
    if method == "quadrature":
        ks = [k for k in range(1, r) if f2(k) != 0]
        js = [j for j in range(1, r) if f1(j) != 0]
        if not ks or not js:
            return EvalResult(0j, 0.0)

        def f(y):
            t = np.exp(-y)
            s = np.exp(-x * y)
            left = sum(f2(k) / (_unit(Fraction(-k, r)) - t) for k in ks)
            right = sum(f1(j) * np.log1p(-_unit(Fraction(j, r)) * s) for j in js)
            return left * right

        res = _mellin_y(f, z, x, spec)
        return _scaled(res, sf.rgamma(z))
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Crandall continuation

def crandall_delta_bound(r: int, x: float) -> float:
    return min(TWO_PI / r, TWO_PI / (r * x))


@dataclass(frozen=True)
class CrandallParams:
    """Controls for the Crandall split.  ``delta=None`` picks 0.6 of the bound."""

    delta: float | None = None
    u_max: int = 80
    v_max: int = 80
    nm_tail_tol: float = 1e-18

    def __post_init__(self):
        if self.u_max < 20 or self.v_max < 20:
            raise DomainError("u_max and v_max must be at least 20")
        if self.u_max + self.v_max > 168:
            raise DomainError("u_max + v_max must not exceed 168")
        if not 0 < self.nm_tail_tol < 1:
            raise DomainError("nm_tail_tol must lie in (0, 1)")

    def resolve(self, r: int, x: float) -> "CrandallParams":
        bound = crandall_delta_bound(r, x)
        if self.delta is None:
            return replace(self, delta=0.6 * bound)
        if not 0 < self.delta < bound:
            raise DomainError(f"delta must lie in (0, {bound:.15g})")
        return self


def _as_coeffs(obj, r: int | None = None) -> np.ndarray:
    """Values f(1..r) of a character, periodic function or raw table."""
    if isinstance(obj, (ch.DirichletCharacter, ch.PeriodicFunction)):
        return np.array(ch.as_periodic(obj).values, dtype=complex)
    vals = np.asarray(obj, dtype=complex)
    if r is not None and len(vals) != r:
        raise DomainError("coefficient table has the wrong length")
    return vals


def _gauss_table(f: np.ndarray) -> np.ndarray:
    r = len(f)
    out = np.zeros(r, dtype=complex)
    for m in range(1, r + 1):
        out[m - 1] = sum(f[c - 1] * _unit(Fraction(m * c, r)) for c in range(1, r + 1) if f[c - 1] != 0)
    return out


def _periodic_zeta_table(f: np.ndarray, q: float, umax: int) -> np.ndarray:
    r = len(f)
    out = np.zeros(umax + 1, dtype=complex)
    for c in range(1, r):
        if f[c - 1] != 0:
            out += f[c - 1] * sf.periodic_zeta_scaled_series(c / r, q, umax)
    return out


def _crandall_coeffs(w: complex, kmax: int) -> np.ndarray:
    """1/((w + k) Gamma(w)) = (w)_k / Gamma(w + k + 1) for k = 0..kmax (entire in w)."""
    out = np.zeros(kmax + 1, dtype=complex)
    poch = 1.0 + 0j
    for k in range(kmax + 1):
        if k:
            poch *= w + k - 1
        out[k] = poch * sf.rgamma(w + k + 1)
    return out


def crandall_sum(f1, f2, z, x, params: CrandallParams | None = None) -> EvalResult:
    """sum_{c,d} f1(c) f2(d) W_{c,d}(z, x) for r-periodic f1, f2 with f(r) = 0,
    i.e. the continuation of sum_{m,n} g1(m) g2(n)/(m n (n + m x)^{z-1})."""
    a = _as_coeffs(f1)
    b = _as_coeffs(f2)
    r = len(a)
    if len(b) != r:
        raise DomainError("coefficient tables must share a period")
    if r < 2:
        raise DomainError("needs period r >= 2")
    if a[-1] != 0 or b[-1] != 0:
        raise DomainError("coefficients must vanish at c = r")
    z = complex(z)
    x = _check_x(x)
    p = (params or CrandallParams()).resolve(r, x)
    delta = p.delta
    w = z - 1.0
    g1, g2 = _gauss_table(a), _gauss_table(b)

    # incomplete-gamma weighted sum over n + m x <= T
    t_cut = -math.log(p.nm_tail_tol) + 5 + 2 * max(0.0, -w.real) + 2 * math.log1p(abs(w))
    top = t_cut / delta
    mm, nn = [], []
    for m in range(1, int((top - 1) / x) + 1):
        nmax = int(top - m * x)
        if nmax >= 1:
            nn.append(np.arange(1, nmax + 1))
            mm.append(np.full(nmax, m))
    if mm:
        mi = np.concatenate(mm)
        ni = np.concatenate(nn)
        y = ni + mi * x
        wts = g1[(mi - 1) % r] * g2[(ni - 1) % r] / (mi * ni)
        q = sf.regularized_upper_gamma_array(w, y * delta)
        first = kernels.point_sum(wts * q, y, w)
        first_scale = float(np.sum(np.abs(wts * q) * y ** (-w.real)))
    else:
        first, first_scale = 0j, 0.0

    # entire power-series part
    p1 = _periodic_zeta_table(a, x * delta, p.u_max) * (-1.0) ** np.arange(p.u_max + 1)
    p2 = _periodic_zeta_table(b, delta, p.v_max) * (-1.0) ** np.arange(p.v_max + 1)
    coef = _crandall_coeffs(w, p.u_max + p.v_max)
    idx = np.add.outer(np.arange(p.u_max + 1), np.arange(p.v_max + 1))
    mat = np.outer(p1, p2) * coef[idx]
    second = complex(np.sum(mat)) * cmath.exp(w * math.log(delta))
    trunc = float(np.max(np.abs(mat[-3:, :])) + np.max(np.abs(mat[:, -3:]))) * abs(delta ** w) * 10
    scale = first_scale + float(np.sum(np.abs(mat))) * abs(delta ** w)
    err = trunc + 8 * sf.EPS * scale + p.nm_tail_tol * (1 + abs(first))
    return EvalResult(first + second, err, trunc < 1e-13 * max(1.0, scale))


def crandall_w(r: int, c: int, d: int, z, x, params: CrandallParams | None = None) -> EvalResult:
    """W_{c,d}(z, x): continuation to all z of
    sum_{m,n} e(m c/r) e(n d/r) / (m n (n + m x)^{z-1})."""
    if not (isinstance(r, int) and r >= 2):
        raise DomainError("r must be an integer >= 2")
    if not (1 <= c <= r - 1 and 1 <= d <= r - 1):
        raise DomainError("c and d must lie in 1..r-1")
    f1 = np.zeros(r, dtype=complex)
    f2 = np.zeros(r, dtype=complex)
    f1[c - 1] = 1
    f2[d - 1] = 1
    return crandall_sum(f1, f2, z, x, params)


def crandall_w_direct(r: int, c: int, d: int, z, x, tol: float = 1e-12,
                       max_terms: int = 4000) -> tuple:
    """W_{c,d}(z, x) for Re z > 1 by truncated summation; returns (EvalResult, truncation)."""
    z = _check_z(z, 1.0, "direct W")
    wa = SeriesWeight(periodic=tuple(_unit(Fraction(m * c, r)) for m in range(1, r + 1)))
    wb = SeriesWeight(periodic=tuple(_unit(Fraction(n * d, r)) for n in range(1, r + 1)))
    return direct_double_sum(wa, wb, 1, 1, x, z - 1, tol=tol, max_terms=max_terms)


def crandall_special_z1(r: int, c: int, d: int) -> complex:
    """W_{c,d}(1, x) = L(1, c/r) L(1, d/r), independent of x."""
    return sf.periodic_zeta(1, Fraction(c, r)).value * sf.periodic_zeta(1, Fraction(d, r)).value


def crandall_sweep(r: int, c: int, d: int, z, x, deltas, u_max: int = 80,
                   v_max: int = 80) -> tuple:
    """W_{c,d}(z, x) for each delta; returns (values, max pairwise spread)."""
    vals = [crandall_w(r, c, d, z, x, CrandallParams(delta=float(dl), u_max=u_max, v_max=v_max))
            for dl in deltas]
    v = np.array([res.value for res in vals])
    spread = float(np.max(np.abs(v[:, None] - v[None, :]))) if len(v) else 0.0
    return vals, spread


# ---------------------------------------------------------------------------
# Gauss-weighted double sums

def gauss_double_sum(z, x, chi1, chi2, method: str = "crandall",
                     params: CrandallParams | None = None, tol: float = 1e-12,
                     max_terms: int = 4000) -> EvalResult:
    """sum_{m,n} G(m, chi1) G(n, chi2) / (m n (n + m x)^{z-1}).

    ``crandall`` is the continuation in z; ``direct`` sums the series (Re z > 1).
    Periodic functions are accepted in place of characters.
    """
    if method == "crandall":
        return crandall_sum(chi1, chi2, z, x, params)
    if method == "direct":
        z = _check_z(z, 1.0, "direct Gauss sum")
        wa = SeriesWeight(periodic=tuple(_gauss_table(_as_coeffs(chi1))))
        wb = SeriesWeight(periodic=tuple(_gauss_table(_as_coeffs(chi2))))
        return direct_double_sum(wa, wb, 1, 1, x, z - 1, tol=tol, max_terms=max_terms)[0]
    raise DomainError(f"unknown method {method!r}")


def log_weighted_double_sum(z, x, chi1, chi2, method: str = "crandall",
                            params: CrandallParams | None = None, h: float = 1e-3,
                            tol: float = 1e-12, max_terms: int = 4000) -> EvalResult:
    """sum_{m,n} G(m, chi1) G(n, chi2) log(n + m x) / (m n (n + m x)^{z-1}).

    ``crandall`` differentiates the continued sum in z (it is minus the z
    derivative); ``direct`` sums the log-weighted series for Re z > 1.
    """
    if method == "crandall":
        z = complex(z)
        errs = []

        def g(zz):
            res = crandall_sum(chi1, chi2, zz, x, params)
            errs.append(res.abs_err)
            return res.value

        d = central_derivative(g, z, order=1, h=h, levels=4)
        noise = max(errs) / h
        return EvalResult(-d.value, d.abs_err + noise, d.abs_err + noise < 1e-6)
    if method == "direct":
        z = _check_z(z, 1.0, "direct Gauss sum")
        wa = SeriesWeight(periodic=tuple(_gauss_table(_as_coeffs(chi1))))
        wb = SeriesWeight(periodic=tuple(_gauss_table(_as_coeffs(chi2))))
        return direct_double_sum(wa, wb, 1, 1, x, z - 1, log_weight=True,
                                 tol=tol, max_terms=max_terms)[0]
    raise DomainError(f"unknown method {method!r}")


def gauss_m_sum(f) -> complex:
    """sum_{m>=1} g(m)/m = -sum_j f(j) log(1 - e(j/r)) for f with f(r) = 0."""
    a = _as_coeffs(f)
    r = len(a)
    if a[-1] != 0:
        raise DomainError("coefficients must vanish at j = r")
    return complex(sum(a[j - 1] * sf.periodic_zeta(1, Fraction(j, r)).value
                       for j in range(1, r) if a[j - 1] != 0))


def d_constant(chi1, chi2) -> complex:
    """The z = 1 constant from L(0, chi) and L'(0, chi) by parity, for
    non-principal chi1, chi2."""
    def piece(chi):
        if chi.is_principal:
            raise DomainError("needs non-principal characters")
        if chi.is_even:
            return 2 * ch.l_prime_zero(chi)
        return 1j * math.pi * ch.l_zero(chi)
    return -piece(chi1) * piece(chi2)
