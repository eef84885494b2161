"""Herglotz-type functions: F(x), the Hurwitz lift Phi(z, x), the
Ishibashi functions Phi_k(x) and Phi'_k(x), the Ishibashi polynomials,
the limits L_k*(x), and the auxiliary integrals H1, H2 and I.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import special_functions as sf
from .quadrature import DEFAULT_INF_SPEC, QuadratureSpec, integrate_0inf
from .results import ConsistencyError, DomainError, EvalResult, total

_ASYM_START = 25.0   # direct summation until n x exceeds this
_MIN_TERMS = 50


def _direct_count(x: float, zabs: float = 0.0) -> int:
    return max(_MIN_TERMS, math.ceil(max(_ASYM_START, 2 * zabs + 10) / x))


def _check_x(x) -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError("x must be a positive real number")
        x = x.real
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("x must be a positive real number")
    return x


# ---------------------------------------------------------------------------
# tails of log-power sums: sum_{n>N} log^p(n x) n^{-s}

def _log_power_tail(p: int, s: int, x: float, n0: int) -> float:
    """sum_{n > n0} log^p(n x) / n^s for integer s >= 2."""
    derivs = sf._hurwitz_taylor(complex(s), np.array([float(n0 + 1)]), p)[0]
    lx = math.log(x)
    tot = 0.0
    for i in range(p + 1):
        # d^i/ds^i zeta(s, a) = i! * coefficient, and sum log^i n n^{-s} = (-1)^i of it
        zi = (-1) ** i * math.factorial(i) * derivs[i].real
        tot += math.comb(p, i) * lx ** (p - i) * zi
    return tot


def _ishibashi_tail(k: int, x: float, n0: int, derivative: bool) -> float:
    """Asymptotic tail of the Ishibashi summands for n > n0.

    With f(t) = log^{k-1}(t)/t the summand k psi_{k-1}(y) - log^k(y) behaves
    like k(-f/2 + sum_j B_2j/(2j)! f^{(2j-1)}); each derivative is a
    polynomial in log y over a power of y, so the n-sum is exact in terms of
    Hurwitz zeta derivatives.
    """
    d = 1 if derivative else 0
    extra = 0 if derivative else 1       # Phi_k carries a 1/n, Phi'_k does not
    polys = sf._logpow_polys(k - 1, 2 * sf._PSI_PAIRS + 2)
    terms = [(-0.5, d)] + [(sf.BERNOULLI[2 * j] / math.factorial(2 * j), 2 * j - 1 + d)
                           for j in range(1, 7)]
    tot = 0.0
    for coef, m in terms:
        poly = polys[m]
        s = 1 + m + extra
        part = 0.0
        for p, c in enumerate(poly):
            if c:
                part += c * _log_power_tail(p, s, x, n0)
        tot += coef * x ** (-1.0 - m) * part
    return k * tot


def _ishibashi_summands(k: int, y: np.ndarray, derivative: bool) -> np.ndarray:
    """k psi_{k-1}(y) - log^k y, or its y-derivative."""
    big = y >= sf._PSI_Y0
    out = np.empty_like(y)
    if np.any(big):
        out[big] = k * sf.psi_k_asymptotic_array(k - 1, y[big], derivative, drop_leading=True)
    small = ~big
    if np.any(small):
        ys = y[small]
        ly = np.log(ys)
        if derivative:
            out[small] = k * (sf.psi_k_array(k - 1, ys, True) - ly ** (k - 1) / ys)
        else:
            out[small] = k * sf.psi_k_array(k - 1, ys) - ly ** k
    return out


def _ishibashi(k: int, x: float, derivative: bool) -> EvalResult:
    if not 1 <= k <= 8:
        raise DomainError("k must lie in [1, 8]")
    x = _check_x(x)
    n0 = _direct_count(x)
    n = np.arange(1, n0 + 1, dtype=float)
    vals = _ishibashi_summands(k, n * x, derivative)
    if not derivative:
        vals = vals / n
    head = math.fsum(vals)
    tail = _ishibashi_tail(k, x, n0, derivative)
    mag = float(np.sum(np.abs(vals))) + abs(tail)
    return EvalResult(head + tail, 32 * sf.EPS * mag + 1e-15)


def ishibashi_phi(k: int, x) -> EvalResult:
    """Phi_k(x) = sum_n (k psi_{k-1}(n x) - log^k(n x))/n."""
    return _ishibashi(k, x, derivative=False)


def ishibashi_phi_prime(k: int, x) -> EvalResult:
    """Phi_k'(x) = k sum_n (psi'_{k-1}(n x) - log^{k-1}(n x)/(n x))."""
    return _ishibashi(k, x, derivative=True)


def herglotz_F(x) -> EvalResult:
    """F(x) = sum_n (psi(n x) - log(n x))/n."""
    return ishibashi_phi(1, x)


def herglotz_F_integral(x, spec: QuadratureSpec | None = None) -> EvalResult:
    """F(x) from its integral over (0, inf) against 1/(1-e^{-t}) - 1/t."""
    x = _check_x(x)
    res = phi_hh_quadrature(1.0, x, spec)
    return EvalResult(-res.value, res.abs_err, res.converged)


# ---------------------------------------------------------------------------
# Phi(z, x) = sum_n (zeta(z, n x) - (n x)^{1-z}/(z-1))/n

def phi_hh_series(z, x) -> EvalResult:
    z = complex(z)
    x = _check_x(x)
    if not z.real > 0:
        raise DomainError("Phi(z, x) needs Re(z) > 0")
    n0 = _direct_count(x, abs(z))
    n = np.arange(1, n0 + 1, dtype=float)
    vals = sf.hurwitz_regular_array(z, n * x) / n
    head = complex(math.fsum(vals.real), math.fsum(vals.imag))
    # reg(z, a) ~ a^{-z}/2 + sum_j B_2j/(2j)! (z)_{2j-1} a^{1-z-2j}
    a0 = complex(n0 + 1)
    tail = 0.5 * x ** (-z) * _hurwitz_at(z + 1, a0)
    poch = z
    for j in range(1, 9):
        if j > 1:
            poch *= (z + 2 * j - 3) * (z + 2 * j - 2)
        b2 = sf.BERNOULLI[2 * j] / math.factorial(2 * j)
        s = z + 2 * j - 1
        tail += b2 * poch * x ** (-s) * _hurwitz_at(s + 1, a0)
    mag = float(np.sum(np.abs(vals))) + abs(tail)
    return EvalResult(head + tail, 32 * sf.EPS * mag + 1e-15)


def _hurwitz_at(s: complex, a: complex) -> complex:
    return complex(sf.hurwitz_zeta_array(s, np.array([a.real]))[0])


def _bose_plus(t):
    """1/(1 - e^{-t}) - 1/t."""
    return 1.0 + sf.bose_minus_inverse(t)


def phi_hh_quadrature(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    z = complex(z)
    x = _check_x(x)
    if not z.real > 0:
        raise DomainError("Phi(z, x) needs Re(z) > 0")
    spec = spec or QuadratureSpec(scheme="split_semiinfinite", split_point=min(1.0, 1.0 / x))
    zm1 = z - 1.0

    def f(t):
        w = np.exp(zm1 * np.log(t)) if zm1.imag else t ** zm1.real
        return w * _bose_plus(t) * sf.log_one_minus_exp(x * t)

    res = integrate_0inf(f, spec)
    r = sf.rgamma(z)
    return EvalResult(-r * res.value, abs(r) * res.abs_err, res.converged)


def phi_hh(z, x, method: str = "series") -> EvalResult:
    """Phi(z, x).  At z = 1 the removable singularity gives -F(x)."""
    if method == "series":
        return phi_hh_series(z, x)
    if method == "quadrature":
        return phi_hh_quadrature(z, x)
    raise DomainError(f"unknown method {method!r}")


def phi_hh_taylor(x, order: int, radius: float = 0.25) -> np.ndarray:
    """Taylor coefficients of Phi(z, x) about z = 1."""
    from .quadrature import taylor_coefficients
    return taylor_coefficients(lambda z: phi_hh_series(z, x).value, 1.0, order, radius=radius)


# ---------------------------------------------------------------------------
# Ishibashi polynomials S_k(t) = sum_j a_{k,j} log^j t

@dataclass(frozen=True)
class IshibashiCoeffs:
    k_max: int
    a: tuple          # a[k-1][j] for 1 <= k <= k_max, 0 <= j <= k-1
    recursion: tuple

    def coeff(self, k: int, j: int) -> float:
        if not 1 <= k <= self.k_max:
            raise DomainError("k out of range")
        if not 0 <= j <= k - 1:
            return 0.0
        return self.a[k - 1][j]


def _coeffs_recursion(k_max: int) -> list:
    gd = sf.gamma_derivatives_at_one(k_max)
    a = [[1.0]]
    for k in range(2, k_max + 1):
        row = [0.0] * k
        row[k - 1] = 1.0
        for j in range(k - 1):
            acc = 0.0
            for r in range(k - 1):
                prev = a[r][j] if j <= r else 0.0
                acc -= math.comb(k - 1, r) * gd[k - r - 1] * prev
            row[j] = acc
        a.append(row)
    return a


def _coeffs_closed(k_max: int) -> list:
    g = sf.recip_gamma_taylor(k_max)
    rd = [math.factorial(m) * g[m] for m in range(k_max + 1)]
    return [[math.comb(k - 1, j) * rd[k - j - 1] for j in range(k)] for k in range(1, k_max + 1)]


@lru_cache(maxsize=None)
def ishibashi_coeffs(k_max: int = 6) -> IshibashiCoeffs:
    if not 1 <= k_max <= 10:
        raise DomainError("k_max must lie in [1, 10]")
    rec = _coeffs_recursion(k_max)
    closed = _coeffs_closed(k_max)
    for k in range(k_max):
        for j in range(k + 1):
            a, b = rec[k][j], closed[k][j]
            if abs(a - b) > 1e-11 * max(1.0, abs(b)):
                raise ConsistencyError(f"a_{{{k + 1},{j}}}: recursion {a} vs closed form {b}")
    return IshibashiCoeffs(k_max, tuple(tuple(r) for r in closed),
                           tuple(tuple(r) for r in rec))


def s_poly(k: int, t) -> float:
    """k-th Ishibashi polynomial S_k(t)."""
    c = ishibashi_coeffs(max(k, 1))
    lt = np.log(t)
    return sum(c.coeff(k, j) * lt ** j for j in range(k))


# ---------------------------------------------------------------------------
# integrands shared by H1, H2, I and L_k*

def _log_ratio(t: np.ndarray, x: float) -> np.ndarray:
    """log((1 - e^{-x t})/(1 - e^{-t}))."""
    t = np.asarray(t, dtype=float)
    large = t * min(x, 1.0) > 0.5
    ts = np.where(large, 1.0, t)
    tl = np.where(large, t, 1.0)
    near = sf.log_expm1_ratio(x * ts) - sf.log_expm1_ratio(ts) + math.log(x)
    # far out both logs are tiny and the difference must decay, not carry roundoff
    far = np.log1p(-np.exp(-x * tl)) - np.log1p(-np.exp(-tl))
    return np.where(large, far, near)


def _mellin(f, z: complex, power_shift: float, spec: QuadratureSpec | None, x: float):
    """integral over (0, inf) of t^{z-1+power_shift} f(t)."""
    e = z - 1.0 + power_shift
    spec = spec or QuadratureSpec(scheme="split_semiinfinite", split_point=min(1.0, 1.0 / x))

    def g(t):
        w = np.exp(e * np.log(t)) if e.imag else t ** e.real
        return w * f(t)

    return integrate_0inf(g, spec)


def _scaled(res: EvalResult, c: complex) -> EvalResult:
    return EvalResult(c * res.value, abs(c) * res.abs_err, res.converged)


def _check_z(z, lower: float) -> complex:
    z = complex(z)
    if not z.real > lower:
        raise DomainError(f"needs Re(z) > {lower:g}")
    return z


def i_integral(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """I(z, x): Mellin transform (weight t^{z-2}/Gamma(z)) of
    log((1-e^{-xt})/(1-e^{-t})) log((1-e^{-t})/t).  Valid for Re z > 0."""
    z = _check_z(z, 0.0)
    x = _check_x(x)
    if x == 1.0:
        return EvalResult(0.0, 0.0)
    res = _mellin(lambda t: _log_ratio(t, x) * sf.log_expm1_ratio(t), z, -1.0, spec, x)
    return _scaled(res, sf.rgamma(z))


def h1(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """H1(z, x) by quadrature."""
    z = _check_z(z, 1.0)
    x = _check_x(x)
    lx = math.log(x)

    def f(t):
        b = sf.log_expm1_ratio(t)
        a = sf.log_expm1_ratio(x * t) + lx
        return _log_ratio(t, x) * (a + b)

    res = _mellin(f, z, -1.0, spec, x)
    return _scaled(res, 0.5 * sf.rgamma(z))


def h1_closed(z, x) -> EvalResult:
    """H1(z, x) in terms of Phi(z, 1), zeta and digamma."""
    z = _check_z(z, 1.0)
    x = _check_x(x)
    w = z - 1.0
    xw = x ** (-w)
    p1 = phi_hh_series(z, 1.0)
    zz = sf.riemann_zeta(z)
    zp = sf.riemann_zeta(z, 1)
    z1 = sf.riemann_zeta(z + 1)
    inner = p1.value - z1.value + sf.digamma(z) * zz.value + zp.value
    val = (xw - 1) / w * inner - xw / w * zz.value * math.log(x)
    err = abs((xw - 1) / w) * (p1.abs_err + z1.abs_err + zp.abs_err) + 1e-15 * abs(val)
    return EvalResult(val, err)


def h2(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """H2(z, x) by quadrature."""
    z = _check_z(z, 1.0)
    x = _check_x(x)
    if x == 1.0:
        return EvalResult(0.0, 0.0)
    res = _mellin(lambda t: _log_ratio(t, x) ** 2, z, -1.0, spec, x)
    return _scaled(res, 0.5 * sf.rgamma(z))


def _dilog_pair_h2(t: np.ndarray, x: float) -> np.ndarray:
    # arguments -e^{-xt}(1-e^{-t})/(1-e^{-xt}) and -e^{-t}(1-e^{-xt})/(1-e^{-t})
    q = np.expm1(-t) / np.expm1(-x * t)
    a1 = -np.exp(-x * t) * q
    a2 = -np.exp(-t) / q
    return sf.dilog_real(a1) + sf.dilog_real(a2)


def h2_semiclosed(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """H2(z, x) via the zeta(z+1) term plus a Mellin integral of dilogarithms."""
    z = _check_z(z, 1.0)
    x = _check_x(x)
    w = z - 1.0
    z1 = sf.riemann_zeta(z + 1)
    lead = ((x + 1) ** (-w) - x ** (-w) - 1) / w * z1.value
    res = _mellin(lambda t: _dilog_pair_h2(t, x), z, -1.0, spec, x)
    r = sf.rgamma(z)
    return EvalResult(lead - r * res.value, abs(r) * res.abs_err + abs(lead) * 1e-15,
                      res.converged)


def dilog_three_term_integral(z, x, spec: QuadratureSpec | None = None) -> EvalResult:
    """(1/Gamma(z)) times the Mellin transform (weight t^{z-2}) of
    Li2(b1) + Li2(b2), b1 = (e^{-(x+1)t} - e^{-xt})/(e^{-(x+1)t} - 1) and
    b2 the same with e^{-t} in place of e^{-xt}.  Both lie in (0, 1)."""
    z = _check_z(z, 1.0)
    x = _check_x(x)

    def f(t):
        den = -np.expm1(-(x + 1) * t)
        b1 = np.exp(-x * t) * (-np.expm1(-t)) / den
        b2 = np.exp(-t) * (-np.expm1(-x * t)) / den
        return sf.dilog_real(b1) + sf.dilog_real(b2)

    res = _mellin(f, z, -1.0, spec, min(x, 1.0))
    return _scaled(res, sf.rgamma(z))


# ---------------------------------------------------------------------------
# L_k*(x) = lim_{z->1} d^k/dz^k I(z, x)

def l_k_star_integral(j: int, x: float, spec: QuadratureSpec | None = None) -> EvalResult:
    """Integral over (0, inf) of log^j(t)/t log((1-e^{-xt})/(1-e^{-t})) log((1-e^{-t})/t)."""
    if x == 1.0:
        return EvalResult(0.0, 0.0)

    def f(t):
        return np.log(t) ** j * _log_ratio(t, x) * sf.log_expm1_ratio(t)

    return _mellin(f, 1.0 + 0j, -1.0, spec, x)


def l_k_star(k: int, x, spec: QuadratureSpec | None = None) -> EvalResult:
    if not -1 <= k <= 3:
        raise DomainError("k must lie in [-1, 3]")
    x = _check_x(x)
    if k == -1:
        return EvalResult(0.0, 0.0)
    c = ishibashi_coeffs(k + 1)
    parts = [l_k_star_integral(j, x, spec) for j in range(k + 1)]
    res = total(parts, [c.coeff(k + 1, j) for j in range(k + 1)])
    return EvalResult(res.value.real, res.abs_err, res.converged)


def l_k_star_numeric(k: int, x, h: float = 0.05) -> EvalResult:
    """L_k*(x) by differentiating I(z, x) in z at z = 1 (independent route)."""
    x = _check_x(x)
    if k == -1:
        return EvalResult(0.0, 0.0)
    if k == 0:
        return i_integral(1.0, x)
    from .quadrature import central_derivative
    return central_derivative(lambda z: i_integral(z, x).value, 1.0, order=k, h=h, levels=4)


# ---------------------------------------------------------------------------
# constants used by the functional equations

def arakawa_kaneko(k: int) -> float:
    return float(sf.arakawa_kaneko_c(k).real)
