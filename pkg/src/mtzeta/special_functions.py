"""Complex special functions: gamma family, Hurwitz and Riemann zeta,
generalized digamma, incomplete gamma, polylogarithms, periodic zeta,
Arakawa-Kaneko constants, and the constants table they rely on.

Scalar entry points return :class:`~mtzeta.results.EvalResult`.  Functions
with an ``_array`` suffix are vectorized workhorses used by the series and
quadrature code; they return plain numpy arrays.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import special as sps

from .results import ConsistencyError, DomainError, EvalResult, PoleError

EPS = 2.220446049250313e-16

# ---------------------------------------------------------------------------
# constants

_STIELTJES_LITERALS = (
    "0.577215664901532860606512090082",
    "-0.0728158454836767248605863758749",
    "-0.00969036319287231848453038603521",
    "0.00205383442030334586616004654275",
    "0.00232537006546730005746817017753",
    "0.000793323817301062701753334877444",
    "-0.000238769345430199609872421841908",
    "-0.000527289567057751046074097505479",
    "-0.000352123353803039509602052165001",
    "-0.0000343947744180880481779146237982",
    "0.000205332814909064794683722289237",
)
STIELTJES = tuple(float(s) for s in _STIELTJES_LITERALS)
EULER_GAMMA = STIELTJES[0]
CATALAN = float("0.915965594177219015054603514932")
ZETA_PRIME_2 = float("-0.937548254315843753702574094568")


@lru_cache(maxsize=None)
def bernoulli_fractions(nmax: int = 60) -> tuple:
    """Exact Bernoulli numbers B_0..B_nmax (B_1 = -1/2)."""
    b = [Fraction(0)] * (nmax + 1)
    b[0] = Fraction(1)
    for m in range(1, nmax + 1):
        s = sum(math.comb(m + 1, k) * b[k] for k in range(m))
        b[m] = -s / (m + 1)
    return tuple(b)


BERNOULLI = tuple(float(b) for b in bernoulli_fractions(60))


@lru_cache(maxsize=None)
def zeta_int(n: int) -> float:
    """Riemann zeta at an integer (pole excluded)."""
    if n == 1:
        raise PoleError("zeta has a pole at 1")
    if n <= 0:
        m = -n
        return float((-1) ** m * bernoulli_fractions(80)[m + 1] / (m + 1))
    if n > 60:
        return 1.0 + 2.0 ** -n + 3.0 ** -n
    return float(_hurwitz_taylor(complex(n), np.array([1.0]), 0)[0, 0].real)


@dataclass(frozen=True)
class ConstantsTable:
    euler_gamma: float
    stieltjes: tuple
    catalan: float
    bernoulli: tuple
    zeta_values: dict = field(default_factory=dict)
    zeta_prime_2: float = ZETA_PRIME_2


@lru_cache(maxsize=1)
def constants() -> ConstantsTable:
    """The immutable table of named constants."""
    zv = {n: zeta_int(n) for n in range(2, 41)}
    return ConstantsTable(EULER_GAMMA, STIELTJES, CATALAN, BERNOULLI, zv)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


# ---------------------------------------------------------------------------
# gamma family

def gamma(z) -> EvalResult:
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real:g}")
    if z.imag == 0:
        v = complex(sps.gamma(z.real))
    else:
        v = complex(sps.gamma(z))
    return EvalResult(v, 1e-14 * abs(v) * max(1.0, math.log1p(abs(z))))


def rgamma(z) -> complex:
    """1/Gamma(z), entire."""
    z = complex(z)
    if z.imag == 0:
        return complex(sps.rgamma(z.real))
    return complex(sps.rgamma(z))


def digamma(z) -> complex:
    z = complex(z)
    if z.imag == 0:
        return complex(sps.psi(z.real))
    return complex(sps.psi(z))


def _series_exp(a: list) -> list:
    """exp of a power series with a[0] = 0."""
    n = len(a)
    b = [0.0] * n
    b[0] = 1.0
    for m in range(1, n):
        b[m] = sum(k * a[k] * b[m - k] for k in range(1, m + 1)) / m
    return b


@lru_cache(maxsize=None)
def _log_gamma_one_plus(order: int) -> tuple:
    # log Gamma(1+e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k
    a = [0.0] * (order + 1)
    if order >= 1:
        a[1] = -EULER_GAMMA
    for k in range(2, order + 1):
        a[k] = (-1) ** k * zeta_int(k) / k
    return tuple(a)


def gamma_taylor(order: int) -> list:
    """Coefficients g_m with Gamma(1+e) = sum g_m e^m."""
    return _series_exp(list(_log_gamma_one_plus(order)))


def recip_gamma_taylor(order: int) -> list:
    """Taylor coefficients of 1/Gamma(z) about z = 1, up to ``order``."""
    if not 0 <= order <= 20:
        raise DomainError("order must lie in [0, 20]")
    return _series_exp([-c for c in _log_gamma_one_plus(order)])


def gamma_derivatives_at_one(order: int) -> list:
    """Gamma^{(m)}(1) for m = 0..order."""
    g = gamma_taylor(order)
    return [math.factorial(m) * g[m] for m in range(order + 1)]


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin, in truncated Taylor arithmetic in z

_EM_PAIRS = 10  # B_2 .. B_20


def _series_mul(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (k,), complex)
    for i in range(k):
        for j in range(k - i):
            out[..., i + j] += a[..., i] * b[..., j]
    return out


def _poch_series(z0: complex, m: int, k: int) -> np.ndarray:
    """Taylor coefficients (in e) of the rising factorial (z0+e)_m."""
    c = np.zeros(k, complex)
    c[0] = 1.0
    for i in range(m):
        nxt = (z0 + i) * c
        nxt[1:] += c[:-1]
        c = nxt
    return c


def expm1_ratio(u):
    """(exp(u) - 1)/u, continuous at 0 for complex arrays."""
    u = np.asarray(u, dtype=complex)
    small = np.abs(u) < 1e-5
    safe = np.where(small, 1.0, u)
    big = np.expm1(safe) / safe
    ser = 1.0 + u / 2 + u * u / 6
    return np.where(small, ser, big)


def _hurwitz_taylor(z: complex, a: np.ndarray, order: int, regular: bool = False,
                    with_error: bool = False):
    """Taylor coefficients in (z - z0) of zeta(z, a) for every entry of ``a``.

    With ``regular=True`` the term a^{1-z}/(z-1) is removed, leaving an
    entire function of z (only order 0 is supported on that branch).
    """
    z = complex(z)
    a = np.atleast_1d(np.asarray(a, dtype=float))
    k = order + 1
    # for Re z < 0 the head terms grow like n^{-Re z} and cancel against the
    # pole term, so a shorter head with the same corrections is more accurate
    a0 = max(20.0, abs(z) + 10.0) if z.real >= 0 else max(8.0, 0.5 * abs(z) + 3.0)
    shift = np.ceil(np.maximum(a0 - a, 0.0)).astype(np.int64)
    coef = np.zeros(a.shape + (k,), complex)
    scale = np.zeros(a.shape)
    inv_fact = np.array([1.0 / math.factorial(i) for i in range(k)])
    ar = np.arange(k)
    for n in range(int(shift.max(initial=0))):
        idx = shift > n
        b = a[idx] + n
        lb = np.log(b)
        base = np.exp(-z * lb)
        coef[idx] += base[:, None] * ((-lb)[:, None] ** ar * inv_fact)
        scale[idx] += np.abs(base)
    big_a = a + shift
    la = np.log(big_a)
    shifted = (-la)[:, None] ** ar * inv_fact
    w = z - 1.0
    if regular:
        if order:
            raise DomainError("regular branch supports order 0 only")
        l0 = np.log(a)
        delta = la - l0
        part = np.exp(-w * l0) * (-delta) * expm1_ratio(-w * delta)
        coef[:, 0] += part
        scale += np.abs(part)
    else:
        if w == 0:
            raise PoleError("Hurwitz zeta has a pole at z = 1")
        inv = np.array([(-1) ** i / w ** (i + 1) for i in range(k)])
        pole = np.exp(-w * la)[:, None] * _series_mul(shifted, inv[None, :], k)
        coef += pole
        scale += np.abs(pole[:, 0])
    base = np.exp(-z * la)
    coef += 0.5 * base[:, None] * shifted
    last = None
    for j in range(1, _EM_PAIRS + 2):
        poch = _poch_series(z, 2 * j - 1, k)
        b2 = BERNOULLI[2 * j] / math.factorial(2 * j)
        term = b2 * np.exp(-(z + 2 * j - 1) * la)[:, None] * _series_mul(
            shifted, poch[None, :], k)
        if j <= _EM_PAIRS:
            coef += term
        else:
            last = term
    if with_error:
        fact = np.array([math.factorial(i) for i in range(k)])
        err = np.abs(last) * fact + 4 * EPS * (scale[:, None] * (1 + la[:, None]) ** ar + np.abs(coef) * fact)
        return coef, err
    return coef


def hurwitz_zeta_array(z, a, deriv_order: int = 0) -> np.ndarray:
    """d^j/dz^j zeta(z, a) for an array of a > 0."""
    coef = _hurwitz_taylor(complex(z), a, deriv_order)
    return coef[:, deriv_order] * math.factorial(deriv_order)


def hurwitz_regular_array(z, a) -> np.ndarray:
    """zeta(z, a) - a^{1-z}/(z-1); entire in z, equals log(a) - psi(a) at z = 1."""
    return _hurwitz_taylor(complex(z), a, 0, regular=True)[:, 0]


def hurwitz_zeta(z, a: float, deriv_order: int = 0) -> EvalResult:
    if a <= 0:
        raise DomainError("a must be positive")
    z = complex(z)
    if z == 1 and deriv_order == 0:
        raise PoleError("Hurwitz zeta has a pole at z = 1")
    if z == 1:
        raise PoleError("derivatives at the pole are Laurent data; use zeta_laurent_near_1")
    coef, err = _hurwitz_taylor(z, np.array([float(a)]), deriv_order, with_error=True)
    j = deriv_order
    return EvalResult(coef[0, j] * math.factorial(j), float(err[0, j]))


def riemann_zeta(z, deriv_order: int = 0) -> EvalResult:
    z = complex(z)
    if z == 1:
        raise PoleError("zeta has a pole at 1")
    if deriv_order == 0 and z.real < 0:
        if z.imag == 0 and z.real == math.floor(z.real):
            return EvalResult(zeta_int(int(z.real)), 0.0)
        w = 1 - z
        refl = 2 ** z * cmath.pi ** (z - 1) * cmath.sin(cmath.pi * z / 2)
        g = gamma(w)
        zr = riemann_zeta(w)
        v = refl * g.value * zr.value
        return EvalResult(v, abs(v) * 1e-14 + abs(refl * g.value) * zr.abs_err)
    return hurwitz_zeta(z, 1.0, deriv_order)


def zeta_laurent_near_1(j: int) -> float:
    """Coefficient of (s-1)^j in zeta(s) - 1/(s-1), i.e. (-1)^j gamma_j / j!."""
    if not 0 <= j <= 10:
        raise DomainError("only gamma_0..gamma_10 are tabulated")
    return (-1) ** j * STIELTJES[j] / math.factorial(j)


# ---------------------------------------------------------------------------
# generalized digamma psi_k(x) = -gamma_k(x)

_PSI_Y0 = 20.0
_PSI_PAIRS = 10


@lru_cache(maxsize=None)
def _logpow_polys(k: int, mmax: int) -> tuple:
    """P_m with d^m/dt^m (log^k t / t) = t^{-1-m} P_m(log t)."""
    polys = []
    p = np.zeros(k + 1)
    p[k] = 1.0
    for m in range(mmax + 1):
        polys.append(p.copy())
        dp = npoly.polyder(p) if len(p) > 1 else np.zeros(1)
        q = np.zeros(max(len(p), len(dp)))
        q[: len(dp)] += dp
        q[: len(p)] -= (1 + m) * p
        p = q
    return tuple(polys)


def logpow_derivative(k: int, m: int, t: np.ndarray, lt: np.ndarray | None = None) -> np.ndarray:
    """m-th derivative of log^k(t)/t."""
    if lt is None:
        lt = np.log(t)
    poly = _logpow_polys(k, max(m, 2 * _PSI_PAIRS + 2))[m]
    return t ** (-1.0 - m) * npoly.polyval(lt, poly)


def psi_k_asymptotic_array(k: int, y: np.ndarray, derivative: bool = False,
                           drop_leading: bool = False) -> np.ndarray:
    """Large-argument expansion of psi_k (or psi_k') at y.

    ``drop_leading`` omits log^{k+1}(y)/(k+1) (resp. log^k(y)/y), which is what
    the Ishibashi summands need.
    """
    y = np.asarray(y, dtype=float)
    ly = np.log(y)
    d = 1 if derivative else 0
    if drop_leading:
        val = np.zeros_like(y)
    elif derivative:
        val = logpow_derivative(k, 0, y, ly)
    else:
        val = ly ** (k + 1) / (k + 1)
    val = val - 0.5 * logpow_derivative(k, d, y, ly)
    for j in range(1, _PSI_PAIRS + 1):
        b2 = BERNOULLI[2 * j] / math.factorial(2 * j)
        val = val + b2 * logpow_derivative(k, 2 * j - 1 + d, y, ly)
    return val


def psi_k_array(k: int, x, derivative: bool = False) -> np.ndarray:
    """psi_k(x) (or its x-derivative) for an array of x > 0."""
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x).ravel()
    shift = np.ceil(np.maximum(_PSI_Y0 - flat, 0.0)).astype(np.int64)
    val = psi_k_asymptotic_array(k, flat + shift, derivative)
    d = 1 if derivative else 0
    for m in range(int(shift.max(initial=0))):
        idx = shift > m
        val[idx] -= logpow_derivative(k, d, flat[idx] + m)
    return val.reshape(x.shape) if x.shape else val[0]


def digamma_k(k: int, x: float, derivative: bool = False) -> EvalResult:
    """psi_k(x); with ``derivative=True`` returns psi_k'(x)."""
    if not 0 <= k <= 8:
        raise DomainError("k must lie in [0, 8]")
    if x <= 0:
        raise DomainError("x must be positive")
    v = float(psi_k_array(k, np.array([x]), derivative)[0])
    steps = max(0.0, _PSI_Y0 - x)
    mag = abs(v) + abs(math.log(x)) ** k / x + (math.log(_PSI_Y0 + x) ** (k + 1))
    return EvalResult(v, 8 * EPS * mag * (1 + steps))


# ---------------------------------------------------------------------------
# incomplete gamma

def _lower_gamma_series(s: complex, y: float) -> complex:
    # y^s e^{-y} sum y^n / (s (s+1) ... (s+n))
    term = 1.0 / s
    acc = term
    n = 0
    while True:
        n += 1
        term *= y / (s + n)
        acc += term
        if abs(term) < 1e-17 * abs(acc) and n > y:
            break
        if n > 2000:
            break
    return acc * cmath.exp(s * math.log(y) - y)


def _upper_gamma_cf(s: complex, y: float) -> complex:
    # modified Lentz on Gamma(s, y) = e^{-y} y^s / (y+1-s- 1(1-s)/(y+3-s- ...))
    tiny = 1e-300
    b = y + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 5000):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return cmath.exp(s * math.log(y) - y) * h


def _upper_gamma_near_pole(s: complex, y: float, n: int) -> complex:
    # s = -n + e with small e: split off the singular k = n term of the lower series
    e = s + n
    acc = 0j
    k = 0
    fac = 1.0
    while True:
        if k != n:
            t = (-1) ** k * y ** k / fac / (s + k)
            acc += t
            if k > n and abs(t) < 1e-18 * max(1.0, abs(acc)) and k > y:
                break
        k += 1
        fac *= k
        if k > 3000:
            break
    ys = cmath.exp(s * math.log(y))
    sign = (-1) ** n / math.factorial(n)
    # Gamma(-n+e) - sign/e  and  sign (1 - y^e)/e, both regular at e = 0
    if e == 0:
        reg = sign * sps.digamma(n + 1)
        pair = -sign * math.log(y)
    else:
        logs = sum(cmath.log(1 - e / j) for j in range(1, n + 1))
        lg = complex(sps.loggamma(1 + e))
        reg = sign / e * complex(np.expm1(lg - logs))
        pair = -sign * math.log(y) * complex(expm1_ratio(e * math.log(y)))
    return reg + pair - ys * acc


def upper_incomplete_gamma(s, y: float) -> EvalResult:
    """Gamma(s, y) for complex s and y > 0."""
    s = complex(s)
    y = float(y)
    if not y > 0:
        raise DomainError("y must be positive")
    if y >= abs(s) + 1.0:
        v = _upper_gamma_cf(s, y)
        return EvalResult(v, 1e-14 * abs(v))
    n = round(-s.real)
    if n >= 0 and abs(s + n) < 1e-2:
        v = _upper_gamma_near_pole(s, y, n)
        return EvalResult(v, 1e-13 * max(1.0, abs(v)))
    g = gamma(s).value
    low = _lower_gamma_series(s, y)
    v = g - low
    return EvalResult(v, 1e-15 * (abs(g) + abs(low)) + 1e-14 * abs(v))


def lower_incomplete_gamma(s, y: float) -> EvalResult:
    """gamma(s, y) by its power series (the complement of Gamma(s, y))."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError("lower incomplete gamma has poles at non-positive integers")
    v = _lower_gamma_series(s, float(y))
    return EvalResult(v, 1e-15 * abs(v))


def regularized_upper_gamma_array(s, y: np.ndarray) -> np.ndarray:
    """Gamma(s, y)/Gamma(s) for complex s and an array of y > 0.

    Entire in s: the series branch uses 1/Gamma directly, so poles of
    Gamma(s) give Q = 0 as they should.
    """
    s = complex(s)
    y = np.asarray(y, dtype=float)
    out = np.empty(y.shape, complex)
    ser = y < abs(s) + 1.0
    if ser.any():
        ys = y[ser]
        nterms = int(max(40, 3 * ys.max() + 40))
        rg = np.array([rgamma(s + k + 1) for k in range(nterms)])
        acc = np.zeros(ys.shape, complex)
        pw = np.ones(ys.shape)
        for k in range(nterms):
            acc += pw * rg[k]
            pw = pw * ys
        out[ser] = 1.0 - np.exp(s * np.log(ys) - ys) * acc
    cf = ~ser
    if cf.any():
        yc = y[cf]
        tiny = 1e-300
        b = yc + 1.0 - s
        c = np.full(yc.shape, 1.0 / tiny, complex)
        d = 1.0 / b
        h = d.copy()
        live = np.arange(len(yc))
        for i in range(1, 2000):
            an = -i * (i - s)
            b[live] = b[live] + 2.0
            dl = an * d[live] + b[live]
            dl = np.where(np.abs(dl) < tiny, tiny, dl)
            cl = b[live] + an / c[live]
            cl = np.where(np.abs(cl) < tiny, tiny, cl)
            dl = 1.0 / dl
            delta = dl * cl
            d[live] = dl
            c[live] = cl
            h[live] = h[live] * delta
            keep = np.abs(delta - 1.0) >= 4 * EPS
            live = live[keep]
            if live.size == 0:
                break
        out[cf] = rgamma(s) * np.exp(s * np.log(yc) - yc) * h
    return out


# ---------------------------------------------------------------------------
# polylogarithms

def _zeta_shifted(s: complex, m: int) -> complex:
    """zeta(s - m) for the Bernoulli expansion of Li_s near w = 1."""
    t = s - m
    if t.imag == 0 and t.real == math.floor(t.real):
        return zeta_int(int(t.real))
    return riemann_zeta(t).value


def _polylog_negative_int(n: int, w: complex) -> complex:
    # Li_{-n}(w) = sum_{k=0}^n k! S(n+1, k+1) (w/(1-w))^{k+1}
    q = w / (1 - w)
    total = 0j
    for k in range(n + 1):
        total += math.factorial(k) * _stirling2(n + 1, k + 1) * q ** (k + 1)
    return total


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def polylog(s, w) -> EvalResult:
    """Li_s(w) for |w| <= 1."""
    s = complex(s)
    w = complex(w)
    r = abs(w)
    is_int = s.imag == 0 and s.real == math.floor(s.real)
    if r > 1 + 1e-14:
        raise DomainError("polylog is implemented on the closed unit disk only")
    if is_int and s.real <= 0:
        if w == 1:
            raise DomainError("Li_s(1) diverges for s <= 1")
        return EvalResult(_polylog_negative_int(int(-s.real), w), 1e-14)
    if is_int and s.real == 1:
        if w == 1:
            raise DomainError("Li_1(1) diverges")
        return EvalResult(-cmath.log(1 - w), 1e-15)
    if w == 0:
        return EvalResult(0j, 0.0)
    if abs(r - 1) < 1e-14 and s.real <= 1:
        raise DomainError("Li_s on |w| = 1 needs Re(s) > 1")
    if r <= 0.5:
        kmax = int(math.ceil(math.log(1e-18) / math.log(r))) + 2
        k = np.arange(1, kmax + 1)
        terms = np.exp(k * cmath.log(w) - s * np.log(k))
        return EvalResult(complex(np.sum(terms[::-1])), 1e-16 * kmax)
    if w == 1:
        return riemann_zeta(s)
    mu = cmath.log(w)
    total = 0j
    if is_int:
        n = int(s.real)
        harm = sum(1.0 / j for j in range(1, n))
        total += mu ** (n - 1) / math.factorial(n - 1) * (harm - cmath.log(-mu))
        kmax = n + 58
        for k in range(kmax + 1):
            if k == n - 1:
                continue
            total += _zeta_shifted(s, k) * mu ** k / math.factorial(k)
    else:
        total += gamma(1 - s).value * cmath.exp((s - 1) * cmath.log(-mu))
        term_ok = 0
        for k in range(0, 200):
            t = _zeta_shifted(s, k) * mu ** k / math.factorial(k)
            total += t
            if abs(t) < 1e-18:
                term_ok += 1
                if term_ok > 3:
                    break
            else:
                term_ok = 0
    return EvalResult(total, 1e-14 * max(1.0, abs(total)))


def _dilog_01_half(x: np.ndarray) -> np.ndarray:
    # Li2(x) = sum B_n u^{n+1}/(n+1)!,  u = -log(1-x), for 0 <= x <= 1/2
    u = -np.log1p(-x)
    acc = np.zeros_like(u)
    for n in range(0, 31):
        b = BERNOULLI[n]
        if b == 0.0:
            continue
        acc = acc + b * u ** (n + 1) / math.factorial(n + 1)
    return acc


def dilog_real(x) -> np.ndarray:
    """Li_2(x) for real x <= 1, vectorized."""
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x).ravel()
    out = np.empty_like(flat)
    z2 = math.pi ** 2 / 6
    if np.any(flat > 1):
        raise DomainError("real dilogarithm needs x <= 1")
    m = flat < -1
    if m.any():
        v = flat[m]
        out[m] = -z2 - 0.5 * np.log(-v) ** 2 - _dilog_m1_0(1 / v)
    m = (flat >= -1) & (flat < 0)
    if m.any():
        out[m] = _dilog_m1_0(flat[m])
    m = (flat >= 0) & (flat <= 0.5)
    if m.any():
        out[m] = _dilog_01_half(flat[m])
    m = flat > 0.5
    if m.any():
        v = flat[m]
        one = v == 1.0
        vv = np.where(one, 0.75, v)
        res = z2 - np.log(vv) * np.log1p(-vv) - _dilog_01_half(1 - vv)
        out[m] = np.where(one, z2, res)
    return out.reshape(x.shape) if x.shape else out[0]


def _dilog_m1_0(v: np.ndarray) -> np.ndarray:
    # Landen: Li2(v) = -Li2(v/(v-1)) - log^2(1-v)/2, with v/(v-1) in [0, 1/2]
    return -_dilog_01_half(v / (v - 1)) - 0.5 * np.log1p(-v) ** 2


# ---------------------------------------------------------------------------
# periodic zeta L(s, alpha) = Li_s(exp(2 pi i alpha))

def _unit_angle(alpha) -> tuple:
    a = Fraction(alpha).limit_denominator(10 ** 12) if not isinstance(alpha, Fraction) else alpha
    a = a - math.floor(a)
    return a, float(a)


def periodic_zeta(s, alpha) -> EvalResult:
    """L(s, alpha) for s = 1, s a non-positive integer, or Re(s) > 1."""
    frac, a = _unit_angle(alpha)
    if frac == 0:
        raise DomainError("alpha must not be an integer")
    s = complex(s)
    if s == 1:
        v = complex(-math.log(2 * math.sin(math.pi * a)), math.pi * (0.5 - a))
        return EvalResult(v, 1e-15)
    if s == 0:
        return EvalResult(complex(-0.5, 0.5 / math.tan(math.pi * a)), 1e-15)
    if s.imag == 0 and s.real < 0 and s.real == math.floor(s.real):
        u = int(1 - s.real)
        v = _periodic_zeta_neg(u, a)
        return EvalResult(v, 1e-13 * max(1.0, abs(v)))
    if s.real > 1:
        w = complex(math.cos(2 * math.pi * a), math.sin(2 * math.pi * a))
        return polylog(s, w)
    raise DomainError("periodic zeta supported for s = 1, s in Z_<=0 and Re(s) > 1")


def _periodic_zeta_neg(u: int, a: float) -> complex:
    # L(1-u, a) = Gamma(u)/(2 pi)^u [i^u zeta(u, a) + i^{-u} zeta(u, 1-a)]
    z1 = hurwitz_zeta(u, a).value.real
    z2 = hurwitz_zeta(u, 1 - a).value.real
    ph = cmath.exp(0.5j * math.pi * u)
    return math.gamma(u) / (2 * math.pi) ** u * (ph * z1 + z2 / ph)


def periodic_zeta_scaled_series(alpha: float, q: float, umax: int) -> np.ndarray:
    """q^u L(1-u, alpha)/Gamma(u+1) for u = 0..umax, scaled to avoid overflow."""
    out = np.zeros(umax + 1, complex)
    out[0] = periodic_zeta(1, alpha).value
    if umax >= 1:
        out[1] = q * periodic_zeta(0, alpha).value
    if umax < 2:
        return out
    u = np.arange(2, umax + 1)
    # zeta(u, b) q^u = (q/b)^u (1 + b^u zeta(u, 1+b))
    parts = []
    for b in (alpha, 1 - alpha):
        tail = _hurwitz_integer_orders(float(b), umax)[2:]
        parts.append(np.exp(u * math.log(q / b)) * (1 + np.exp(u * math.log(b)) * tail)
                     if q > 0 else np.zeros(len(u)))
    ph = np.exp(0.5j * math.pi * u)
    out[2:] = (ph * parts[0] + parts[1] / ph) / (u * np.exp(u * math.log(2 * math.pi)))
    return out


@lru_cache(maxsize=256)
def _hurwitz_integer_orders(b: float, umax: int) -> np.ndarray:
    """zeta(u, 1 + b) for u = 0..umax (entries below 2 unused)."""
    vals = np.zeros(umax + 1)
    vals[2:] = sps.zeta(np.arange(2, umax + 1, dtype=float), 1.0 + b)
    vals.setflags(write=False)
    return vals


# ---------------------------------------------------------------------------
# elementary integrand helpers with small-argument series guards

_LOG_RATIO_SERIES = [(BERNOULLI[2 * k] / (2 * k * math.factorial(2 * k)), 2 * k) for k in range(1, 10)]
_BOSE_SERIES = [(BERNOULLI[2 * k] / math.factorial(2 * k), 2 * k - 1) for k in range(1, 10)]


def log_expm1_ratio(t):
    """log((1 - e^{-t})/t) for t > 0, accurate as t -> 0."""
    t = np.asarray(t, dtype=float)
    small = t < 0.5
    ts = np.where(small, t, 0.0)
    ser = -ts / 2
    for c, p in _LOG_RATIO_SERIES:
        ser = ser + c * ts ** p
    tb = np.where(small, 1.0, t)
    big = log_one_minus_exp(tb) - np.log(tb)
    return np.where(small, ser, big)


def log_one_minus_exp(t):
    """log(1 - e^{-t}) for t > 0 with full relative accuracy."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(t > 0.6931, np.log1p(-np.exp(-t)), np.log(-np.expm1(-t)))


def bose_minus_inverse(t):
    """1/(e^t - 1) - 1/t, accurate as t -> 0."""
    t = np.asarray(t, dtype=float)
    small = t < 0.5
    ts = np.where(small, t, 0.0)
    ser = -0.5 + 0 * ts
    for c, p in _BOSE_SERIES:
        ser = ser + c * ts ** p
    tb = np.where(small, 1.0, t)
    with np.errstate(over="ignore"):
        big = 1.0 / np.expm1(tb) - 1.0 / tb
    return np.where(small, ser, big)


# ---------------------------------------------------------------------------
# Arakawa-Kaneko constants

def _arakawa_kaneko_series(k: int) -> float:
    g = gamma_taylor(k + 1)
    zl = [zeta_laurent_near_1(j) for j in range(k + 1)]
    return g[k + 1] + sum(g[i] * zl[k - i] for i in range(k + 1))


def _arakawa_kaneko_quadrature(k: int) -> EvalResult:
    from .quadrature import integrate_0inf

    def f(t):
        lt = np.log(t)
        ll = -log_expm1_ratio(t)   # log(t/(1-e^{-t}))
        return (lt ** k - ll ** k) * bose_minus_inverse(t)

    r = integrate_0inf(f)
    return EvalResult(r.value.real / math.factorial(k), r.abs_err / math.factorial(k), r.converged)


def arakawa_kaneko_c(k: int) -> EvalResult:
    """c_k with Gamma(s) zeta(s) - 1/(s-1) = sum c_k (s-1)^k, checked two ways."""
    if not 0 <= k <= 6:
        raise DomainError("k must lie in [0, 6]")
    ser = _arakawa_kaneko_series(k)
    if k == 0:
        return EvalResult(0.0, 1e-16)
    quad = _arakawa_kaneko_quadrature(k)
    diff = abs(quad.value.real - ser)
    if diff > 1e-10:
        raise ConsistencyError(f"c_{k}: quadrature {quad.value.real!r} vs series {ser!r}")
    return EvalResult(ser, max(diff, 1e-15))
