"""Dirichlet characters, Gauss sums, Fekete-type polynomial reduction,
Dirichlet L-values and periodic functions with their Gauss-type sums.

Character values are roots of unity stored as exact rational exponents
(value = exp(2 pi i e)), or ``None`` where gcd(n, r) > 1.
"""
from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .results import ConsistencyError, DomainError, EvalResult, PoleError
from .special_functions import expm1_ratio, hurwitz_regular_array

MAX_MODULUS = 100


# ---------------------------------------------------------------------------
# elementary number theory

def factorize(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    res = n
    for p, _ in factorize(n):
        res = res // p * (p - 1)
    return res


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _int_poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_divexact(num: list, den: list) -> list:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] // den[-1]
        q[i - dn] = c
        for j in range(dn + 1):
            num[i - dn + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def _cyclotomic_vanishes(counts: Sequence[int], n: int) -> bool:
    """True iff sum_k counts[k] * zeta_n^k is exactly zero."""
    rem = [int(c) for c in counts]
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            for j in range(deg + 1):
                rem[i - deg + j] -= c * phi[j]
    return not any(rem[:deg])


def _root_sum(exponents: Iterable[Fraction]) -> complex:
    """Sum of exp(2 pi i e) over exact exponents, with exact zero detection
    for the whole sum and for its real and imaginary parts."""
    exps = [e % 1 for e in exponents]
    if not exps:
        return 0j
    n = math.lcm(*(e.denominator for e in exps))
    counts = [0] * n
    for e in exps:
        counts[int(e * n)] += 1
    mirror = [counts[0]] + counts[:0:-1]
    re_zero = _cyclotomic_vanishes([a + b for a, b in zip(counts, mirror)], n)
    im_zero = _cyclotomic_vanishes([a - b for a, b in zip(counts, mirror)], n)
    re = 0.0 if re_zero else math.fsum(c * _cos_exact(Fraction(k, n)) for k, c in enumerate(counts) if c)
    im = 0.0 if im_zero else math.fsum(c * _sin_exact(Fraction(k, n)) for k, c in enumerate(counts) if c)
    return complex(re, im)


def _cos_exact(e: Fraction) -> float:
    return _sin_exact(e + Fraction(1, 4))


def _sin_exact(e: Fraction) -> float:
    # reduce to [0, 1/4] so that the exact zeros and ones come out exactly
    e = e % 1
    sign = 1.0
    if e >= Fraction(1, 2):
        e -= Fraction(1, 2)
        sign = -1.0
    if e > Fraction(1, 4):
        e = Fraction(1, 2) - e
    if e == 0:
        return 0.0
    if e == Fraction(1, 4):
        return sign
    return sign * math.sin(2 * math.pi * float(e))


def root_of_unity(e: Fraction) -> complex:
    return complex(_cos_exact(e), _sin_exact(e))


# ---------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod r given by its exponent table for n = 1..r."""

    modulus: int
    exponents: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        r = self.modulus
        if not isinstance(r, int) or r < 1:
            raise DomainError("modulus must be a positive integer")
        if r > MAX_MODULUS:
            raise DomainError(f"modulus above {MAX_MODULUS} is not supported")
        exps = tuple(None if e is None else Fraction(e) % 1 for e in self.exponents)
        if len(exps) != r:
            raise DomainError("value table must have length r")
        object.__setattr__(self, "exponents", exps)
        for n in range(1, r + 1):
            if (exps[n - 1] is None) != (math.gcd(n, r) > 1):
                raise DomainError(f"value at n={n} must be zero iff gcd(n, r) > 1")
        if exps[0 if r > 1 else 0] != 0:
            raise DomainError("chi(1) must equal 1")
        for a in range(1, r + 1):
            ea = exps[a - 1]
            if ea is None:
                continue
            for b in range(a, r + 1):
                eb = exps[b - 1]
                if eb is None:
                    continue
                if self.exponent(a * b) != (ea + eb) % 1:
                    raise DomainError(f"table is not multiplicative at ({a}, {b})")

    # -- values
    def exponent(self, n: int):
        return self.exponents[(n - 1) % self.modulus]

    def value(self, n: int) -> complex:
        e = self.exponent(n)
        return 0j if e is None else root_of_unity(e)

    def __call__(self, n: int) -> complex:
        return self.value(n)

    @cached_property
    def values(self) -> np.ndarray:
        """Complex values at n = 1..r."""
        arr = np.array([self.value(n) for n in range(1, self.modulus + 1)], dtype=complex)
        arr.setflags(write=False)
        return arr

    @cached_property
    def parity(self) -> str:
        e = self.exponent(-1)
        return "even" if e == 0 else "odd"

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    @cached_property
    def is_principal(self) -> bool:
        return all(e is None or e == 0 for e in self.exponents)

    @cached_property
    def is_real(self) -> bool:
        return all(e is None or e in (0, Fraction(1, 2)) for e in self.exponents)

    @cached_property
    def conductor(self) -> int:
        r = self.modulus
        for d in divisors(r):
            if all(self.exponent(n) == 0 for n in range(1, r + 1)
                   if math.gcd(n, r) == 1 and (n - 1) % d == 0):
                return d
        return r

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    def conj(self) -> "DirichletCharacter":
        exps = tuple(None if e is None else (-e) % 1 for e in self.exponents)
        lab = None if self.label is None else f"conj{self.label}"
        return DirichletCharacter(self.modulus, exps, lab)

    # -- construction / serialisation
    @classmethod
    def from_values(cls, modulus: int, values: Sequence, label: str | None = None,
                    tol: float = 1e-9) -> "DirichletCharacter":
        """Build from complex values at n = 1..r (zeros where gcd > 1)."""
        exps = []
        for v in values:
            v = complex(v)
            if abs(v) < tol:
                exps.append(None)
                continue
            if abs(abs(v) - 1) > tol:
                raise DomainError(f"value {v} is neither zero nor a root of unity")
            ang = cmath.phase(v) / (2 * math.pi)
            e = Fraction(ang).limit_denominator(4 * MAX_MODULUS) % 1
            if abs(root_of_unity(e) - v) > tol:
                raise DomainError(f"value {v} is not a low-order root of unity")
            exps.append(e)
        return cls(modulus, tuple(exps), label)

    def to_json(self) -> dict:
        out = {"modulus": self.modulus,
               "values": [None if e is None else str(e) for e in self.exponents]}
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data) -> "DirichletCharacter":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            vals = tuple(None if v is None else Fraction(v) for v in data["values"])
            return cls(int(data["modulus"]), vals, data.get("label"))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed character description: {exc}") from exc

    def __repr__(self):
        tag = self.label or f"mod {self.modulus}"
        return f"DirichletCharacter({tag}, {self.parity}, conductor={self.conductor})"


def _unit_generators(r: int) -> list:
    """(generator mod r, order) pairs whose product decomposes (Z/r)^*."""
    gens = []
    for p, e in factorize(r):
        q = p ** e
        other = r // q
        local = []
        if p == 2:
            if e == 2:
                local.append((3, 2))
            elif e >= 3:
                local.append((q - 1, 2))
                local.append((5, q // 4))
        else:
            order = q - q // p
            g = next(g for g in range(2, q) if math.gcd(g, p) == 1
                     and all(pow(g, order // s, q) != 1 for s, _ in factorize(order)))
            local.append((g, order))
        for g, order in local:
            # lift by CRT: g mod q, 1 mod the rest
            if other == 1:
                lifted = g % r
            else:
                inv = pow(other, -1, q)
                lifted = (1 + other * ((g - 1) * inv % q)) % r
            gens.append((lifted, order))
    return gens


@lru_cache(maxsize=None)
def enumerate_characters(r: int) -> tuple:
    """All phi(r) characters mod r, principal first."""
    if not isinstance(r, int) or r < 1:
        raise DomainError("modulus must be a positive integer")
    if r > MAX_MODULUS:
        raise DomainError(f"modulus above {MAX_MODULUS} is not supported")
    gens = _unit_generators(r)
    orders = [o for _, o in gens]
    dlog = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        n = 1
        for (g, _), a in zip(gens, exps):
            n = n * pow(g, a, r) % r
        dlog[n % r] = exps
    if r == 1:
        dlog = {0: ()}
    chars = []
    for b in itertools.product(*(range(o) for o in orders)):
        table = []
        for n in range(1, r + 1):
            a = dlog.get(n % r)
            if a is None:
                table.append(None)
            else:
                table.append(sum((Fraction(bi * ai, o) for bi, ai, o in zip(b, a, orders)),
                                 Fraction(0)) % 1)
        chars.append(DirichletCharacter(r, tuple(table)))
    return tuple(chars)


@lru_cache(maxsize=None)
def table1() -> dict:
    """The ten reference characters, keyed by their "[r,j]" label."""
    raw = json.loads(resources.files("mtzeta").joinpath("data/table1.json").read_text())
    out = {}
    for row in raw["characters"]:
        chi = DirichletCharacter.from_json(row)
        out[row["label"]] = chi
    return out


def table1_metadata() -> dict:
    raw = json.loads(resources.files("mtzeta").joinpath("data/table1.json").read_text())
    return {row["label"]: {"parity": row["parity"], "conductor": row["conductor"]}
            for row in raw["characters"]}


def character(label: str) -> DirichletCharacter:
    """Look up a reference character such as "[5,4]"."""
    key = label.replace(" ", "")
    if not key.startswith("["):
        key = f"[{key}]"
    try:
        return table1()[key]
    except KeyError:
        raise DomainError(f"unknown character label {label!r}") from None


def lookup_in_enumeration(chi: DirichletCharacter) -> int:
    """Position of chi in enumerate_characters(chi.modulus)."""
    for i, c in enumerate(enumerate_characters(chi.modulus)):
        if c == chi:
            return i
    raise ConsistencyError("character missing from the enumeration")


# ---------------------------------------------------------------------------
# Gauss sums

def gauss_sum(chi: DirichletCharacter, ell: int) -> complex:
    """G(ell, chi) = sum_j chi(j) exp(2 pi i j ell / r), summed exactly."""
    r = chi.modulus
    exps = []
    for j in range(1, r + 1):
        e = chi.exponent(j)
        if e is not None:
            exps.append(e + Fraction(j * ell, r))
    return _root_sum(exps)


def gauss_sum_vector(chi: DirichletCharacter) -> np.ndarray:
    """G(ell, chi) for ell = 1..r."""
    r = chi.modulus
    return np.array([gauss_sum(chi, ell) for ell in range(1, r + 1)], dtype=complex)


@dataclass(frozen=True)
class FeketeData:
    """A(t) with A(t) t prod_{d|r, d<r} phi_d(t) = -sum_ell G(ell, chi) t^ell.

    Coefficient arrays are lowest degree first.
    """

    character: DirichletCharacter
    numerator: np.ndarray
    denominator: np.ndarray
    remainder_norm: float = 0.0

    def eval_numerator(self, t):
        return np.polynomial.polynomial.polyval(t, self.numerator)

    def eval_denominator(self, t):
        return np.polynomial.polynomial.polyval(t, self.denominator)

    def ratio(self, t):
        """A(t) / phi_r(t)."""
        return self.eval_numerator(t) / self.eval_denominator(t)


def _complex_poly_divmod(num: np.ndarray, den: np.ndarray) -> tuple:
    num = np.array(num, dtype=complex)
    den = np.asarray(den, dtype=float)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return np.zeros(1, complex), num
    q = np.zeros(len(num) - dn, dtype=complex)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / den[-1]
        q[i - dn] = c
        num[i - dn:i + 1] -= c * den
    return q, num[:dn]


def fekete_reduce(chi: DirichletCharacter) -> FeketeData:
    r = chi.modulus
    if r < 2:
        raise DomainError("fekete_reduce needs r >= 2")
    g = gauss_sum_vector(chi)
    num = np.zeros(r + 1, dtype=complex)
    num[1:] = -g
    den = np.array([0, 1], dtype=float)
    for d in divisors(r)[:-1]:
        den = np.polynomial.polynomial.polymul(den, cyclotomic_poly(d))
    q, rem = _complex_poly_divmod(num, den)
    scale = 1.0 + float(np.max(np.abs(num)))
    rnorm = float(np.max(np.abs(rem))) if len(rem) else 0.0
    if rnorm > 1e-10 * scale:
        raise ConsistencyError(f"Fekete remainder {rnorm:.3e} does not vanish")
    q = np.where(np.abs(q.real) < 1e-13 * scale, 0.0, q.real) + \
        1j * np.where(np.abs(q.imag) < 1e-13 * scale, 0.0, q.imag)
    while len(q) > 1 and q[-1] == 0:
        q = q[:-1]
    return FeketeData(chi, q, np.array(cyclotomic_poly(r), dtype=float), rnorm)


# ---------------------------------------------------------------------------
# B_chi(t) = sum_j chi(j) log(1 - zeta_r^j t^x)

def b_chi_from_power(chi: DirichletCharacter, s, form: str = "auto") -> np.ndarray:
    """B_chi as a function of s = t^x in [0, 1)."""
    s = np.asarray(s, dtype=float)
    r = chi.modulus
    if form == "auto":
        form = "even" if chi.is_even else "odd"
    out = np.zeros(s.shape, dtype=complex)
    for j in range(1, r + 1):
        c = chi.value(j)
        if c == 0:
            continue
        cs, sn = _cos_exact(Fraction(j, r)), _sin_exact(Fraction(j, r))
        if form == "generic":
            out += c * np.log(1 - complex(cs, sn) * s)
        elif form == "even":
            out += c * 0.5 * np.log1p(s * s - 2 * cs * s)
        elif form == "odd":
            out += c * (-1j) * np.arctan2(sn * s, 1 - cs * s)
        else:
            raise DomainError(f"unknown form {form!r}")
    return out


def b_chi(chi: DirichletCharacter, t, x: float, form: str = "auto"):
    """B_chi(t) for t in (0, 1) and x > 0.  Parity forms by default."""
    if not x > 0:
        raise DomainError("x must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0) | (t_arr >= 1)):
        raise DomainError("t must lie in (0, 1)")
    res = b_chi_from_power(chi, t_arr ** x, form)
    return complex(res) if np.ndim(t) == 0 else res


# ---------------------------------------------------------------------------
# L-values

def l_function(z, chi: DirichletCharacter) -> EvalResult:
    """L(z, chi) = r^{-z} sum_b chi(b) zeta(z, b/r)."""
    z = complex(z)
    r = chi.modulus
    bs = [b for b in range(1, r + 1) if chi.exponent(b) is not None]
    a = np.array([b / r for b in bs])
    cv = np.array([chi.value(b) for b in bs])
    if z == 1 and chi.is_principal:
        raise PoleError("L(z, chi) has a pole at z = 1 for principal chi")
    reg = hurwitz_regular_array(z, a)
    la = np.log(a)
    if chi.is_principal:
        sing = np.exp((1 - z) * la) / (z - 1)
    else:
        # sum chi(b) = 0 lets the pole parts combine into a regular expression
        sing = -la * expm1_ratio(-(z - 1) * la)
    val = complex(np.sum(cv * (reg + sing))) * r ** (-z)
    return EvalResult(val, 1e-14 * (1 + abs(val)) * r)


def l_zero(chi: DirichletCharacter) -> complex:
    """L(0, chi) = sum_b chi(b)(1/2 - b/r)."""
    r = chi.modulus
    return complex(sum(chi.value(b) * (0.5 - b / r) for b in range(1, r + 1)))


def l_prime_zero(chi: DirichletCharacter) -> complex:
    """L'(0, chi) from zeta'(0, a) = log Gamma(a) - log(2 pi)/2."""
    r = chi.modulus
    lr = math.log(r)
    tot = 0j
    for b in range(1, r + 1):
        c = chi.value(b)
        if c == 0:
            continue
        a = b / r
        tot += c * (-lr * (0.5 - a) + math.lgamma(a) - 0.5 * math.log(2 * math.pi))
    return tot


def gauss_sum_over_m(chi: DirichletCharacter) -> complex:
    """sum_{m>=1} G(m, chi)/m = -sum_j chi(j) log(1 - zeta_r^j)."""
    r = chi.modulus
    tot = 0j
    for j in range(1, r):
        c = chi.value(j)
        if c == 0:
            continue
        a = j / r
        tot += c * complex(-math.log(2 * math.sin(math.pi * a)), math.pi * (0.5 - a))
    return tot


def gauss_sum_over_m_closed(chi: DirichletCharacter) -> complex:
    """Parity closed form of the m-sum: i pi L(0, chi) or 2 L'(0, chi)."""
    if chi.is_principal:
        raise DomainError("the m-sum diverges for principal chi")
    return 1j * math.pi * l_zero(chi) if not chi.is_even else 2 * l_prime_zero(chi)


# ---------------------------------------------------------------------------
# periodic functions

@dataclass(frozen=True)
class PeriodicFunction:
    """f on the integers with period r, f(r) = 0; values given for n = 1..r."""

    period: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.period, int) or self.period < 1:
            raise DomainError("period must be a positive integer")
        vals = tuple(complex(v) for v in self.values)
        if len(vals) != self.period:
            raise DomainError("value table must have length r")
        if vals[-1] != 0:
            raise DomainError("periodic function must satisfy f(r) = 0")
        object.__setattr__(self, "values", vals)

    def __call__(self, n: int) -> complex:
        return self.values[(n - 1) % self.period]

    @classmethod
    def from_character(cls, chi: DirichletCharacter) -> "PeriodicFunction":
        return cls(chi.modulus, tuple(chi.values))

    def to_json(self) -> dict:
        return {"period": self.period,
                "values": [[v.real, v.imag] for v in self.values]}

    @classmethod
    def from_json(cls, data) -> "PeriodicFunction":
        if isinstance(data, str):
            data = json.loads(data)
        vals = [complex(*v) if isinstance(v, (list, tuple)) else complex(v) for v in data["values"]]
        return cls(int(data["period"]), tuple(vals))


def gauss_type_sum(f: PeriodicFunction, m: int) -> complex:
    """g(m) = sum_j f(j) exp(2 pi i m j / r)."""
    r = f.period
    tot = 0j
    for j in range(1, r + 1):
        v = f(j)
        if v != 0:
            tot += v * root_of_unity(Fraction(m * j, r))
    return tot


def as_periodic(obj) -> PeriodicFunction:
    if isinstance(obj, PeriodicFunction):
        return obj
    if isinstance(obj, DirichletCharacter):
        return PeriodicFunction.from_character(obj)
    raise DomainError("expected a DirichletCharacter or PeriodicFunction")


def gauss_coefficients(obj) -> np.ndarray:
    """G(m) for m = 1..r of a character or periodic function."""
    if isinstance(obj, DirichletCharacter):
        return gauss_sum_vector(obj)
    f = as_periodic(obj)
    return np.array([gauss_type_sum(f, m) for m in range(1, f.period + 1)], dtype=complex)
