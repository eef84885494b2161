"""Registry of functional equations and explicit evaluations as executable
checks.

Each entry pairs two evaluators (left and right side) with a deterministic
parameter sampler and a tolerance.  Three tolerance classes are used:
pure-quadrature identities (1e-8 unless stated), identities that pass
through a z-limit or z-derivative (1e-6), and comparisons against a
truncated double-sum oracle, which pass when the residual is within the
combined error estimate of both sides.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from . import characters as ch
from . import herglotz as hz
from . import mt_zeta as mt
from . import special_functions as sf
from . import tables
from .quadrature import integrate_01, mellin_log_singular
from .results import DomainError, EvalResult

QUADRATURE_TOL = 1e-8
LIMIT_TOL = 1e-6

_PI = math.pi
_L2 = math.log(2.0)


# ---------------------------------------------------------------------------
# report types

@dataclass(frozen=True)
class Sample:
    params: dict
    lhs: complex
    rhs: complex
    residual: float
    threshold: float
    converged: bool
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.converged and self.residual <= self.threshold

    def to_dict(self) -> dict:
        return {"params": self.params, "lhs": self.lhs, "rhs": self.rhs,
                "residual": self.residual, "threshold": self.threshold,
                "converged": self.converged, "error": self.error}


@dataclass(frozen=True)
class VerificationReport:
    id: str
    samples: tuple
    max_residual: float
    passed: bool
    tolerance: float
    runtime_ms: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {"id": self.id, "tolerance": self.tolerance, "max_residual": self.max_residual,
                "pass": self.passed, "samples": [s.to_dict() for s in self.samples]}


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    description: str
    evaluate: Callable[[dict], tuple]
    sampler: Callable[[np.random.Generator], list]
    tolerance: float
    kind: str = "quadrature"       # quadrature | limit | oracle
    anchor: str = ""

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.kind not in ("quadrature", "limit", "oracle"):
            raise DomainError(f"unknown tolerance class {self.kind!r}")


# ---------------------------------------------------------------------------
# small helpers

def _exact(v) -> EvalResult:
    return EvalResult(complex(v), 1e-16 * (1 + abs(complex(v))))


def _lin(parts, coeffs) -> EvalResult:
    val = 0j
    err = 0.0
    conv = True
    for p, c in zip(parts, coeffs):
        if not isinstance(p, EvalResult):
            p = _exact(p)
        val += c * p.value
        err += abs(c) * p.abs_err
        conv = conv and p.converged
    return EvalResult(val, err + 1e-16 * abs(val), conv)


def _oracle(res: EvalResult) -> EvalResult:
    """A truncated sum counts as converged when its tail bound is finite."""
    return EvalResult(res.value, res.abs_err, math.isfinite(res.abs_err))


def _grid(*pairs):
    return lambda rng: [dict(p) for p in pairs]


def _c(s) -> complex:
    return complex(s)


def _chi(label: str) -> ch.DirichletCharacter:
    return ch.character(label)


def _zeta(s) -> complex:
    return sf.riemann_zeta(s).value


_F = hz.herglotz_F


def _phi(z, x):
    return hz.phi_hh(z, x)


# ---------------------------------------------------------------------------
# Theta family

def _theta_symmetry(p):
    z, x = p["z"], p["x"]
    lhs = mt.theta(z, x)
    return lhs, _lin([mt.theta(z, 1 / x)], [x ** (1 - z)])


def _theta_symmetry_sampler(rng):
    pts = [(3.0, 1.0), (3.0, 2.0), (2.5, 0.5), (2.0, 3.0), (1.5, 1.7)]
    for _ in range(2):
        pts.append((round(float(rng.uniform(1.5, 3.5)), 6), round(float(rng.uniform(0.3, 3.0)), 6)))
    return [{"z": z, "x": x} for z, x in pts]


def _theta_general(p):
    s1, s2, s3, x = p["s1"], p["s2"], p["s3"], p["x"]
    lhs = _oracle(mt.theta_general(s1, s2, s3, x))
    if p["form"] == "recurrence":
        a = _oracle(mt.theta_general(s1 - 1, s2, s3 + 1, x))
        b = _oracle(mt.theta_general(s1, s2 - 1, s3 + 1, x))
        return lhs, _lin([a, b], [1, x])
    rhs = _oracle(mt.theta_general(s2, s1, s3, 1 / x))
    return lhs, _lin([rhs], [x ** (-s3)])


def _theta_3term(p):
    z, x = p["z"], p["x"]
    lhs = _lin([mt.theta(z, x), mt.theta(z, x + 1), mt.theta(z, x / (x + 1))],
               [1, -1, -(x + 1) ** (1 - z)])
    rhs = _lin([mt.theta(z, 1.0), sf.riemann_zeta(z + 1), hz.dilog_three_term_integral(z, x)],
               [-(x + 1) ** (1 - z), 1 + x ** (1 - z) - (x + 1) ** (1 - z), -(z - 1)])
    return lhs, rhs


def _decomposition(p):
    z, x = _c(p["z"]), p["x"]
    lhs = _lin([_phi(z, x), _phi(z, 1 / x)], [1, x ** (1 - z)])
    rhs = _lin([mt.theta(z, x), sf.riemann_zeta(z), sf.riemann_zeta(z + 1)],
               [1, -(1 + x ** (1 - z)) / (z - 1), x + x ** (-z)])
    return lhs, rhs


def _decomposition_sampler(rng):
    pts = [{"z": z, "x": x} for z in (1.5, 2.0, 3.0) for x in (0.5, 1.0, 2.0, math.e)]
    pts.append({"z": "(2+0.5j)", "x": 1.5})
    return pts


@lru_cache(maxsize=None)
def _laurent_fit(x):
    return mt.theta_laurent_fit(x)


def _laurent(p):
    i = {-2: 0, -1: 1, 0: 2}[p["order"]]
    fit = _laurent_fit(p["x"])[i]
    return EvalResult(fit, 0.0), _exact(mt.theta_laurent_exact(p["x"])[i])


# ---------------------------------------------------------------------------
# Herglotz-Zagier and Ishibashi

def _fe2(p):
    x = p["x"]
    lhs = _lin([_F(x), _F(1 / x)], [1, 1])
    extra = _exact(0.5 * math.log(x) ** 2 - _PI ** 2 / (6 * x) * (x - 1) ** 2)
    return lhs, _lin([_F(1.0), extra], [2, 1])


def _fe1(p):
    x = p["x"]
    lhs = _lin([_F(x), _F(x + 1), _F(x / (x + 1))], [1, -1, -1])
    li2 = float(sf.dilog_real(1 / (1 + x)))
    return lhs, _lin([_F(1.0), _exact(li2)], [-1, 1])


def _f_at_one(p):
    g = sf.EULER_GAMMA
    val = hz.herglotz_F(1.0) if p["method"] == "series" else hz.herglotz_F_integral(1.0)
    return val, _exact(-g * g / 2 - _PI ** 2 / 12 - sf.STIELTJES[1])


@lru_cache(maxsize=None)
def _phi_k_at_one(k):
    return hz.ishibashi_phi(k, 1.0)


def _ishibashi_2term_sides(k: int, x: float):
    c = hz.ishibashi_coeffs(k + 2)
    lx = math.log(x)
    lhs_parts, lhs_c = [], []
    rhs_parts, rhs_c = [], []
    for j in range(k + 1):
        w = math.comb(k, j) * lx ** (k - j) / 2 ** (k - j)
        sgn = (-1) ** (k - j)
        pre = (-1) ** (j + 1) / (j + 1)
        lhs_parts += [hz.ishibashi_phi(j + 1, x), hz.ishibashi_phi(j + 1, 1 / x)]
        lhs_c += [w * pre, w * pre * sgn]
        # bracket on the right
        inner = 0.0
        for ell in range(1, j + 1):
            s = 0.0
            for n in range(ell):
                s += ((-1) ** (n + 1) * hz.arakawa_kaneko(ell - n)
                      * math.factorial(ell + 1) / math.factorial(n + 1) * lx ** (n + 1))
            s += (-1) ** ell / (ell + 2) * lx ** (ell + 2)
            inner += c.coeff(j, ell - 1) / ell * s
        zj = sf.riemann_zeta(2.0, j)
        closed = -0.5 * c.coeff(j + 1, 0) * lx ** 2 - j * inner
        rhs_parts += [hz.l_k_star(j - 1, x), zj, _phi_k_at_one(j + 1), _exact(closed)]
        rhs_c += [w * j, w * (x + sgn / x - 2), w * 2 * pre, w]
    return _lin(lhs_parts, lhs_c), _lin(rhs_parts, rhs_c)


def _ishibashi_2term(p):
    return _ishibashi_2term_sides(p["k"], p["x"])


def _k1_sides(x: float, gamma_power: int):
    lx = math.log(x)
    g = sf.EULER_GAMMA
    z2p = sf.ZETA_PRIME_2
    p1, p1i = hz.ishibashi_phi(1, x), hz.ishibashi_phi(1, 1 / x)
    p2, p2i = hz.ishibashi_phi(2, x), hz.ishibashi_phi(2, 1 / x)
    lhs = _lin([p1, p1i, p2, p2i], [-lx / 2, lx / 2, 0.5, 0.5])
    c1 = hz.arakawa_kaneko(1)
    closed = (_PI ** 2 / 12 * lx * (x - 1 / x) + z2p * (x + 1 / x)
              - 0.5 * lx * (0.5 * lx ** 2 + _PI ** 2 / 3)
              - g ** gamma_power / 2 * lx ** 2 + 2 * c1 * lx + lx ** 3 / 3 - 2 * z2p)
    rhs = _lin([_exact(closed), _phi_k_at_one(1), _phi_k_at_one(2), hz.l_k_star(0, x)],
               [1, -lx, 1, 1])
    return lhs, rhs


def _k1_explicit(p):
    return _k1_sides(p["x"], 2)


def _k1_explicit_linear(p):
    return _k1_sides(p["x"], 1)


def _phi_prime_3term(p):
    k, x = p["k"], p["x"]
    lx = math.log(x)
    lx1 = math.log(x - 1)
    lq = math.log((x - 1) / x)
    parts, coeffs = [], []
    closed = 0.0
    for j in range(k + 1):
        w = math.comb(k, j) * (lx / 2) ** (k - j)
        sgn = (-1) ** (k - j)
        pre = (-1) ** (j + 1) / (j + 1)
        parts += [hz.ishibashi_phi_prime(j + 1, x), hz.ishibashi_phi_prime(j + 1, x - 1),
                  hz.ishibashi_phi_prime(j + 1, (x - 1) / x)]
        coeffs += [w * pre, -w * pre, w * pre * sgn / x ** 2]
        for ell in range(j + 1):
            brace = lx ** ell / x - lx1 ** ell / (x - 1) + sgn * lq ** ell / (x * (x - 1))
            closed += w * math.comb(j, ell) * (-1) ** j * sf.STIELTJES[j - ell] * brace
    closed += ((-lx / 2) ** (k + 1) - (lx / 2 - lx1) ** (k + 1)) / ((k + 1) * x)
    return _lin(parts, coeffs), _exact(closed)


# ---------------------------------------------------------------------------
# H1, H2, I

def _h1_2term(p):
    z, x = p["z"], p["x"]
    lhs = _lin([hz.h1(z, x), hz.h1(z, 1 / x)], [1, x ** (1 - z)])
    return lhs, _lin([sf.riemann_zeta(z)], [(1 - x ** (1 - z)) * math.log(x) / (z - 1)])


def _h1_3term(p):
    z, x = p["z"], p["x"]
    lhs = _lin([hz.h1(z, x), hz.h1(z, x + 1), hz.h1(z, x / (x + 1))], [1, -1, -(x + 1) ** (1 - z)])
    return lhs, _lin([sf.riemann_zeta(z)],
                     [((x + 1) ** (1 - z) - x ** (1 - z)) * math.log(x + 1) / (z - 1)])


def _h2_2term(p):
    z, x = p["z"], p["x"]
    return hz.h2(z, x), _lin([hz.h2(z, 1 / x)], [x ** (1 - z)])


def _h2_3term(p):
    z, x = p["z"], p["x"]
    lhs = _lin([hz.h2(z, x), hz.h2(z, x + 1), hz.h2(z, x / (x + 1))], [1, -1, -(x + 1) ** (1 - z)])
    rhs = _lin([sf.riemann_zeta(z + 1), hz.dilog_three_term_integral(z, x)],
               [((x + 1) ** (1 - z) - x ** (1 - z) - 1) / (z - 1), 1])
    return lhs, rhs


def _h1_closed(p):
    return hz.h1(p["z"], p["x"]), hz.h1_closed(p["z"], p["x"])


def _h2_closed(p):
    return hz.h2(p["z"], p["x"]), hz.h2_semiclosed(p["z"], p["x"])


def _i_split(p):
    z, x = p["z"], p["x"]
    return hz.i_integral(z, x), _lin([hz.h1(z, x), hz.h2(z, x)], [1, -1])


def _phi_paths(p):
    z, x = p["z"], p["x"]
    if p["route"] == "limit":
        return hz.phi_hh_series(z, x), _lin([_F(x)], [-1])
    return hz.phi_hh_series(z, x), hz.phi_hh_quadrature(z, x)


_H_GRID = _grid(*[{"z": z, "x": x} for z, x in ((2.5, 2.0), (2.3, 3.0), (3.0, 0.5), (1.7, 1.5))])


# ---------------------------------------------------------------------------
# J(z, x), alternating sums, scriptF

def _j_phi(p):
    z, x = p["z"], p["x"]
    rhs = _lin([_phi(z, 2 * x), _phi(z, x), _phi(z, x / 2), sf.riemann_zeta(z + 1)],
               [1, -(2 ** (1 - z) + 1), 2 ** (1 - z), (2 ** (-z) - 1) * x ** (-z)])
    return mt.j_cap(z, x), rhs


def _theta_combination(p):
    z, x = p["z"], p["x"]
    lhs = _lin([mt.theta(z, 2 * x), mt.theta(z, x), mt.theta(z, x / 2)],
               [1, -(2 ** (1 - z) + 1), 2 ** (1 - z)])
    return lhs, _lin([mt.alternating_theta(z, x)], [-1])


def _j_2term(p):
    z, x = p["z"], p["x"]
    lhs = _lin([mt.j_cap(z, x), mt.j_cap(z, 1 / x)], [1, x ** (1 - z)])
    return lhs, _lin([mt.alternating_theta(z, x)], [-1])


def _scriptf_phi(p):
    z, x = p["z"], p["x"]
    lhs = _lin([mt.script_f(z, x, 1, 1), _phi(z, x)], [1, 1])
    rhs = _lin([sf.riemann_zeta(z + 1), sf.riemann_zeta(z)], [x ** (-z), -x ** (1 - z) / (z - 1)])
    return lhs, rhs


def _scriptf_paths(p):
    z, x, u, v = p["z"], p["x"], _c(p["u"]), _c(p["v"])
    return mt.script_f(z, x, u, v), _oracle(mt.script_f(z, x, u, v, "series"))


def _scriptf_fe(p):
    z, x, u, v = p["z"], p["x"], _c(p["u"]), _c(p["v"])
    lhs = _lin([mt.script_f(z, x, u, v), mt.script_f(z, 1 / x, v, u)], [1, x ** (1 - z)])
    if "r" in p:
        # u = e(c/r), v = e(d/r): the double sum is the continued W_{c,d}
        s = mt.crandall_w(p["r"], p["c"], p["d"], z, x)
    else:
        s = _oracle(mt.direct_double_sum(mt.SeriesWeight.of_unit(u), mt.SeriesWeight.of_unit(v),
                                         1, 1, x, z - 1)[0])
    return lhs, _lin([s], [-1])


def _scriptf_z1(p):
    x, u, v = p["x"], _c(p["u"]), _c(p["v"])
    lhs = _lin([mt.script_f(1, x, u, v), mt.script_f(1, 1 / x, v, u)], [1, 1])
    return lhs, _exact(-np.log(1 - u) * np.log(1 - v))


# ---------------------------------------------------------------------------
# character-twisted integrals

def _jr_paths(p):
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    return mt.j_r(p["z"], p["x"], a, b), mt.j_r(p["z"], p["x"], a, b, "scriptF_sum")


def _jr_fe_lhs(z, x, a, b):
    return _lin([mt.j_r(z, x, a, b), mt.j_r(z, 1 / x, b, a)], [1, x ** (1 - z)])


def _jr_fe(p):
    z, x = p["z"], p["x"]
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    return _jr_fe_lhs(z, x, a, b), _lin([mt.gauss_double_sum(z, x, a, b)], [-1])


def _jr_fe_primitive(p):
    z, x = p["z"], p["x"]
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    general = _lin([mt.gauss_double_sum(z, x, a, b)], [-1])
    wa = mt.SeriesWeight(periodic=tuple(a.conj().values))
    wb = mt.SeriesWeight(periodic=tuple(b.conj().values))
    s = _oracle(mt.direct_double_sum(wa, wb, 1, 1, x, z - 1)[0])
    g = ch.gauss_sum(a, 1) * ch.gauss_sum(b, 1)
    return general, _lin([s], [-g])


def _corollary_d(p):
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    return _jr_fe_lhs(1.0, p["x"], a, b), _exact(mt.d_constant(a, b))


def _corollary_primitive(p):
    chi = _chi(p["chi"])
    lhs = _jr_fe_lhs(1.0, p["x"], chi, chi.conj())
    l1 = ch.l_function(1, chi)
    sgn = chi.value(chi.modulus - 1).real
    return lhs, EvalResult(-sgn * chi.modulus * abs(l1.value) ** 2, 2 * chi.modulus * abs(l1.value) * l1.abs_err)


def _corollary_real_primitive(p):
    chi = _chi(p["chi"])
    l1 = ch.l_function(1, chi)
    sgn = chi.value(chi.modulus - 1).real
    return mt.j_r(1, 1, chi, chi), EvalResult(-0.5 * sgn * chi.modulus * l1.value ** 2,
                                              chi.modulus * abs(l1.value) * l1.abs_err)


def _jt_fe(p):
    x = p["x"]
    if p["f"] == "J":
        return _lin([mt.j_classic(x), mt.j_classic(1 / x)], [1, 1]), _exact(_L2 ** 2)
    return _lin([mt.t_classic(x), mt.t_classic(1 / x)], [1, 1]), _exact(_PI ** 2 / 16)


def _jr_classic(p):
    x = p["x"]
    if p["r"] == 2:
        c = _chi("[2,1]")
        return mt.j_r(1, x, c, c), _lin([mt.j_classic(x)], [-1])
    c = _chi("[4,2]")
    return mt.j_r(1, x, c, c), _lin([mt.t_classic(x)], [4])


# ---------------------------------------------------------------------------
# Crandall continuation

_LEGAL_FRACTIONS = (0.2, 0.3, 0.4, 0.5, 0.6)


def _crandall_delta(p):
    r, c, d, z, x = p["r"], p["c"], p["d"], p["z"], p["x"]
    bound = mt.crandall_delta_bound(r, x)
    vals, spread = mt.crandall_sweep(r, c, d, z, x, [f * bound for f in _LEGAL_FRACTIONS])
    conv = all(v.converged for v in vals)
    # the residual of this check is the spread over the sweep
    lo = vals[0]
    return (EvalResult(lo.value, 0.0, conv),
            EvalResult(lo.value + spread, 0.0, conv))


def _crandall_z1(p):
    r, c, d, x = p["r"], p["c"], p["d"], p["x"]
    return mt.crandall_w(r, c, d, 1, x), _exact(mt.crandall_special_z1(r, c, d))


def _crandall_direct(p):
    r, c, d, z, x = p["r"], p["c"], p["d"], p["z"], p["x"]
    res, _ = mt.crandall_w_direct(r, c, d, z, x)
    return mt.crandall_w(r, c, d, z, x), _oracle(res)


def _log_weighted_paths(p):
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    z, x = p["z"], p["x"]
    return (mt.log_weighted_double_sum(z, x, a, b),
            _oracle(mt.log_weighted_double_sum(z, x, a, b, "direct")))


# ---------------------------------------------------------------------------
# explicit evaluations

def _catalan(p):
    c4 = _chi("[4,2]")
    z3 = _zeta(3).real
    rhs = _exact((4 * _PI * sf.CATALAN - 7 * z3) / 8)
    # G(m, chi_4) = 2i chi_4(m), so the odd-index sum is -1/4 of the Gauss-weighted one
    if p["route"] == "crandall":
        s = mt.gauss_double_sum(2, 1, c4, c4)
    else:
        s = _oracle(mt.gauss_double_sum(2, 1, c4, c4, "direct"))
    return _lin([s], [-0.25]), rhs


def _mod6_rhs(flip: bool) -> complex:
    s3 = math.sqrt(3.0)
    l3 = math.log(3.0)
    e = -1 if flip else 1          # sign on the log^3(3) term and the 18 log(3) Li2 weights
    w1 = complex(3, -s3) / 6
    w2 = complex(3, s3) / 6
    li2 = lambda w: sf.polylog(2, w).value
    li3 = lambda w: sf.polylog(3, w).value
    tri = lambda a: sf.hurwitz_zeta(2, a).value.real
    br = (e * 3 * l3 ** 3 - 5 * _PI ** 2 * l3
          + _PI * s3 * (tri(1 / 6) + tri(1 / 3) - tri(2 / 3) - tri(5 / 6))
          + (e * 18 * l3 - 30j * _PI) * li2(w1) + (e * 18 * l3 + 30j * _PI) * li2(w2)
          - 36 * (li3(w1) + li3(w2)))
    return -br / 18


_MOD6 = ch.PeriodicFunction(6, (1, 0, 0, 0, -1, 0))


def _mod6(p):
    return mt.gauss_double_sum(2, 1, _MOD6, _MOD6), EvalResult(_mod6_rhs(False), 1e-13)


def _mod6_reflected(p):
    return mt.gauss_double_sum(2, 1, _MOD6, _MOD6), EvalResult(_mod6_rhs(True), 1e-13)


def _explicit_2k(p):
    k = p["k"]
    n = 2 * k - 1
    if p["route"] == "quadrature":
        lhs = integrate_01(lambda y: (-np.log(y)) ** n * np.log1p(y) / (1 + y))
    else:
        lhs = _lin([mt.j_cap(2 * k, 1.0)], [-math.gamma(2 * k)])
    s = 0.5 * (2 * k - 1) * (2.0 ** (-2 * k) - 1) * _zeta(2 * k + 1)
    for j in range(k):
        zj = -0.5 if j == 0 else _zeta(2 * j)
        s -= (2.0 ** (1 - 2 * j) - 1) * zj * _zeta(2 * k - 2 * j + 1)
    return lhs, _exact(math.gamma(2 * k) * s)


def _li4_value() -> float:
    li4 = sf.polylog(4, 0.5).value.real
    z3 = _zeta(3).real
    return (-_PI ** 4 - 4 * _PI ** 2 * _L2 ** 2 + 4 * _L2 ** 4 + 96 * li4 + 84 * z3 * _L2) / 24


def _li4(p):
    if p["route"] == "alternating":
        lhs = mt.alternating_theta(3, 1)
    else:
        c2 = _chi("[2,1]")
        lhs = mt.gauss_double_sum(3, 1, c2, c2)
    return lhs, _exact(_li4_value())


def _zeta3(p):
    c2 = _chi("[2,1]")
    if p["route"] == "alternating":
        lhs = mt.alternating_theta(2, 1)
    else:
        lhs = mt.gauss_double_sum(2, 1, c2, c2)
    return lhs, _exact(_zeta(3).real / 4)


def _k_r2(p):
    c2 = _chi("[2,1]")
    g = sf.EULER_GAMMA
    lw = mt.log_weighted_double_sum(2, 1, c2, c2)
    rhs = _lin([_exact((1 - g) * _zeta(3).real / 8), lw], [1, -0.5])
    if p["route"] == "integral":
        lhs = mellin_log_singular(lambda t: np.log1p(t) / (1 + t), 2, log_power=1)
    else:
        lhs = _lin([mt.k_r(2, c2, c2)], [-1])
    return lhs, rhs


def _k_r4(p):
    c4 = _chi("[4,2]")
    g = sf.EULER_GAMMA
    lw = mt.log_weighted_double_sum(2, 1, c4, c4)
    rhs = _lin([_exact((1 - g) * (4 * _PI * sf.CATALAN - 7 * _zeta(3).real) / 16), lw], [1, 0.125])
    if p["route"] == "integral":
        lhs = mellin_log_singular(lambda t: np.arctan(t) / (1 + t * t), 2, log_power=1)
    else:
        lhs = _lin([mt.k_r(2, c4, c4)], [0.25])
    return lhs, rhs


def _k_general(p):
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    z = p["z"]
    lw = mt.log_weighted_double_sum(z, 1, a, b)
    gs = mt.gauss_double_sum(z, 1, a, b)
    return mt.k_r(z, a, b), _lin([lw, gs], [0.5, -0.5 * sf.digamma(z)])


def _k_symmetrized(p):
    a, b = _chi(p["chi1"]), _chi(p["chi2"])
    z = p["z"]
    lw = _lin([mt.log_weighted_double_sum(z, 1, a, b), mt.log_weighted_double_sum(z, 1, b, a)], [0.5, 0.5])
    gs = _lin([mt.gauss_double_sum(z, 1, a, b), mt.gauss_double_sum(z, 1, b, a)], [0.5, 0.5])
    lhs = _lin([mt.k_r(z, a, b), mt.k_r(z, b, a)], [0.5, 0.5])
    return lhs, _lin([lw, gs], [0.5, -0.5 * sf.digamma(z)])


def _table2(p):
    chi = _chi(p["chi"])
    fx = {row["label"]: row for row in tables.table2_fixture()}[p["chi"]]
    return _jr_fe_lhs(1.0, p["x"], chi, chi.conj()), _exact(fx["C"])


_F4 = ch.PeriodicFunction(4, (-1, _PI, math.e, 0))


def _periodic4(p):
    if p["form"] == "value":
        ref = -((1j * _PI * (math.e + 1) + 2 * (math.e + 2 * _PI - 1) * _L2) ** 2) / 32
        return mt.periodic_j(1, 1, _F4, _F4, p["method"]), _exact(ref)
    x = p["x"]
    lhs = _lin([mt.periodic_j(1, x, _F4, _F4), mt.periodic_j(1, 1 / x, _F4, _F4)], [1, 1])
    return lhs, _exact(-mt.gauss_m_sum(_F4) ** 2)


def _vardi(p):
    lhs = mellin_log_singular(lambda y: 1.0 / (1.0 + np.exp(-2.0 * y)), 1, log_power=1, variable="y")
    g = math.gamma
    return lhs, _exact(_PI / 2 * math.log(g(0.75) / g(0.25) * math.sqrt(2 * _PI)))


# ---------------------------------------------------------------------------
# registry

def _anchors() -> dict:
    return json.loads(resources.files("mtzeta").joinpath("data/anchors.json").read_text())


def _build() -> dict:
    a = _anchors()
    specs = []

    def add(id, desc, fn, sampler, tol, kind="quadrature"):
        specs.append(IdentitySpec(id, desc, fn, sampler, tol, kind, a.get(id, "")))

    add("theta_symmetry", "Theta(z, x) = x^{1-z} Theta(z, 1/x)", _theta_symmetry,
        _theta_symmetry_sampler, QUADRATURE_TOL)
    add("theta_general_recurrence",
        "three-exponent Theta: shift recurrence and reflection",
        _theta_general, _grid({"form": "recurrence", "s1": 2, "s2": 2, "s3": 1, "x": 1.5},
                              {"form": "recurrence", "s1": 2, "s2": 2, "s3": 1.5, "x": 0.8},
                              {"form": "reflection", "s1": 2, "s2": 2, "s3": 1, "x": 2.0},
                              {"form": "reflection", "s1": 3, "s2": 2, "s3": 1, "x": 0.5}),
        QUADRATURE_TOL, "oracle")
    add("theta_3term", "three-term relation for Theta with the dilogarithm Mellin integral",
        _theta_3term, _grid(*[{"z": z, "x": x} for z in (2.0, 2.5, 3.0) for x in (1.0, 1.5, 2.0)]),
        1e-7)
    add("decomposition", "Phi(z,x) + x^{1-z} Phi(z,1/x) in terms of Theta and zeta",
        _decomposition, _decomposition_sampler, 1e-9)
    add("laurent_theta", "Laurent coefficients of Theta at z = 1 from a +-eps fit",
        _laurent, _grid(*[{"x": x, "order": o} for x in (1.0, 2.0) for o in (-2, -1, 0)]), 1e-4,
        "limit")
    xs6 = (1 / 3, 0.5, 1.5, 2.0, math.e, 5.0)
    add("f_at_one", "F(1) in terms of gamma and gamma_1", _f_at_one,
        _grid({"method": "series"}, {"method": "integral"}), 1e-10)
    add("fe2_zagier", "two-term relation for F", _fe2, _grid(*[{"x": x} for x in xs6]), 1e-9)
    add("fe1_zagier", "three-term relation for F", _fe1, _grid(*[{"x": x} for x in xs6]), 1e-9)
    add("ishibashi_2term", "two-term relation for the Ishibashi functions", _ishibashi_2term,
        _grid(*[{"k": k, "x": x} for k in (0, 1, 2) for x in (0.5, 2.0, math.e)]), 1e-7, "limit")
    add("ishibashi_k1_explicit", "k = 1 two-term relation in explicit form", _k1_explicit,
        _grid({"x": 2.0}, {"x": 3.0}), 1e-7, "limit")
    add("ishibashi_k1_explicit_linear_gamma",
        "k = 1 explicit form with the gamma log^2 coefficient taken as gamma/2",
        _k1_explicit_linear, _grid({"x": 2.0}, {"x": 3.0}), 1e-7, "limit")
    add("phi_prime_3term", "three-term relation for the derivatives Phi'_k", _phi_prime_3term,
        _grid(*[{"k": k, "x": x} for k in (0, 1, 2) for x in (1.5, 2.0, 3.0)]), 1e-6, "limit")
    add("phi_hh_paths", "Phi(z, x): series vs quadrature, and the z = 1 value -F(x)", _phi_paths,
        _grid({"route": "quadrature", "z": 2.0, "x": 1.0}, {"route": "quadrature", "z": 1.5, "x": 2.0},
              {"route": "quadrature", "z": 3.0, "x": 0.5}, {"route": "limit", "z": 1.0, "x": 2.0}),
        1e-9)
    add("h1_2term", "two-term relation for H1", _h1_2term, _H_GRID, QUADRATURE_TOL)
    add("h1_3term", "three-term relation for H1", _h1_3term, _H_GRID, QUADRATURE_TOL)
    add("h2_2term", "two-term relation for H2", _h2_2term, _H_GRID, QUADRATURE_TOL)
    add("h2_3term", "three-term relation for H2", _h2_3term, _H_GRID, QUADRATURE_TOL)
    add("h1_closed", "H1 quadrature vs closed form", _h1_closed, _H_GRID, 1e-9)
    add("h2_closed", "H2 quadrature vs dilogarithm form", _h2_closed, _H_GRID, QUADRATURE_TOL)
    add("i_eq_h1_minus_h2", "I = H1 - H2", _i_split, _H_GRID, QUADRATURE_TOL)
    add("j_phi_relation", "J(z, x) through Phi at x/2, x, 2x", _j_phi,
        _grid({"z": 2.2, "x": 1.7}, {"z": 3.0, "x": 0.5}, {"z": 1.5, "x": 2.0}), QUADRATURE_TOL)
    add("theta_combination", "Theta at x/2, x, 2x against the alternating sum",
        _theta_combination, _grid({"z": 2.5, "x": 1.3}, {"z": 2.0, "x": 2.0}, {"z": 3.0, "x": 0.6}),
        QUADRATURE_TOL)
    add("j_2term", "two-term relation for J(z, x)", _j_2term,
        _grid({"z": 2.0, "x": 2.0}, {"z": 3.0, "x": 0.7}), QUADRATURE_TOL)
    add("scriptF_phi_link", "F_z(x; 1, 1) through Phi(z, x)", _scriptf_phi,
        _grid({"z": 2.5, "x": 2.0}, {"z": 1.5, "x": 0.7}), QUADRATURE_TOL)
    add("scriptF_paths", "F_z(x; u, v): integral vs double series", _scriptf_paths,
        _grid({"z": 2.5, "x": 2.0, "u": "0.4", "v": "-0.3"},
              {"z": 1.5, "x": 0.5, "u": "0.5j", "v": "0.6"},
              {"z": 0.7, "x": 2.0, "u": "0.5", "v": "-0.5"}), QUADRATURE_TOL, "oracle")
    add("scriptF_fe", "two-term relation for F_z(x; u, v)", _scriptf_fe,
        _grid({"z": 2.0, "x": 1.5, "u": "1j", "v": "1j", "r": 4, "c": 1, "d": 1},
              {"z": 2.5, "x": 2.0, "u": "0.4", "v": "-0.3"}), QUADRATURE_TOL, "oracle")
    add("scriptF_z1", "F(x; u, v) + F(1/x; v, u) = -log(1-u) log(1-v)", _scriptf_z1,
        _grid({"x": 2.0, "u": "0.4", "v": "-0.3"}, {"x": 0.5, "u": "0.5j", "v": "0.2"}),
        QUADRATURE_TOL)
    add("jr_paths", "J_r by reduced quadrature vs the F_z sum", _jr_paths,
        _grid({"z": 1.0, "x": 2.0, "chi1": "[5,4]", "chi2": "[5,3]"},
              {"z": 0.5, "x": 0.7, "chi1": "[12,2]", "chi2": "[12,3]"},
              {"z": 2.5, "x": 1.3, "chi1": "[8,4]", "chi2": "[8,1]"}), QUADRATURE_TOL)
    add("jr_fe_general", "J_r two-term relation against the Gauss-weighted sum, Re z > 1", _jr_fe,
        _grid({"z": 1.5, "x": 2.0, "chi1": "[4,2]", "chi2": "[4,2]"},
              {"z": 2.5, "x": 0.7, "chi1": "[5,4]", "chi2": "[5,3]"},
              {"z": 2.0, "x": 1.3, "chi1": "[12,2]", "chi2": "[12,3]"},
              {"z": 1.5, "x": 1.0, "chi1": "[8,1]", "chi2": "[8,4]"}), QUADRATURE_TOL)
    add("jr_fe_primitive", "separable Gauss sums: general vs primitive form", _jr_fe_primitive,
        _grid({"z": 2.5, "x": 1.0, "chi1": "[5,4]", "chi2": "[5,4]"},
              {"z": 3.0, "x": 2.0, "chi1": "[3,2]", "chi2": "[3,2]"},
              {"z": 2.5, "x": 1.5, "chi1": "[5,3]", "chi2": "[5,4]"}), 1e-9, "oracle")
    add("jr_fe_extended", "J_r two-term relation with the continued sum, z in {0.5, 1}", _jr_fe,
        _grid(*[{"z": z, "x": x, "chi1": a, "chi2": b} for z in (0.5, 1.0)
                for a, b, x in (("[4,2]", "[4,2]", 2.0), ("[5,4]", "[5,3]", 0.7),
                                ("[12,2]", "[12,3]", 1.5))]), QUADRATURE_TOL)
    add("corollary_Dchi", "z = 1 constant from L(0, chi) and L'(0, chi) by parity", _corollary_d,
        _grid({"chi1": "[5,4]", "chi2": "[5,4]", "x": 1.3}, {"chi1": "[5,3]", "chi2": "[5,3]", "x": 1.3},
              {"chi1": "[5,4]", "chi2": "[5,3]", "x": 1.3}, {"chi1": "[5,3]", "chi2": "[5,4]", "x": 1.3},
              {"chi1": "[12,2]", "chi2": "[12,3]", "x": 2.0}, {"chi1": "[10,3]", "chi2": "[10,3]", "x": 2.0}),
        QUADRATURE_TOL)
    add("corollary_primitive", "primitive chi: z = 1 constant -chi(-1) r |L(1, chi)|^2",
        _corollary_primitive,
        _grid(*[{"chi": c, "x": x} for c in ("[3,2]", "[4,2]", "[5,3]", "[5,4]", "[8,4]")
                for x in (1.0, 2.0)]), QUADRATURE_TOL)
    add("corollary_real_primitive", "real primitive chi: J_r(1, 1) = -chi(-1) r L(1, chi)^2 / 2",
        _corollary_real_primitive, _grid(*[{"chi": c} for c in ("[3,2]", "[4,2]", "[5,3]", "[8,4]")]),
        QUADRATURE_TOL)
    add("jt_fe", "J(x) + J(1/x) = log^2 2 and T(x) + T(1/x) = pi^2/16", _jt_fe,
        _grid(*[{"f": f, "x": x} for f in ("J", "T") for x in (0.3, 0.5, 2.0, 3.0, _PI, 7.0)]), 1e-10)
    add("jr_classic_link", "J_2 = -J(x) and J_4 = 4 T(x)", _jr_classic,
        _grid({"r": 2, "x": 2.0}, {"r": 2, "x": 0.5}, {"r": 4, "x": 1.0}, {"r": 4, "x": 2.0}), 1e-9)
    add("crandall_delta_invariance", "W_{c,d}(z, x) is independent of delta (5-point sweep)",
        _crandall_delta,
        _grid(*[{"r": r, "c": c, "d": d, "z": z, "x": x}
                for r, c, d in ((4, 2, 2), (4, 1, 3), (5, 2, 3), (12, 5, 7))
                for z in (0.5, 1.0, 2.0) for x in (1.0, 2.0)]), 1e-9)
    add("crandall_special_z1", "W_{c,d}(1, x) = L(1, c/r) L(1, d/r)", _crandall_z1,
        _grid({"r": 4, "c": 2, "d": 2, "x": 1.0}, {"r": 5, "c": 2, "d": 3, "x": 1.7},
              {"r": 12, "c": 5, "d": 7, "x": 0.6}, {"r": 4, "c": 1, "d": 3, "x": 2.0}), 1e-9)
    add("crandall_direct_oracle", "continued W vs direct double sum at Re z = 2.5", _crandall_direct,
        _grid({"r": 4, "c": 1, "d": 3, "z": 2.5, "x": 1.0}, {"r": 5, "c": 2, "d": 3, "z": 2.5, "x": 2.0}),
        1e-9, "oracle")
    add("log_weighted_paths", "log-weighted sum: z-derivative of W vs direct summation",
        _log_weighted_paths, _grid({"z": 2.5, "x": 1.0, "chi1": "[4,2]", "chi2": "[4,2]"}),
        LIMIT_TOL, "oracle")
    add("explicit_catalan", "odd-index alternating sum = (4 pi G - 7 zeta(3))/8", _catalan,
        _grid({"route": "crandall"}, {"route": "direct"}), QUADRATURE_TOL, "oracle")
    add("explicit_mod6", "mod-6 Gauss-weighted sum in psi', Li2, Li3 (as stated)", _mod6,
        _grid({"z": 2, "x": 1}), 1e-7)
    add("explicit_mod6_log_reflected",
        "mod-6 Gauss-weighted sum with the odd powers of log 3 sign-reversed", _mod6_reflected,
        _grid({"z": 2, "x": 1}), 1e-7)
    add("explicit_2k", "log^{2k-1}-weighted log(1+y)/(1+y) integral in zeta values", _explicit_2k,
        _grid(*[{"k": k, "route": r} for k in (1, 2) for r in ("quadrature", "j_cap")]), QUADRATURE_TOL)
    add("explicit_li4", "alternating sum at z = 3 through Li4(1/2)", _li4,
        _grid({"route": "alternating"}, {"route": "crandall"}), QUADRATURE_TOL)
    add("explicit_zeta3", "alternating sum at z = 2 equals zeta(3)/4", _zeta3,
        _grid({"route": "alternating"}, {"route": "crandall"}), 1e-9)
    add("k_identity_r2", "log log integral for r = 2 at z = 2", _k_r2,
        _grid({"route": "integral"}, {"route": "k_r"}), LIMIT_TOL, "limit")
    add("k_identity_r4", "log log integral for r = 4 at z = 2", _k_r4,
        _grid({"route": "integral"}, {"route": "k_r"}), LIMIT_TOL, "limit")
    add("k_identity_general", "K_r(z) = (log-weighted sum - psi(z) Gauss sum)/2 at x = 1", _k_general,
        _grid({"z": 2.0, "chi1": "[2,1]", "chi2": "[2,1]"},
              {"z": 2.5, "chi1": "[5,4]", "chi2": "[5,3]"}), LIMIT_TOL, "limit")
    add("k_identity_symmetrized",
        "average of K_r over both character orders against the symmetrized sums", _k_symmetrized,
        _grid({"z": 2.0, "chi1": "[2,1]", "chi2": "[2,1]"},
              {"z": 2.5, "chi1": "[5,4]", "chi2": "[5,3]"},
              {"z": 2.0, "chi1": "[12,2]", "chi2": "[12,3]"}), LIMIT_TOL, "limit")
    add("table2_rows", "C_chi for the ten reference characters at x in {1, 2}", _table2,
        _grid(*[{"chi": row["label"], "x": x} for row in tables.table2_fixture() for x in (1.0, 2.0)]),
        QUADRATURE_TOL)
    add("periodic_4", "period-4 f = (-1, pi, e, 0): J(1, 1) and the x <-> 1/x relation", _periodic4,
        _grid({"form": "value", "method": "scriptF_sum"}, {"form": "value", "method": "quadrature"},
              {"form": "fe", "x": 2.0}), 1e-9)
    add("vardi_quadrature", "integral of log log(1/y)/(1+y^2) over (0, 1)", _vardi,
        _grid({}), QUADRATURE_TOL)
    return {s.id: s for s in sorted(specs, key=lambda s: s.id)}


@lru_cache(maxsize=1)
def registry() -> dict:
    return _build()


def identity_ids() -> list:
    return list(registry())


def get_spec(id: str) -> IdentitySpec:
    try:
        return registry()[id]
    except KeyError:
        raise DomainError(f"unknown identity {id!r}") from None


# ---------------------------------------------------------------------------
# running

def _threshold(spec: IdentitySpec, tol: float, lhs: EvalResult, rhs: EvalResult) -> float:
    if spec.kind == "oracle":
        return max(tol, lhs.abs_err + rhs.abs_err)
    return tol


def _run_sample(spec: IdentitySpec, params: dict, tol: float) -> Sample:
    try:
        lhs, rhs = spec.evaluate(params)
    except Exception as exc:   # evaluator failures are recorded, not raised
        nan = complex(math.nan, math.nan)
        return Sample(params, nan, nan, math.inf, tol, False, f"{type(exc).__name__}: {exc}")
    res = abs(lhs.value - rhs.value)
    conv = lhs.converged and rhs.converged and math.isfinite(res)
    return Sample(params, lhs.value, rhs.value, res, _threshold(spec, tol, lhs, rhs), conv)


def run_identity(id: str, seed: int = 0, tolerance: float | None = None) -> VerificationReport:
    """Evaluate every sample of one registered identity."""
    spec = get_spec(id)
    tol = spec.tolerance if tolerance is None else float(tolerance)
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    samples = tuple(_run_sample(spec, p, tol) for p in spec.sampler(rng))
    ms = 1000 * (time.perf_counter() - t0)
    mx = max((s.residual for s in samples), default=0.0)
    ok = bool(samples) and all(s.ok for s in samples)
    return VerificationReport(id, samples, mx, ok, tol, ms)


def run_all(seed: int = 0, ids=None, workers: int = 1, tolerances: dict | None = None) -> list:
    """Run the registry (or a subset), ordered by id regardless of scheduling."""
    ids = sorted(identity_ids() if ids is None else ids)
    for i in ids:
        get_spec(i)
    tolerances = tolerances or {}

    def one(i):
        return run_identity(i, seed, tolerances.get(i))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(one, ids))
    else:
        reports = [one(i) for i in ids]
    return sorted(reports, key=lambda r: r.id)


# ---------------------------------------------------------------------------
# serialization

def format_number(v, digits: int = 15) -> str:
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.{digits}g}"
    return f"{v.real:.{digits}g}{v.imag:+.{digits}g}j"


def report_rows(reports) -> list:
    rows = []
    for rep in reports:
        for s in rep.samples:
            rows.append({"id": rep.id, "params": s.params, "lhs": s.lhs, "rhs": s.rhs,
                         "residual": s.residual, "pass": s.ok})
    return rows


def to_json(reports, digits: int = 15) -> str:
    out = []
    for r in report_rows(reports):
        out.append({"id": r["id"], "params": r["params"], "lhs": format_number(r["lhs"], digits),
                    "rhs": format_number(r["rhs"], digits),
                    "residual": f"{r['residual']:.{digits}g}", "pass": r["pass"]})
    return json.dumps(out, indent=1, sort_keys=False)


CSV_COLUMNS = ("id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "pass")


def to_csv(reports, digits: int = 15) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report_rows(reports):
        lhs, rhs = complex(r["lhs"]), complex(r["rhs"])
        w.writerow([r["id"], json.dumps(r["params"], sort_keys=True),
                    f"{lhs.real:.{digits}g}", f"{lhs.imag:.{digits}g}",
                    f"{rhs.real:.{digits}g}", f"{rhs.imag:.{digits}g}",
                    f"{r['residual']:.{digits}g}", str(r["pass"]).lower()])
    return buf.getvalue()
