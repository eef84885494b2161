import cmath
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mtzeta import kernels

BACKENDS = kernels.backends()


def brute(a, b, x, s, log_weight):
    tot = 0j
    for m, am in enumerate(a, 1):
        for n, bn in enumerate(b, 1):
            y = n + m * x
            t = am * bn * cmath.exp(-s * cmath.log(y))
            tot += t * (np.log(y) if log_weight else 1)
    return tot


def _vec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("s,lw", [(2.5, False), (2 + 0.5j, False), (2.5, True), (1.5 - 1j, True)])
def test_against_loop(name, s, lw):
    rng = np.random.default_rng(1)
    a, b = _vec(rng, 37), _vec(rng, 23)
    got = BACKENDS[name].weighted_double_sum(a, b, 1.3, s, lw)
    want = brute(a, b, 1.3, s, lw)
    assert abs(got - want) <= 1e-13 * max(1.0, abs(want))


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@given(st.integers(1, 300), st.integers(1, 300), st.floats(0.1, 10), st.floats(1.1, 4),
       st.floats(-3, 3), st.booleans(), st.integers(0, 2 ** 32 - 1))
def test_backends_agree(m, n, x, sr, si, lw, seed):
    rng = np.random.default_rng(seed)
    a, b = _vec(rng, m), _vec(rng, n)
    s = complex(sr, si)
    p = BACKENDS["python"].weighted_double_sum(a, b, x, s, lw)
    c = BACKENDS["cython"].weighted_double_sum(a, b, x, s, lw)
    scale = float(np.sum(np.abs(a))) * float(np.sum(np.abs(b)))
    assert abs(p - c) <= 1e-14 * max(1.0, scale)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_point_sum(name):
    rng = np.random.default_rng(2)
    w = _vec(rng, 50)
    y = rng.uniform(0.5, 40, 50)
    s = 1.7 + 0.3j
    want = sum(wk * cmath.exp(-s * cmath.log(yk)) for wk, yk in zip(w, y))
    assert abs(BACKENDS[name].point_sum(w, y, s) - want) <= 1e-13


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_empty(name):
    assert BACKENDS[name].weighted_double_sum(np.zeros(0), np.ones(3), 1.0, 2.0) == 0


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_repeatable(name):
    rng = np.random.default_rng(3)
    a, b = _vec(rng, 400), _vec(rng, 500)
    vals = {BACKENDS[name].weighted_double_sum(a, b, 0.7, 2.2 + 0.1j) for _ in range(3)}
    assert len(vals) == 1


def test_env_forces_python():
    env = dict(os.environ, MTZETA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from mtzeta import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_default_backend_is_compiled_when_built():
    if "cython" in BACKENDS and not os.environ.get("MTZETA_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
