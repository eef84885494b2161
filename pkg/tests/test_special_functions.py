import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mtzeta import special_functions as sf
from mtzeta.results import PoleError

G = float(mpmath.euler)


def c(v):
    return complex(v)


class TestConstants:
    def test_table_shape(self):
        t = sf.constants()
        assert t.stieltjes[0] == t.euler_gamma
        assert len(t.stieltjes) == 11
        assert all(t.bernoulli[2 * k + 1] == 0 for k in range(1, 30))
        assert t.bernoulli[1] == -0.5

    @pytest.mark.parametrize("k", range(11))
    def test_stieltjes_against_mpmath(self, k):
        ref = float(mpmath.stieltjes(k))
        assert abs(sf.STIELTJES[k] - ref) <= 1e-15 * max(1.0, abs(ref))

    def test_named_constants(self):
        assert sf.EULER_GAMMA == pytest.approx(G, abs=1e-16)
        assert sf.CATALAN == pytest.approx(float(mpmath.catalan), abs=1e-16)
        assert sf.ZETA_PRIME_2 == pytest.approx(float(mpmath.zeta(2, derivative=1)), abs=1e-15)


class TestGamma:
    def test_simple_values(self):
        assert sf.gamma(1).value == pytest.approx(1, abs=1e-15)
        assert sf.gamma(0.5).value.real == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_complex_value(self):
        ref = c(mpmath.gamma(mpmath.mpc(4.3, 2.1)))
        assert abs(sf.gamma(4.3 + 2.1j).value - ref) <= 1e-13 * abs(ref)

    def test_pole(self):
        with pytest.raises(PoleError):
            sf.gamma(-2)

    @given(st.floats(0.05, 0.95), st.floats(-3, 3))
    def test_reflection(self, a, b):
        z = complex(a, b)
        lhs = sf.gamma(z).value * sf.gamma(1 - z).value * cmath.sin(math.pi * z) / math.pi
        assert abs(lhs - 1) <= 1e-12

    def test_recip_gamma_taylor(self):
        g = sf.recip_gamma_taylor(4)
        assert g[0] == pytest.approx(1, abs=1e-15)
        assert g[1] == pytest.approx(G, abs=1e-15)
        assert g[2] == pytest.approx((G * G - math.pi ** 2 / 6) / 2, abs=1e-14)
        ref = mpmath.taylor(mpmath.rgamma, 1, 4)
        assert np.allclose(g, [float(v) for v in ref], atol=1e-13)

    def test_digamma(self):
        assert sf.digamma(1).real == pytest.approx(-G, abs=1e-15)
        assert sf.digamma(2).real == pytest.approx(1 - G, abs=1e-15)


class TestDigammaK:
    def test_psi0_matches_digamma(self):
        for x in (0.3, 1.0, 2.7, 15.0, 400.0):
            assert sf.digamma_k(0, x).value.real == pytest.approx(float(mpmath.digamma(x)), abs=1e-12)

    def test_psi0_derivative(self):
        assert sf.digamma_k(0, 1.7, derivative=True).value.real == pytest.approx(
            float(mpmath.psi(1, 1.7)), abs=1e-12)

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    @pytest.mark.parametrize("x", [0.4, 1.7, 9.0, 55.0])
    def test_against_generalized_stieltjes(self, k, x):
        ref = -float(mpmath.stieltjes(k, x))
        v = sf.digamma_k(k, x)
        assert abs(v.value.real - ref) <= max(1e-12 * max(1.0, abs(ref)), v.abs_err)


class TestZeta:
    def test_values(self):
        assert sf.riemann_zeta(2).value == pytest.approx(math.pi ** 2 / 6, abs=1e-15)
        assert sf.riemann_zeta(2, 1).value.real == pytest.approx(float(mpmath.zeta(2, derivative=1)), abs=1e-13)
        assert sf.riemann_zeta(2, 2).value.real == pytest.approx(float(mpmath.zeta(2, derivative=2)), abs=1e-12)

    def test_near_one(self):
        s = 1 + 1e-6
        v = sf.riemann_zeta(s).value.real - 1 / (s - 1)
        assert v == pytest.approx(G, abs=1e-5)
        assert sf.zeta_laurent_near_1(0) == pytest.approx(G, abs=1e-15)

    def test_pole(self):
        with pytest.raises(PoleError):
            sf.riemann_zeta(1)

    def test_hurwitz_values(self):
        assert sf.hurwitz_zeta(2, 1).value == pytest.approx(math.pi ** 2 / 6, abs=1e-14)
        assert sf.hurwitz_zeta(2, 0.5).value.real == pytest.approx(math.pi ** 2 / 2, abs=1e-13)
        z = 0.5 + 3j
        assert abs(sf.hurwitz_zeta(z, 0.3).value - c(mpmath.zeta(z, 0.3))) <= 1e-12

    def test_hurwitz_derivative(self):
        v = sf.hurwitz_zeta(2.5, 0.7, deriv_order=1).value
        assert abs(v - c(mpmath.zeta(2.5, 0.7, derivative=1))) <= 1e-12

    @pytest.mark.parametrize("z", [-3.9 + 10.4j, -3.5 + 8.6j, -2.2 - 4j, -0.4 + 1j, -1.0])
    @pytest.mark.parametrize("a", [0.15, 0.96, 1.76, 7.3])
    def test_hurwitz_left_half_plane(self, z, a):
        ref = c(mpmath.zeta(z, a))
        assert abs(sf.hurwitz_zeta(z, a).value - ref) <= 2e-11 * max(1.0, abs(ref))

    @given(st.floats(-4, 6), st.floats(-10, 10), st.floats(0.05, 20))
    def test_hurwitz_recurrence(self, re_z, im_z, a):
        z = complex(re_z, im_z)
        if abs(z - 1) < 1e-3:
            return
        lhs = sf.hurwitz_zeta(z, a).value - sf.hurwitz_zeta(z, a + 1).value
        rhs = cmath.exp(-z * math.log(a))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs), abs(sf.hurwitz_zeta(z, a).value))


class TestIncompleteGamma:
    def test_exponential(self):
        for y in (0.1, 1.0, 7.0):
            assert sf.upper_incomplete_gamma(1, y).value.real == pytest.approx(math.exp(-y), rel=1e-13)

    def test_near_zero(self):
        assert sf.upper_incomplete_gamma(2, 1e-12).value.real == pytest.approx(1.0, abs=1e-11)

    def test_complex(self):
        s = 0.5 + 0.5j
        ref = c(mpmath.gammainc(s, 2.0))
        assert abs(sf.upper_incomplete_gamma(s, 2.0).value - ref) <= 1e-12 * abs(ref)

    @given(st.floats(0.2, 8), st.floats(-3, 3), st.floats(0.05, 30))
    def test_complementary(self, a, b, y):
        s = complex(a, b)
        tot = sf.upper_incomplete_gamma(s, y).value + sf.lower_incomplete_gamma(s, y).value
        ref = sf.gamma(s).value
        assert abs(tot - ref) <= 1e-12 * max(1.0, abs(ref))


class TestPolylog:
    def test_special(self):
        assert sf.polylog(2, 1).value == pytest.approx(math.pi ** 2 / 6, abs=1e-14)
        assert sf.polylog(4, 0.5).value.real == pytest.approx(float(mpmath.polylog(4, 0.5)), abs=1e-14)

    def test_landen(self):
        w = 0.3
        lhs = sf.polylog(2, w).value + sf.polylog(2, -w / (1 - w)).value
        assert lhs.real == pytest.approx(-0.5 * math.log(1 - w) ** 2, abs=1e-14)

    @pytest.mark.parametrize("s", [2, 3, 4])
    @pytest.mark.parametrize("w", [0.5j, (3 + 1.7320508075688772j) / 6, cmath.exp(2j), -1, 0.99])
    def test_complex_args(self, s, w):
        assert abs(sf.polylog(s, w).value - c(mpmath.polylog(s, w))) <= 1e-12

    def test_dilog_real(self):
        xs = np.array([-3.0, -1.0, -0.2, 0.0, 0.3, 0.5, 0.9, 1.0])
        ref = [float(mpmath.polylog(2, x)) for x in xs]
        assert np.allclose(sf.dilog_real(xs), ref, atol=1e-14)

    @given(st.floats(0.01, 0.99), st.floats(0.01, 0.99))
    def test_hill_identity(self, th, ph):
        li = lambda v: float(sf.dilog_real(v))
        lhs = 0.5 * math.log((1 - th) / (1 - ph)) ** 2
        rhs = (li(th * ph) - li(th) - li(ph) - li((th * ph - th) / (1 - th))
               - li((th * ph - ph) / (1 - ph)))
        assert abs(lhs - rhs) <= 1e-11


class TestPeriodicZeta:
    def test_values(self):
        assert sf.periodic_zeta(1, 0.5).value.real == pytest.approx(-math.log(2), abs=1e-15)
        assert sf.periodic_zeta(2, 0.5).value.real == pytest.approx(-math.pi ** 2 / 12, abs=1e-14)

    def test_series_region(self):
        a = 0.3
        w = cmath.exp(2j * math.pi * a)
        assert abs(sf.periodic_zeta(2.5, a).value - c(mpmath.polylog(2.5, w))) <= 1e-12

    def test_negative_integer_abel(self):
        # Abel limit of Li_{-3}(r e(1/3)) as r -> 1; mpmath evaluates the rational closed form
        w = cmath.exp(2j * math.pi / 3)
        ref = c(mpmath.polylog(-3, w))
        assert abs(sf.periodic_zeta(-3, 1 / 3).value - ref) <= 1e-9


class TestArakawaKaneko:
    def test_c0_c1(self):
        assert sf.arakawa_kaneko_c(0).value == pytest.approx(0, abs=1e-14)
        c1 = -G * G / 2 + math.pi ** 2 / 12 - sf.STIELTJES[1]
        assert sf.arakawa_kaneko_c(1).value.real == pytest.approx(c1, abs=1e-12)

    def test_c2_from_laurent(self):
        # c_k is the k-th Taylor coefficient of Gamma(s) zeta(s) - 1/(s-1) at s = 1
        f = lambda s: mpmath.gamma(s) * mpmath.zeta(s) - 1 / (s - 1)
        ref = float(mpmath.taylor(f, 1 + mpmath.mpf("1e-30"), 2)[2])
        assert sf.arakawa_kaneko_c(2).value.real == pytest.approx(ref, abs=1e-9)
