import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mtzeta import characters as ch
from mtzeta import mt_zeta as mt
from mtzeta import special_functions as sf
from mtzeta.results import DomainError

ZETA3 = float(mpmath.zeta(3))
L2 = math.log(2)


def v(r):
    return r.value


class TestTheta:
    def test_exact_values(self):
        # sum over n + m = N turns these into multiple zeta values
        assert abs(v(mt.theta(2, 1)) - 2 * ZETA3) <= 1e-12
        assert abs(v(mt.theta(3, 1)) - math.pi ** 4 / 180) <= 1e-12

    def test_reflection(self):
        assert abs(v(mt.theta(3, 2)) - 2 ** -2 * v(mt.theta(3, 0.5))) <= 1e-12

    @given(st.floats(1.2, 4.0), st.floats(-2.0, 2.0), st.floats(0.2, 6.0))
    def test_reflection_property(self, a, b, x):
        z = complex(a, b)
        r = v(mt.theta(z, x)) - x ** (1 - z) * v(mt.theta(z, 1 / x))
        assert abs(r) <= 1e-10

    def test_integral_vs_direct(self):
        a = mt.theta(3, 1.5)
        b = mt.theta(3, 1.5, method="direct")
        assert abs(a.value - b.value) <= a.abs_err + b.abs_err

    def test_laurent(self):
        c = mt.theta_laurent_fit(2.0)
        ex = mt.theta_laurent_exact(2.0)
        assert abs(c[0] - 2) <= 1e-4
        assert np.allclose(c, ex, atol=1e-4)

    def test_domain(self):
        with pytest.raises(DomainError):
            mt.theta(1.0, 2.0)

    def test_continued_matches_integral(self):
        assert abs(v(mt.theta_continued(2.5, 1.3)) - v(mt.theta(2.5, 1.3))) <= 1e-9


class TestThetaGeneral:
    def test_specialization(self):
        a = mt.theta_general(1, 1, 2, 2)
        b = mt.theta(3, 2)
        assert abs(a.value - b.value) <= a.abs_err + 1e-12

    def test_reflection(self):
        a = mt.theta_general(2, 2, 1, 2)
        b = mt.theta_general(2, 2, 1, 0.5)
        assert abs(a.value - 0.5 * b.value) <= a.abs_err + b.abs_err

    def test_domain(self):
        with pytest.raises(DomainError):
            mt.theta_general(0.2, 0.2, 0.5, 1.0)


class TestAlternating:
    def test_z2(self):
        assert abs(v(mt.alternating_theta(2, 1)) - ZETA3 / 4) <= 1e-12

    def test_z3(self):
        ref = (-math.pi ** 4 - 4 * math.pi ** 2 * L2 ** 2 + 4 * L2 ** 4
               + 96 * float(mpmath.polylog(4, 0.5)) + 84 * L2 * ZETA3) / 24
        assert abs(v(mt.alternating_theta(3, 1)) - ref) <= 1e-12

    def test_methods_agree(self):
        a = mt.alternating_theta(2.5, 1.3)
        b = mt.alternating_theta(2.5, 1.3, method="direct")
        assert abs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-12

    def test_combination(self):
        z, x = 2.5, 1.3
        r = (v(mt.theta(z, 2 * x)) - (2 ** (1 - z) + 1) * v(mt.theta(z, x))
             + 2 ** (1 - z) * v(mt.theta(z, x / 2)) + v(mt.alternating_theta(z, x)))
        assert abs(r) <= 1e-10


class TestScriptF:
    def test_phi_link(self):
        from mtzeta import herglotz as hz
        z, x = 2.5, 2.0
        r = (v(mt.script_f(z, x, 1, 1)) + v(hz.phi_hh(z, x)) - x ** -z * v(sf.riemann_zeta(z + 1))
             + x ** (1 - z) * v(sf.riemann_zeta(z)) / (z - 1))
        assert abs(r) <= 1e-10

    def test_z1_pair(self):
        u, w = 0.4, -0.3
        s = v(mt.script_f(1, 2, u, w)) + v(mt.script_f(1, 0.5, w, u))
        assert abs(s + math.log(1 - u) * math.log(1 - w)) <= 1e-12

    def test_series_vs_integral_inside_disc(self):
        a = mt.script_f(1.5, 1.2, 0.5j, -0.4)
        b = mt.script_f(1.5, 1.2, 0.5j, -0.4, method="series")
        assert abs(a.value - b.value) <= 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            mt.script_f(2, 1, 2.0, 0.5)
        with pytest.raises(DomainError):
            mt.script_f(0.5, 1, 0.5, 1.0)


class TestJ:
    @pytest.mark.parametrize("x", [0.3, 2.0, math.pi, 7.0])
    def test_classic_fes(self, x):
        assert abs(v(mt.j_classic(x)) + v(mt.j_classic(1 / x)) - L2 ** 2) <= 1e-10
        assert abs(v(mt.t_classic(x)) + v(mt.t_classic(1 / x)) - math.pi ** 2 / 16) <= 1e-10

    def test_j_cap_at_one(self):
        assert abs(v(mt.j_cap(1, 2.0)) + v(mt.j_classic(2.0))) <= 1e-14

    def test_jr_r2(self):
        c = ch.character("[2,1]")
        assert abs(v(mt.j_r(1, 2.0, c, c)) + v(mt.j_classic(2.0))) <= 1e-12

    def test_jr_r4(self):
        c = ch.character("[4,2]")
        assert abs(v(mt.j_r(1, 1.0, c, c)) - 4 * v(mt.t_classic(1.0))) <= 1e-12

    def test_jr_mod3(self):
        c = ch.character("[3,2]")
        ref = 1.5 * (math.pi / (3 * math.sqrt(3))) ** 2
        assert abs(v(mt.j_r(1, 1.0, c, c)) - ref) <= 1e-12

    @pytest.mark.parametrize("pair", [("[5,4]", "[5,3]"), ("[8,4]", "[8,1]"), ("[12,2]", "[12,3]")])
    def test_jr_methods(self, pair):
        a, b = (ch.character(p) for p in pair)
        q = mt.j_r(1.7, 0.8, a, b)
        s = mt.j_r(1.7, 0.8, a, b, method="scriptF_sum")
        assert abs(q.value - s.value) <= 1e-8

    def test_jr_fe_closure(self):
        a = ch.character("[4,2]")
        b = ch.character("[4,1]") if "[4,1]" in ch.table1() else ch.enumerate_characters(4)[0]
        z, x = 1.5, 2.0
        r = v(mt.j_r(z, x, a, b)) + x ** (1 - z) * v(mt.j_r(z, 1 / x, b, a)) + v(mt.gauss_double_sum(z, x, a, b))
        assert abs(r) <= 1e-9


class TestCrandall:
    def test_special_value(self):
        assert abs(v(mt.crandall_w(4, 2, 2, 1, 1)) - L2 ** 2) <= 1e-12
        assert abs(mt.crandall_special_z1(4, 2, 2) - L2 ** 2) <= 1e-13

    def test_direct(self):
        w = mt.crandall_w(4, 1, 3, 2.5, 1)
        d, tr = mt.crandall_w_direct(4, 1, 3, 2.5, 1)
        assert abs(w.value - d.value) <= w.abs_err + tr.tail_estimate

    def test_delta_invariance(self):
        b = mt.crandall_delta_bound(4, 1)
        w1 = mt.crandall_w(4, 1, 3, 0.5, 1, mt.CrandallParams(delta=0.5 * b))
        w2 = mt.crandall_w(4, 1, 3, 0.5, 1, mt.CrandallParams(delta=0.25 * b))
        assert abs(w1.value - w2.value) <= 1e-9

    @pytest.mark.parametrize("delta", [-1.0, 0.0, 5.0])
    def test_delta_range(self, delta):
        with pytest.raises(DomainError):
            mt.crandall_w(4, 1, 3, 0.5, 1, mt.CrandallParams(delta=delta))

    def test_gauss_sum_r2(self):
        c = ch.character("[2,1]")
        assert abs(v(mt.gauss_double_sum(2, 1, c, c)) - ZETA3 / 4) <= 1e-12

    def test_entire_at_nonpositive(self):
        r = mt.crandall_w(4, 1, 2, 0.0, 1.0)
        assert r.converged and np.isfinite(r.value)


class TestK:
    def test_r2(self):
        c = ch.character("[2,1]")
        lw = mpmath.nsum(lambda m, n: (-1) ** (m + n) * mpmath.log(m + n) / (m * n * (m + n)),
                         [1, mpmath.inf], [1, mpmath.inf])
        ref = (1 - sf.EULER_GAMMA) * ZETA3 / 8 - 0.5 * float(lw)
        # K_r carries the opposite sign of the y-integral
        assert abs(-v(mt.k_r(2, c, c)) - ref) <= 1e-6

    def test_log_weighted_paths(self):
        c = ch.character("[4,2]")
        a = mt.log_weighted_double_sum(2, 1, c, c)
        b = mt.log_weighted_double_sum(2, 1, c, c, method="direct")
        assert abs(a.value - b.value) <= max(1e-6, a.abs_err + b.abs_err)

    def test_linearity(self):
        c = ch.character("[4,2]")
        rot = ch.DirichletCharacter.from_values(4, [1, 0, -1, 0])
        assert abs(v(mt.k_r(2.5, c, rot)) - v(mt.k_r(2.5, c, c))) <= 1e-14

    def test_modulus_mismatch(self):
        with pytest.raises(DomainError):
            mt.k_r(2, ch.character("[4,2]"), ch.character("[3,2]"))


class TestPeriodic:
    F = ch.PeriodicFunction(4, (-1, math.pi, math.e, 0))

    def test_closed_form(self):
        e, p = math.e, math.pi
        ref = -((p * 1j * (e + 1) + 2 * (e + 2 * p - 1) * L2) ** 2) / 32
        assert abs(v(mt.periodic_j(1, 1, self.F, self.F)) - ref) <= 1e-9

    def test_zero(self):
        z = ch.PeriodicFunction(4, (0, 0, 0, 0))
        assert v(mt.periodic_j(1.3, 2.0, z, z)) == 0

    def test_fe(self):
        g = mt.gauss_m_sum(self.F)
        r = v(mt.periodic_j(1, 2, self.F, self.F)) + v(mt.periodic_j(1, 0.5, self.F, self.F)) + g * g
        assert abs(r) <= 1e-9
