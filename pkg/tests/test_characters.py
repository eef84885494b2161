import cmath
import json
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mtzeta import characters as ch
from mtzeta.results import ConsistencyError, DomainError, PoleError

S3 = math.sqrt(3)


def _mp_table(chi):
    # mpmath wants chi(0), chi(1), ..., chi(r-1)
    v = [complex(c) for c in chi.values]
    return [v[-1]] + v[:-1]


class TestEnumeration:
    def test_mod2(self):
        chars = ch.enumerate_characters(2)
        assert len(chars) == 1
        assert chars[0].value(1) == 1

    @pytest.mark.parametrize("r", range(1, 31))
    def test_count(self, r):
        assert len(ch.enumerate_characters(r)) == ch.euler_phi(r)

    def test_mod4_odd(self):
        chi = ch.character("[4,2]")
        assert np.allclose(chi.values, [1, 0, -1, 0])
        assert chi.parity == "odd" and chi.conductor == 4

    def test_mod12(self):
        chi = ch.character("[12,2]")
        assert chi.value(5) == -1 and chi.value(7) == 1 and chi.value(11) == -1
        assert chi.parity == "odd" and chi.conductor == 3
        assert not chi.primitive

    def test_table1_columns(self):
        meta = ch.table1_metadata()
        for label, chi in ch.table1().items():
            assert chi.parity == meta[label]["parity"]
            assert chi.conductor == int(meta[label]["conductor"])
            assert ch.lookup_in_enumeration(chi) >= 0

    def test_unknown_label(self):
        with pytest.raises(DomainError):
            ch.character("[7,99]")

    @pytest.mark.parametrize("r", range(1, 17))
    def test_orthogonality(self, r):
        chars = ch.enumerate_characters(r)
        vals = np.array([c.values for c in chars])
        gram = vals @ vals.conj().T
        assert np.allclose(gram, ch.euler_phi(r) * np.eye(len(chars)), atol=1e-12)

    @pytest.mark.parametrize("r", range(1, 21))
    def test_invariants(self, r):
        for chi in ch.enumerate_characters(r):
            assert chi.value(1) == 1
            for n in range(1, r + 1):
                assert (chi.value(n) == 0) == (math.gcd(n, r) > 1)
                for m in range(1, r + 1):
                    assert abs(chi.value(n * m) - chi.value(n) * chi.value(m)) <= 1e-14
            sign = chi.value(r - 1) if r > 1 else 1
            assert (chi.parity == "even") == (abs(sign - 1) < 1e-12)
            assert r % chi.conductor == 0

    def test_json_roundtrip(self):
        for chi in ch.table1().values():
            back = ch.DirichletCharacter.from_json(json.dumps(chi.to_json()))
            assert back == chi

    def test_from_values_rejects_nonmultiplicative(self):
        with pytest.raises((DomainError, ConsistencyError)):
            ch.DirichletCharacter.from_values(5, [1, 1, -1, 1, 0])


class TestGaussSums:
    @pytest.mark.parametrize("r", range(2, 17))
    def test_primitive_modulus(self, r):
        for chi in ch.enumerate_characters(r):
            if chi.primitive:
                assert abs(abs(ch.gauss_sum(chi, 1)) ** 2 - r) <= 1e-12 * r

    def test_mod6(self):
        chi = next(c for c in ch.enumerate_characters(6) if not c.is_principal)
        want = {1: 1j * S3, 2: 1j * S3, 4: -1j * S3, 5: -1j * S3, 3: 0, 6: 0}
        for ell, v in want.items():
            assert abs(ch.gauss_sum(chi, ell) - v) <= 1e-14

    def test_mod4_generating_polynomial(self):
        chi = ch.character("[4,2]")
        g = ch.gauss_sum_vector(chi)
        t = np.linspace(0.05, 0.95, 7)
        poly = sum(g[ell - 1] * t ** ell for ell in range(1, 5))
        assert np.allclose(poly, 2j * t * (1 - t * t), atol=1e-14)

    def test_separability_mod5(self):
        for chi in ch.enumerate_characters(5):
            if chi.is_principal:
                continue
            g1 = ch.gauss_sum(chi, 1)
            for m in range(1, 11):
                assert abs(ch.gauss_sum(chi, m) - g1 * chi.conj().value(m)) <= 1e-13

    def test_exact_zeros(self):
        chi = ch.character("[12,2]")
        g = ch.gauss_sum_vector(chi)
        assert any(v == 0 for v in g)

    def test_against_float_sum(self):
        for chi in ch.table1().values():
            r = chi.modulus
            for ell in range(1, r + 1):
                ref = sum(chi.value(j) * cmath.exp(2j * math.pi * j * ell / r) for j in range(1, r + 1))
                assert abs(ch.gauss_sum(chi, ell) - ref) <= 1e-14 * r * 10


class TestFekete:
    @pytest.mark.parametrize("label,expected", [
        ("[2,1]", [-1]),
        ("[3,2]", [1j * S3]),
        ("[8,4]", [2 * math.sqrt(2) * 1j, 0, 2 * math.sqrt(2) * 1j]),
    ])
    def test_examples(self, label, expected):
        a = ch.fekete_reduce(ch.character(label).conj()).numerator
        assert len(a) == len(expected)
        assert np.allclose(a, expected, atol=1e-13)

    def test_remainder_table1(self):
        for chi in ch.table1().values():
            for c in (chi, chi.conj()):
                fd = ch.fekete_reduce(c)
                assert fd.remainder_norm <= 1e-10

    @pytest.mark.parametrize("r", range(2, 17))
    def test_identity_all(self, r):
        P = np.polynomial.polynomial
        for chi in ch.enumerate_characters(r):
            fd = ch.fekete_reduce(chi)
            den = np.array([0.0, 1.0])
            for d in ch.divisors(r)[:-1]:
                den = P.polymul(den, ch.cyclotomic_poly(d))
            lhs = P.polymul(fd.numerator, den)
            rhs = np.concatenate([[0], -ch.gauss_sum_vector(chi)])
            n = max(len(lhs), len(rhs))
            lhs = np.pad(lhs, (0, n - len(lhs)))
            rhs = np.pad(rhs, (0, n - len(rhs)))
            assert np.allclose(lhs, rhs, atol=1e-12)

    def test_principal_mod_prime(self):
        # the division also goes through for the principal character
        fd = ch.fekete_reduce(ch.enumerate_characters(7)[0])
        assert fd.remainder_norm <= 1e-10

    def test_rejects_modulus_one(self):
        with pytest.raises(DomainError):
            ch.fekete_reduce(ch.enumerate_characters(1)[0])


class TestBChi:
    def test_mod4(self):
        chi = ch.character("[4,2]")
        t = np.linspace(0.01, 0.99, 11)
        assert np.allclose(ch.b_chi(chi, t, 1.7), -2j * np.arctan(t ** 1.7), atol=1e-14)

    def test_mod6(self):
        chi = next(c for c in ch.enumerate_characters(6) if not c.is_principal)
        t = np.linspace(0.01, 0.99, 11)
        s = t ** 0.6
        ref = -1j * 2 * np.arctan(S3 * s / (2 - s))
        assert np.allclose(ch.b_chi(chi, t, 0.6), ref, atol=1e-13)

    def test_at_zero(self):
        for chi in ch.table1().values():
            assert abs(ch.b_chi(chi, 0.0, 2.0)) == 0

    def test_domain(self):
        chi = ch.character("[4,2]")
        with pytest.raises(DomainError):
            ch.b_chi(chi, 1.0, 1.0)
        with pytest.raises(DomainError):
            ch.b_chi(chi, 0.5, 0.0)

    @given(st.floats(0.001, 0.999), st.floats(0.05, 8), st.sampled_from(sorted(ch.table1())))
    def test_parity_vs_generic(self, t, x, label):
        chi = ch.character(label)
        a = ch.b_chi(chi, t, x)
        b = ch.b_chi(chi, t, x, form="generic")
        assert abs(a - b) <= 1e-11


class TestLValues:
    def test_mod4(self):
        chi = ch.character("[4,2]")
        assert ch.l_zero(chi) == pytest.approx(0.5, abs=1e-15)
        assert ch.l_function(1, chi).value == pytest.approx(math.pi / 4, abs=1e-13)
        assert abs(ch.gauss_sum_over_m(chi) - 1j * math.pi / 2) <= 1e-14
        assert abs(ch.gauss_sum_over_m_closed(chi) - 1j * math.pi / 2) <= 1e-14

    def test_principal_pole(self):
        with pytest.raises(PoleError):
            ch.l_function(1, ch.character("[2,1]"))

    @pytest.mark.parametrize("label", sorted(ch.table1()))
    def test_m_sum_closed_form(self, label):
        chi = ch.character(label)
        if chi.is_principal:
            with pytest.raises(DomainError):
                ch.gauss_sum_over_m_closed(chi)
            return
        assert abs(ch.gauss_sum_over_m(chi) - ch.gauss_sum_over_m_closed(chi)) <= 1e-13

    @pytest.mark.parametrize("label", sorted(ch.table1()))
    @pytest.mark.parametrize("z", [2.0, 0.5 + 1j, 3.5])
    def test_against_mpmath(self, label, z):
        chi = ch.character(label)
        ref = complex(mpmath.dirichlet(z, _mp_table(chi)))
        assert abs(ch.l_function(z, chi).value - ref) <= 1e-12

    def test_l_prime_zero(self):
        chi = ch.character("[5,3]") if ch.character("[5,3]").is_even else ch.character("[8,1]")
        ref = complex(mpmath.diff(lambda s: mpmath.dirichlet(s, _mp_table(chi)), 0))
        assert abs(ch.l_prime_zero(chi) - ref) <= 1e-12


class TestPeriodic:
    F = ch.PeriodicFunction(4, (-1, math.pi, math.e, 0))

    def test_case_table(self):
        assert abs(ch.gauss_type_sum(self.F, 1) - (-1j - 1j * math.e - math.pi)) <= 1e-14
        assert abs(ch.gauss_type_sum(self.F, 4) - (-1 + math.e + math.pi)) <= 1e-14

    def test_period_in_m(self):
        for m in range(1, 5):
            assert ch.gauss_type_sum(self.F, m) == ch.gauss_type_sum(self.F, m + 8)

    def test_zero_function(self):
        z = ch.PeriodicFunction(5, (0, 0, 0, 0, 0))
        assert all(ch.gauss_type_sum(z, m) == 0 for m in range(1, 6))

    def test_requires_zero_at_period(self):
        with pytest.raises(DomainError):
            ch.PeriodicFunction(3, (1, 2, 3))

    def test_json(self):
        assert ch.PeriodicFunction.from_json(self.F.to_json()) == self.F

    def test_character_as_periodic(self):
        chi = ch.character("[3,2]")
        f = ch.as_periodic(chi)
        assert np.allclose(ch.gauss_coefficients(f), ch.gauss_coefficients(chi), atol=1e-14)


def test_cyclotomic():
    assert ch.cyclotomic_poly(1) == (-1, 1)
    assert ch.cyclotomic_poly(6) == (1, -1, 1)
    assert ch.divisors(12) == [1, 2, 3, 4, 6, 12]


def test_root_of_unity_exact():
    assert ch.root_of_unity(Fraction(1, 4)) == 1j
    assert ch.root_of_unity(Fraction(1, 2)) == -1
