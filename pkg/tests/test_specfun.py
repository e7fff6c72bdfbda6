import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from fracwell.errors import DomainError
from fracwell.specfun import (EULER_GAMMA, LevyIndex, a_mu, ci, frac_cos_integral,
                              frac_sin_integral, oscillatory_integral, oscillatory_tail,
                              si, sici)

mpmath.mp.dps = 30


def si_series(x, terms=80):
    """Taylor series of Si in exact-ish arithmetic."""
    x = mpmath.mpf(x)
    return float(mpmath.nsum(lambda k: (-1) ** k * x ** (2 * k + 1)
                             / ((2 * k + 1) * mpmath.factorial(2 * k + 1)), [0, terms]))


def ci_series(x, terms=80):
    x = mpmath.mpf(x)
    tail = mpmath.nsum(lambda k: (-1) ** k * x ** (2 * k) / (2 * k * mpmath.factorial(2 * k)),
                       [1, terms])
    return float(mpmath.euler + mpmath.log(x) + tail)


def frac_sin_oracle(mu, z):
    """Hypergeometric closed form of int_0^z u^-mu sin u du."""
    mu, z = mpmath.mpf(mu), mpmath.mpf(z)
    return float(z ** (2 - mu) / (2 - mu)
                 * mpmath.hyp1f2((2 - mu) / 2, 1.5, (4 - mu) / 2, -z * z / 4))


def frac_cos_oracle(mu, a, b):
    mu = mpmath.mpf(mu)
    return float(mpmath.quad(lambda u: u ** (-mu) * mpmath.cos(u), [a, b]))


class TestLevyIndex:
    @pytest.mark.parametrize("mu", [-0.1, 2.0000001, float("nan"), float("inf")])
    def test_rejects_out_of_range(self, mu):
        with pytest.raises(DomainError):
            LevyIndex(mu)

    def test_flags(self):
        assert LevyIndex(0).is_zero_limit and not LevyIndex(0).is_cauchy
        assert LevyIndex(1).is_cauchy and not LevyIndex(1).is_laplacian
        assert LevyIndex(2).is_laplacian and not LevyIndex(2).is_zero_limit
        assert float(LevyIndex(1.5)) == 1.5


class TestAmu:
    def test_cauchy(self):
        assert a_mu(1) == pytest.approx(1 / math.pi, rel=1e-15)

    def test_exact_zeros(self):
        assert a_mu(0) == 0.0
        assert a_mu(2) == 0.0

    def test_near_two_is_linear(self):
        assert 0.98 <= a_mu(1.99) / (2 - 1.99) <= 1.02

    @given(st.floats(min_value=1e-6, max_value=2 - 1e-6))
    def test_matches_gamma_formula(self, mu):
        expected = special.gamma(mu + 1) * math.sin(math.pi * mu / 2) / math.pi
        assert a_mu(mu) > 0
        assert a_mu(mu) == pytest.approx(expected, rel=1e-13)


class TestSiCi:
    def test_si_examples(self):
        assert si(0.0) == 0.0
        np.testing.assert_allclose(si(math.pi), si_series(math.pi), atol=1e-12)
        np.testing.assert_allclose(si(math.pi), 1.8519370, atol=5e-8)
        np.testing.assert_allclose(si(2 * math.pi), 1.4181516, atol=5e-8)
        np.testing.assert_allclose(2 * si(2 * math.pi), 2.83630315, atol=5e-9)

    def test_ci_examples(self):
        np.testing.assert_allclose(ci(1.0), ci_series(1.0), atol=1e-12)
        np.testing.assert_allclose(ci(1.0), 0.3374039, atol=5e-8)
        np.testing.assert_allclose(ci(math.pi / 2), ci_series(math.pi / 2), atol=1e-12)
        np.testing.assert_allclose(ci(math.pi / 2), 0.4720007, atol=5e-8)

    @pytest.mark.parametrize("x", [1e-8, 0.3, 1.0, 3.9, 4.0, 4.1, 7.5, 16.0, 30.0, 250.0, 1e4])
    def test_against_mpmath(self, x):
        s, c = sici(x)
        assert abs(s - float(mpmath.si(x))) <= 1e-12
        assert abs(c - float(mpmath.ci(x))) <= 1e-12

    def test_vectorized_matches_scipy(self):
        x = np.geomspace(1e-6, 1e5, 500)
        s, c = sici(x)
        s_ref, c_ref = special.sici(x)
        np.testing.assert_allclose(s, s_ref, atol=1e-13)
        np.testing.assert_allclose(c, c_ref, atol=1e-13)

    def test_ci_domain(self):
        for x in (0.0, -1.0):
            with pytest.raises(DomainError):
                ci(x)

    def test_ci_small_argument(self):
        for x in np.linspace(1e-4, 0.1, 25):
            assert abs(ci(x) - math.log(x) - EULER_GAMMA) <= x * x / 4

    @given(st.floats(min_value=0.0, max_value=1e4))
    def test_si_nonnegative(self, x):
        assert si(x) >= 0.0

    @given(st.floats(min_value=10.0, max_value=1e6))
    def test_si_asymptotic_bound(self, x):
        assert abs(si(x) - math.pi / 2) <= 2 / x


class TestFracSin:
    def test_examples(self):
        assert frac_sin_integral(1, math.pi) == pytest.approx(si(math.pi), abs=1e-12)
        assert frac_sin_integral(0, math.pi) == pytest.approx(2.0, abs=1e-13)
        brute = float(mpmath.quad(lambda u: mpmath.sin(u) / mpmath.sqrt(u), [0, 1]))
        assert frac_sin_integral(0.5, 1.0) == pytest.approx(brute, abs=1e-9)

    def test_zero_endpoint_exact(self):
        for mu in (0.0, 0.5, 1.0, 1.9):
            assert frac_sin_integral(mu, 0.0) == 0.0

    @pytest.mark.parametrize("z", [0.1, 1.0, math.pi, 10.0])
    def test_reduces_to_si(self, z):
        assert abs(frac_sin_integral(1, z) - si(z)) <= 1e-12

    @pytest.mark.parametrize("mu", [0.2, 0.5, 0.999999, 1.000001, 1.5, 1.9, 1.999])
    @pytest.mark.parametrize("z", [1e-3, 0.7, 1.0, 3.5, 12.0, 80.0])
    def test_hypergeometric_oracle(self, mu, z):
        ref = frac_sin_oracle(mu, z)
        assert frac_sin_integral(mu, z) == pytest.approx(ref, rel=1e-10, abs=1e-300)

    def test_domain(self):
        with pytest.raises(DomainError):
            frac_sin_integral(2.0, 1.0)
        with pytest.raises(DomainError):
            frac_sin_integral(1.0, -0.5)

    def test_vectorized(self):
        z = np.array([0.0, 0.5, 2.0, 40.0])
        out = frac_sin_integral(0.7, z)
        np.testing.assert_allclose(out, [frac_sin_integral(0.7, v) for v in z], rtol=1e-14)


class TestFracCos:
    def test_examples(self):
        assert frac_cos_integral(0, 0.0, math.pi / 2) == pytest.approx(1.0, abs=1e-13)
        assert frac_cos_integral(1, 1.0, 2.0) == pytest.approx(ci(2.0) - ci(1.0), abs=1e-12)
        assert frac_cos_integral(1, 1.0, 2.0) == pytest.approx(0.0855769058739, abs=1e-12)
        ref = frac_cos_oracle(0.5, 0.5, 3.0)
        assert frac_cos_integral(0.5, 0.5, 3.0) == pytest.approx(ref, abs=1e-9)

    @pytest.mark.parametrize("a,b", [(0.01, 0.02), (0.5, 3.0), (1.0, 20.0), (3.0, 7.0), (0.2, 19.5)])
    def test_reduces_to_ci(self, a, b):
        assert abs(frac_cos_integral(1, a, b) - (ci(b) - ci(a))) <= 1e-12

    @pytest.mark.parametrize("mu", [0.0, 0.3, 0.8, 1.2, 1.7, 1.99])
    @pytest.mark.parametrize("a,b", [(0.05, 0.9), (0.5, 2.5), (2.0, 9.0), (0.3, 60.0), (10.0, 250.0)])
    def test_mpmath_oracle(self, mu, a, b):
        ref = frac_cos_oracle(mu, a, b)
        assert frac_cos_integral(mu, a, b) == pytest.approx(ref, rel=1e-10, abs=1e-13)

    def test_integrable_origin_below_one(self):
        ref = float(mpmath.quad(lambda u: u ** -0.5 * mpmath.cos(u), [0, 1, 3]))
        assert frac_cos_integral(0.5, 0.0, 3.0) == pytest.approx(ref, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            frac_cos_integral(1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            frac_cos_integral(0.5, 2.0, 1.0)
        with pytest.raises(DomainError):
            frac_cos_integral(2.0, 1.0, 2.0)
        assert frac_cos_integral(1.5, 0.0, 0.0) == 0.0

    @settings(max_examples=60)
    @given(st.floats(min_value=0.0, max_value=1.99),
           st.lists(st.floats(min_value=0.01, max_value=200.0), min_size=3, max_size=3))
    def test_additivity(self, mu, pts):
        a, b, c = sorted(pts)
        whole = frac_cos_integral(mu, a, c)
        split = frac_cos_integral(mu, a, b) + frac_cos_integral(mu, b, c)
        assert abs(whole - split) <= 1e-10 * max(1.0, abs(whole))


class TestOscillatory:
    @pytest.mark.parametrize("nu", [0.3, 1.0, 1.5, 2.7])
    @pytest.mark.parametrize("s", [0.5, 4.0, 31.4])
    def test_tail_against_incomplete_gamma(self, nu, s):
        # int_s^inf u^-nu e^{iu} du = i^(1-nu) Gamma(1-nu, -i s)
        ref = complex(1j ** (1 - nu) * mpmath.gammainc(1 - nu, -1j * s))
        got = oscillatory_tail(nu, s)
        assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))

    def test_finite_pieces_match_tail_difference(self):
        c, s = oscillatory_integral(1.3, 2.0, 50.0)
        diff = oscillatory_tail(1.3, 2.0) - oscillatory_tail(1.3, 50.0)
        assert c == pytest.approx(diff.real, abs=1e-14)
        assert s == pytest.approx(diff.imag, abs=1e-14)

    def test_tail_domain(self):
        with pytest.raises(DomainError):
            oscillatory_tail(0.0, 1.0)
        with pytest.raises(DomainError):
            oscillatory_tail(1.0, 0.0)
