import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from tdq.errors import DomainError, EnvelopeError
from tdq.special_functions import (
    bell_partial,
    bessel_j,
    bessel_j_prime,
    bessel_y,
    bessel_y_prime,
    dawson,
    gamma_fn,
    gauss_legendre,
    hermite,
    hyp1f1_special,
    hyp2f2_special,
)


class TestGamma:
    def test_integer_and_half(self):
        assert gamma_fn(1.0) == 1.0
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_recurrence_from_half(self):
        # Gamma(4.5) lifted from Gamma(0.5) by Gamma(x+1) = x Gamma(x)
        expected = math.sqrt(math.pi)
        for k in (0.5, 1.5, 2.5, 3.5):
            expected *= k
        assert gamma_fn(4.5) == pytest.approx(expected, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            gamma_fn(0.0)
        with pytest.raises(DomainError):
            gamma_fn(-2.5)

    @given(st.floats(min_value=0.5, max_value=19.0))
    def test_recurrence_property(self, x):
        assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-12)


class TestBesselJ:
    def test_half_order_closed_form(self):
        x = math.pi / 2.0
        assert bessel_j(0.5, x) == pytest.approx(2.0 / math.pi, rel=1e-13)

    def test_small_argument_limit(self):
        assert abs(bessel_j(0.0, 1e-8) - 1.0) < 1e-15

    def test_three_halves_closed_form(self):
        x = 2.0
        expected = math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x))
        assert bessel_j(1.5, x) == pytest.approx(expected, rel=1e-12)

    def test_envelope(self):
        with pytest.raises(EnvelopeError):
            bessel_j(11.0, 1.0)
        with pytest.raises(EnvelopeError):
            bessel_j(1.0, 0.0)
        with pytest.raises(EnvelopeError):
            bessel_j(1.0, 51.0)
        with pytest.raises(EnvelopeError):
            bessel_j(-0.5, 1.0)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 0.7, 1.0, 1.75, 2.0, 2.3, 10.0])
    @pytest.mark.parametrize("x", [0.1, 1.0, 6.0, 25.0, 50.0])
    def test_against_extended_precision(self, nu, x):
        assert bessel_j(nu, x) == pytest.approx(
            oracles.bessel_mp("j", nu, x), rel=1e-10, abs=1e-13)

    def test_against_scipy_grid(self):
        from scipy.special import jv
        for nu in (0.0, 0.25, 0.9, 1.0, 1.5, 3.0):
            for x in (0.3, 2.0, 9.5):
                assert bessel_j(nu, x) == pytest.approx(float(jv(nu, x)),
                                                        rel=1e-10, abs=1e-12)


class TestBesselY:
    def test_half_order_closed_form(self):
        for x in (0.5, 1.0, 2.0, 7.0):
            expected = -math.sqrt(2.0 / (math.pi * x)) * math.cos(x)
            assert bessel_y(0.5, x) == pytest.approx(expected, rel=1e-12)

    def test_three_halves_closed_form(self):
        x = 2.0
        expected = -math.sqrt(2.0 / (math.pi * x)) * (math.cos(x) / x + math.sin(x))
        assert bessel_y(1.5, x) == pytest.approx(expected, rel=1e-9)

    def test_integer_orders_against_scipy(self):
        from scipy.special import yn
        for n in (0, 1, 2, 5):
            for x in (0.2, 1.0, 4.0, 10.0, 30.0):
                assert bessel_y(float(n), x) == pytest.approx(float(yn(n, x)),
                                                              rel=1e-9, abs=1e-12)

    def test_non_integer_against_extended_precision(self):
        for nu in (0.7, 0.75, 0.9, 1.25, 2.3):
            for x in (0.5, 2.0, 10.0, 50.0):
                assert bessel_y(nu, x) == pytest.approx(
                    oracles.bessel_mp("y", nu, x), rel=1e-9, abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            bessel_y(1.0, -1.0)

    def test_wronskian_spec_grid(self):
        for nu in (0.5, 1.0, 1.5, 2.3):
            for x in (0.5, 1.0, 2.0, 5.0, 10.0):
                wronskian = (bessel_j(nu, x) * bessel_y_prime(nu, x)
                             - bessel_j_prime(nu, x) * bessel_y(nu, x))
                assert wronskian == pytest.approx(2.0 / (math.pi * x), rel=1e-8)

    @settings(deadline=None, max_examples=40)
    @given(nu=st.floats(min_value=0.05, max_value=4.0),
           x=st.floats(min_value=0.3, max_value=12.0))
    def test_wronskian_property(self, nu, x):
        wronskian = (bessel_j(nu, x) * bessel_y_prime(nu, x)
                     - bessel_j_prime(nu, x) * bessel_y(nu, x))
        assert wronskian == pytest.approx(2.0 / (math.pi * x), rel=1e-8)


class TestHermite:
    def test_low_orders(self):
        assert hermite(0).coefficients == (1,)
        assert hermite(0).roots == ()
        assert hermite(1).coefficients == (0, 2)
        assert hermite(2).coefficients == (-2, 0, 4)
        assert hermite(4).coefficients == (12, 0, -48, 0, 16)

    def test_h2_roots(self):
        roots = hermite(2).roots
        assert roots[1] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
        assert roots[0] == -roots[1]

    def test_h3_roots(self):
        roots = hermite(3).roots
        assert roots[1] == 0.0
        assert roots[2] == pytest.approx(math.sqrt(1.5), abs=1e-12)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_roots_symmetric_and_residual(self, n):
        table = hermite(n)
        lead_scale = abs(table.coefficients[-1]) * max(
            1.0, max(abs(r) for r in table.roots)) ** n
        for k, r in enumerate(table.roots):
            assert abs(r + table.roots[n - 1 - k]) < 1e-12
            assert abs(table.evaluate(r)) / lead_scale < 1e-9

    def test_roots_against_scipy(self):
        from scipy.special import roots_hermite
        for n in (4, 9, 12):
            reference = roots_hermite(n)[0]
            assert np.allclose(hermite(n).roots, reference, atol=1e-12)

    def test_orthogonality(self):
        rule = gauss_legendre(200, -10.0, 10.0)
        weight = np.exp(-rule.nodes ** 2)
        for m in range(7):
            hm = np.array([hermite(m).evaluate(x) for x in rule.nodes])
            for n in range(7):
                hn = np.array([hermite(n).evaluate(x) for x in rule.nodes])
                got = rule.dot(hm * hn * weight)
                want = math.sqrt(math.pi) * 2.0 ** n * math.factorial(n) if m == n else 0.0
                scale = math.sqrt(
                    math.pi * 2.0 ** (m + n) * math.factorial(m) * math.factorial(n))
                assert abs(got - want) / scale < 1e-8


class TestDawsonAndHypergeometric:
    def test_dawson_against_trapezoid(self):
        assert dawson(1.0) == pytest.approx(oracles.dawson_trapezoid(1.0), abs=3e-11)

    def test_dawson_against_scipy(self):
        from scipy.special import dawsn
        for x in np.linspace(0.05, 6.0, 60):
            assert dawson(float(x)) == pytest.approx(float(dawsn(x)), rel=5e-13)

    def test_hyp1f1_at_zero(self):
        assert hyp1f1_special(0.0) == 1.0

    def test_hyp1f1_via_dawson_oracle(self):
        got = hyp1f1_special(-1.0)
        want = 1.0 - 2.0 * oracles.dawson_trapezoid(1.0)
        assert got == pytest.approx(want, abs=1e-10)

    def test_hyp1f1_extended_precision(self):
        assert hyp1f1_special(-4.0) == pytest.approx(
            oracles.hyp1f1_raw_series(-4.0), rel=1e-9)

    def test_hyp1f1_guards(self):
        with pytest.raises(DomainError):
            hyp1f1_special(0.5)
        with pytest.raises(EnvelopeError):
            hyp1f1_special(-40.0)

    def test_hyp2f2_at_zero(self):
        assert hyp2f2_special(0.0) == 1.0

    def test_hyp2f2_integral_representation(self):
        # term-by-term integration gives 2F2(1,1;3/2,2;-x^2) = (2/x) int_0^1 F(xv) dv
        assert hyp2f2_special(-1.0) == pytest.approx(
            oracles.hyp2f2_dawson_integral(1.0), abs=5e-8)

    def test_hyp2f2_extended_precision(self):
        assert hyp2f2_special(-9.0) == pytest.approx(
            oracles.hyp2f2_raw_series(-9.0), rel=1e-12)

    @pytest.mark.parametrize("z", [-0.25, -1.0, -4.0, -9.0, -16.0, -25.0, -36.0])
    def test_raw_series_equivalence_envelope(self, z):
        assert hyp1f1_special(z) == pytest.approx(
            oracles.hyp1f1_raw_series(z), rel=1e-9)
        assert hyp2f2_special(z) == pytest.approx(
            oracles.hyp2f2_raw_series(z), rel=1e-9)

    def test_hyp2f2_guards(self):
        with pytest.raises(DomainError):
            hyp2f2_special(1.0)
        with pytest.raises(EnvelopeError):
            hyp2f2_special(-37.0)


class TestBellPartial:
    def test_single_partition_cases(self):
        assert bell_partial(4, 4, [2.0]) == pytest.approx(16.0)
        assert bell_partial(3, 1, [5.0, 7.0, 11.0]) == pytest.approx(11.0)

    def test_b42_explicit(self):
        a1, a2, a3 = 1.3, -0.7, 2.1
        expected = 3.0 * a2 ** 2 + 4.0 * a1 * a3
        assert bell_partial(4, 2, [a1, a2, a3]) == pytest.approx(expected, rel=1e-14)

    def test_matches_enumeration_to_m8(self):
        args = [1.0, -2.0, 3.0, 0.5, -1.5, 2.5, 0.25, -0.75]
        for m in range(1, 9):
            for l in range(1, m + 1):
                got = bell_partial(m, l, args[: m - l + 1])
                want = oracles.bell_enumeration(m, l, args[: m - l + 1])
                assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_exact_for_integers(self):
        value = bell_partial(6, 3, [1, 2, 3, 4])
        assert isinstance(value, int)
        assert value == oracles.bell_enumeration(6, 3, [1, 2, 3, 4])

    def test_dimension_error(self):
        with pytest.raises(DomainError):
            bell_partial(4, 2, [1.0, 2.0])

    @settings(deadline=None, max_examples=50)
    @given(st.integers(min_value=1, max_value=7), st.data())
    def test_recurrence_equals_enumeration(self, m, data):
        l = data.draw(st.integers(min_value=1, max_value=m))
        args = data.draw(st.lists(
            st.floats(min_value=-3.0, max_value=3.0),
            min_size=m - l + 1, max_size=m - l + 1))
        got = bell_partial(m, l, args)
        want = oracles.bell_enumeration(m, l, args)
        assert got == pytest.approx(want, rel=1e-10, abs=1e-9)


class TestGaussLegendre:
    def test_low_order_exactness(self):
        rule = gauss_legendre(2, -1.0, 1.0)
        assert rule.integrate(lambda x: x * x) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_gaussian_integral(self):
        rule = gauss_legendre(200, -8.0, 8.0)
        assert rule.integrate(lambda x: np.exp(-x * x)) == pytest.approx(
            math.sqrt(math.pi), rel=1e-12)

    def test_constant(self):
        rule = gauss_legendre(5, 0.0, 5.0)
        assert rule.integrate(lambda x: np.ones_like(x)) == pytest.approx(5.0, rel=1e-14)

    def test_rule_invariants(self):
        rule = gauss_legendre(37, -2.0, 3.0)
        assert np.all(rule.weights > 0.0)
        assert float(np.sum(rule.weights)) == pytest.approx(5.0, rel=1e-12)
        assert np.all(np.diff(rule.nodes) > 0)
        assert rule.nodes[0] > -2.0 and rule.nodes[-1] < 3.0

    def test_against_scipy(self):
        from scipy.special import roots_legendre
        x_ref, w_ref = roots_legendre(64)
        rule = gauss_legendre(64, -1.0, 1.0)
        assert np.allclose(rule.nodes, x_ref, atol=1e-14)
        assert np.allclose(rule.weights, w_ref, atol=1e-14)

    def test_guards(self):
        with pytest.raises(DomainError):
            gauss_legendre(1, 0.0, 1.0)
        with pytest.raises(DomainError):
            gauss_legendre(10, 1.0, 1.0)

    @settings(deadline=None, max_examples=30)
    @given(n=st.integers(min_value=2, max_value=8), data=st.data())
    def test_polynomial_exactness(self, n, data):
        degree = data.draw(st.integers(min_value=0, max_value=2 * n - 1))
        coeffs = data.draw(st.lists(st.floats(min_value=-2.0, max_value=2.0),
                                    min_size=degree + 1, max_size=degree + 1))
        rule = gauss_legendre(n, -1.5, 2.0)
        got = rule.integrate(lambda x: np.polynomial.polynomial.polyval(x, coeffs))
        exact = sum(c / (k + 1) * (2.0 ** (k + 1) - (-1.5) ** (k + 1))
                    for k, c in enumerate(coeffs))
        assert got == pytest.approx(exact, rel=1e-11, abs=1e-11)
