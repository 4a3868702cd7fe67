import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from hyperzeta.errors import ConvergenceError, DomainError, SingularityError
from hyperzeta.quadrature import (
    ToleranceSpec,
    adaptive_integrate,
    fourier_cosine_halfline,
    integrate_finite,
    integrate_halfline_decaying,
    integrate_real_line_symmetric,
    mellin_halfline,
    truncation_point,
)


class TestToleranceSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            ToleranceSpec(abs_tol=0.0)
        with pytest.raises(DomainError):
            ToleranceSpec(rel_tol=1.5)
        with pytest.raises(DomainError):
            ToleranceSpec(max_evaluations=0)

    def test_scaled_is_clipped(self):
        tol = ToleranceSpec(0.1, 0.2).scaled(10.0)
        assert tol.abs_tol == 0.5 and tol.rel_tol == 0.5


class TestFinite:
    def test_log_endpoint_singularity(self):
        res = integrate_finite(np.log, 0.0, 1.0)
        assert res.value == pytest.approx(-1.0, abs=1e-12)
        assert res.converged

    def test_inverse_sqrt(self):
        res = integrate_finite(lambda x: 1 / np.sqrt(x), 0.0, 4.0)
        assert res.value == pytest.approx(4.0, abs=1e-10)

    def test_vector_valued(self):
        res = integrate_finite(lambda x: np.stack([x, x ** 2, np.cos(x)], axis=1), 0.0, 1.0)
        np.testing.assert_allclose(res.value, [0.5, 1 / 3, math.sin(1.0)], rtol=1e-14)

    def test_kink_break_point(self):
        res = integrate_finite(lambda x: np.abs(x - 0.3), 0.0, 1.0, points=(0.3,))
        assert res.value == pytest.approx(0.5 * (0.09 + 0.49), abs=1e-15)

    def test_bad_limits(self):
        with pytest.raises(DomainError):
            integrate_finite(np.sin, 1.0, 0.0)
        with pytest.raises(DomainError):
            adaptive_integrate(np.sin, [0.0, 0.0])

    def test_budget_exhaustion(self):
        tol = ToleranceSpec(1e-15, 1e-15, max_evaluations=100)
        with pytest.raises(ConvergenceError):
            integrate_finite(lambda x: np.sin(1 / x), 0.0, 1.0, tol)
        res = integrate_finite(lambda x: np.sin(1 / x), 0.0, 1.0, tol, raise_on_failure=False)
        assert not res.converged

    @given(st.floats(-3, 3), st.floats(0.1, 4))
    def test_matches_scipy_quad(self, shift, width):
        def f(x):
            return np.exp(-x * x) * np.cos(3 * x) + shift

        ours = integrate_finite(f, shift, shift + width).value
        ref, _ = integrate.quad(f, shift, shift + width, epsabs=1e-14, epsrel=1e-13)
        assert ours == pytest.approx(ref, abs=1e-12)


class TestHalfLine:
    def test_basel(self):
        # int_0^inf x / (e^x - 1) dx = zeta(2)
        res = integrate_halfline_decaying(lambda x: x / np.expm1(x), decay_hint=0.9)
        assert res.value == pytest.approx(math.pi ** 2 / 6, rel=1e-13)

    def test_gaussian(self):
        res = integrate_real_line_symmetric(lambda x: np.exp(-x * x), decay_hint=1.0)
        assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-13)

    def test_truncation_rejects_slow_decay(self):
        with pytest.raises(DomainError):
            truncation_point(lambda x: np.exp(-0.1 * x), 0.0, 1.0, 1e-12)

    def test_truncation_of_zero(self):
        assert truncation_point(np.zeros_like, 0.0, 1.0, 1e-12) == (0.0, 0.0)


class TestMellin:
    @pytest.mark.parametrize("s", [0.3, 1.0, 2.5, 4.0])
    def test_gamma_function(self, s):
        res = mellin_halfline(lambda x: np.exp(-x), s)
        assert res.value.real == pytest.approx(math.gamma(s), rel=1e-12)

    def test_complex_exponent(self):
        s = 2 + 3j
        res = mellin_halfline(lambda x: np.exp(-x), s)
        from hyperzeta.numerics import gamma_complex

        assert abs(res.value - gamma_complex(s)) < 1e-12

    def test_requires_positive_real_part(self):
        with pytest.raises(DomainError):
            mellin_halfline(lambda x: np.exp(-x), 0.0)


class TestFourierCosine:
    def test_exponential_sech(self):
        # (1/pi) int_0^inf cos(xu) / cosh(u) du = 1 / (2 cosh(pi x / 2))
        x = np.array([0.0, 0.5, 2.0, 5.0])
        res = fourier_cosine_halfline(lambda u: 1 / np.cosh(u), x, rate=0.9)
        np.testing.assert_allclose(res.value, 1 / (2 * np.cosh(np.pi * x / 2)), atol=1e-14)

    def test_exponential_scalar(self):
        res = fourier_cosine_halfline(lambda u: u / np.sinh(u), 2.0, rate=0.9)
        assert res.value == pytest.approx(0.005844893974247527, abs=1e-14)

    def test_algebraic_lorentzian(self):
        # (1/pi) int_0^inf cos(xu) / (1 + u^2) du = e^-|x| / 2
        x = np.array([0.0, 0.3, 1.0, 4.0])
        res = fourier_cosine_halfline(lambda u: 1 / (1 + u * u), x, decay="algebraic", rate=2.0)
        np.testing.assert_allclose(res.value, 0.5 * np.exp(-x), atol=1e-10)

    def test_algebraic_divergent_at_zero(self):
        with pytest.raises(SingularityError):
            fourier_cosine_halfline(lambda u: 1 / (1 + u), 0.0, decay="algebraic", rate=1.0)

    def test_unknown_decay(self):
        with pytest.raises(DomainError):
            fourier_cosine_halfline(np.exp, 1.0, decay="gaussian")

    @given(st.floats(0.0, 6.0))
    def test_even_in_x(self, x):
        f = lambda u: np.exp(-u * u)  # noqa: E731
        a = fourier_cosine_halfline(f, x, rate=1.0).value
        b = fourier_cosine_halfline(f, -x, rate=1.0).value
        assert a == b
        assert a == pytest.approx(math.exp(-x * x / 4) / (2 * math.sqrt(math.pi)), abs=1e-13)
