import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeta.errors import DomainError, PoleError
from hyperzeta.numerics import bernoulli_number
from hyperzeta.series import alternating_sum, positive_sum
from hyperzeta.zeta import (
    alternating_hurwitz_zeta,
    dirichlet_beta,
    dirichlet_eta,
    gen_bernoulli_functional,
    hurwitz_zeta,
    riemann_zeta,
)

# Frozen mpmath values (30 digits, truncated).
FROZEN = [
    ("riemann", (0.5,), -1.4603545088095868129),
    ("hurwitz", (-1.5, 2.0), -1.0254852018898330359),
    ("hurwitz", (3 + 2j, 0.7), complex(2.2491344196209480724, 1.6839296856052886347)),
    ("riemann", (-0.5 + 14j,), complex(-1.0916901358587105644, -0.53480435781376187876)),
    ("hurwitz", (2.0, 0.25), 17.197329154507110739),
    ("riemann", (-3.0,), 1 / 120),
    ("riemann", (1e-8,), -0.50000000918938543236),
    ("beta", (2.0,), 0.91596559417721901505),
    ("beta", (0.5,), 0.66769145718960917666),
    ("eta", (0.5,), 0.60489864342163051142),
    ("alt", (0.5, 1.5), 0.46995524813489496889),
    ("alt", (-1.0, 0.7), 0.1),
]
FUNCS = {
    "riemann": riemann_zeta,
    "hurwitz": hurwitz_zeta,
    "beta": dirichlet_beta,
    "eta": dirichlet_eta,
    "alt": alternating_hurwitz_zeta,
}


class TestFrozenValues:
    @pytest.mark.parametrize("name,args,expected", FROZEN)
    def test_value(self, name, args, expected):
        got = FUNCS[name](*args)
        assert abs(got - expected) <= 2e-13 * max(1.0, abs(expected))

    def test_basel(self):
        assert hurwitz_zeta(2, 1) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)

    def test_ln2(self):
        assert dirichlet_eta(1.0).real == pytest.approx(math.log(2.0), rel=1e-13)

    def test_leibniz(self):
        assert dirichlet_beta(1.0).real == pytest.approx(math.pi / 4, rel=1e-13)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_negative_integers(self, k):
        # zeta(-k, a) = -B_{k+1}(a) / (k + 1)
        a = 0.3
        expected = -float(mpmath.bernpoly(k + 1, a)) / (k + 1)
        assert abs(hurwitz_zeta(-k, a) - expected) <= 1e-12 * max(1.0, abs(expected))


class TestDomain:
    def test_pole(self):
        with pytest.raises(PoleError):
            hurwitz_zeta(1.0, 2.0)

    @pytest.mark.parametrize("a", [0.0, -1.0])
    def test_bad_shift(self, a):
        with pytest.raises(DomainError):
            hurwitz_zeta(2.0, a)

    def test_eta_has_no_pole(self):
        assert np.isfinite(dirichlet_eta(1.0).real)


class TestAgainstMpmath:
    @given(
        st.floats(-6.0, 8.0).filter(lambda x: abs(x - 1.0) > 1e-3),
        st.floats(-20.0, 20.0),
        st.floats(0.1, 6.0),
    )
    def test_hurwitz(self, sr, si, a):
        s = complex(sr, si)
        expected = complex(mpmath.zeta(s, a))
        got = hurwitz_zeta(s, a)
        assert abs(got - expected) <= 1e-10 * max(1.0, abs(expected))

    @given(st.floats(-4.0, 6.0), st.floats(-10.0, 10.0), st.floats(0.1, 5.0))
    def test_alternating(self, sr, si, a):
        s = complex(sr, si)
        expected = complex(mpmath.mpf(2) ** -s * (mpmath.zeta(s, a / 2) - mpmath.zeta(s, (a + 1) / 2)))
        got = alternating_hurwitz_zeta(s, a)
        assert abs(got - expected) <= 1e-10 * max(1.0, abs(expected))


class TestInvariants:
    @given(st.floats(-5.0, 8.0).filter(lambda x: abs(x - 1.0) > 1e-2), st.floats(-10, 10), st.floats(0.1, 5.0))
    def test_shift_recurrence(self, sr, si, a):
        # zeta(s, a) = a^-s + zeta(s, a + 1)
        s = complex(sr, si)
        lhs = hurwitz_zeta(s, a)
        rhs = a ** -s + hurwitz_zeta(s, a + 1.0)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(a ** -s))

    @given(st.floats(-5.0, 8.0).filter(lambda x: abs(x - 1.0) > 1e-2), st.floats(-10, 10), st.floats(0.1, 5.0))
    def test_alternating_recurrence(self, sr, si, a):
        # eta(s, a) = a^-s - eta(s, a + 1)
        s = complex(sr, si)
        lhs = alternating_hurwitz_zeta(s, a)
        rhs = a ** -s - alternating_hurwitz_zeta(s, a + 1.0)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(a ** -s))

    @given(st.floats(-5.0, 8.0).filter(lambda x: abs(x - 1.0) > 1e-2), st.floats(-10, 10))
    def test_duplication(self, sr, si):
        # zeta(s, 1/2) = (2^s - 1) zeta(s)
        s = complex(sr, si)
        lhs = hurwitz_zeta(s, 0.5)
        rhs = (2.0 ** s - 1.0) * riemann_zeta(s)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))

    @given(st.floats(-5.0, 8.0).filter(lambda x: abs(x - 1.0) > 1e-2), st.floats(-10, 10), st.floats(0.1, 5.0))
    def test_conjugate_symmetry(self, sr, si, a):
        s = complex(sr, si)
        assert abs(hurwitz_zeta(s.conjugate(), a) - hurwitz_zeta(s, a).conjugate()) <= 1e-12 * max(
            1.0, abs(hurwitz_zeta(s, a))
        )


class TestGeneralizedBernoulli:
    @pytest.mark.parametrize("n", range(0, 13))
    def test_bernoulli_numbers(self, n):
        # B(n, 1) is B_n with the B_1 = +1/2 convention
        expected = 0.5 if n == 1 else bernoulli_number(n)
        assert gen_bernoulli_functional(n, 1.0).real == pytest.approx(expected, abs=1e-12)

    def test_linear_polynomial(self):
        assert gen_bernoulli_functional(1, 2.5).real == pytest.approx(2.0, abs=1e-14)

    def test_zero_order(self):
        assert gen_bernoulli_functional(0, 3.0) == 1.0


class TestSeriesSummation:
    def test_alternating_log2(self):
        res = alternating_sum(lambda n: (-1.0) ** n / (n + 1.0))
        assert res.value.real == pytest.approx(math.log(2.0), abs=1e-14)

    def test_alternating_slow(self):
        # sum (-1)^n / sqrt(n + 1) = (1 - sqrt 2) zeta(1/2)
        res = alternating_sum(lambda n: (-1.0) ** n / np.sqrt(n + 1.0))
        expected = (1 - math.sqrt(2)) * -1.4603545088095868129
        assert res.value.real == pytest.approx(expected, abs=1e-13)

    def test_positive_basel(self):
        res = positive_sum(lambda n: 1.0 / (n + 1.0) ** 2, lambda x: 1.0 / (x + 1.0) ** 2)
        assert res.value.real == pytest.approx(math.pi ** 2 / 6, rel=1e-14)

    @given(st.floats(1.2, 6.0), st.floats(0.2, 4.0))
    def test_positive_matches_zeta(self, s, a):
        def term(n):
            return (n + a) ** -s

        res = positive_sum(term, term)
        assert res.value.real == pytest.approx(float(mpmath.zeta(s, a)), rel=1e-12)
