import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeta.errors import DomainError, PoleError
from hyperzeta.moments import (
    BernoulliRoute,
    Kind,
    MomentFunctionKind,
    closed_form_value,
    gen_bernoulli,
    integral_threshold,
    integral_value,
    jensen_pair,
    logistic_abs_moment_closed,
    logistic_moment_identity,
    mellin_h_identity,
    s2_pole_probe,
    series_threshold,
    series_value,
    zeta_u2_representation,
)
from hyperzeta.numerics import bernoulli_number

K = MomentFunctionKind.of


def close(x, y, tol):
    return abs(x - y) <= tol * max(1.0, abs(y))


class TestKind:
    def test_labels(self):
        assert K("S1").label == "S1"
        assert K(Kind.SStar, 3).label == "SStar[3]"

    @pytest.mark.parametrize("tag,alpha", [("S1", 2.0), ("SStar", 0.0), ("TStar", 1.5), ("CStar", -1.0)])
    def test_rejects(self, tag, alpha):
        with pytest.raises(DomainError):
            K(tag, alpha)

    def test_thresholds(self):
        assert series_threshold(K("C1")) == 0.0
        assert series_threshold(K("S2")) == 2.0
        assert series_threshold(K("SStar", 3)) == 4.0
        assert integral_threshold(K("C2")) == 1.0
        assert integral_threshold(K("CStar", 3)) == 1.5


class TestSeriesOracles:
    @pytest.mark.parametrize("s", [3.5, 2.5 + 1j, 4 - 2j])
    @pytest.mark.parametrize("a", [0.6, 1.0, 3.0])
    def test_positive_against_mpmath(self, s, a):
        z = complex(mpmath.zeta(s, a))
        assert close(series_value(K("S1"), s, a), z, 1e-12)
        s2 = complex(mpmath.zeta(s - 1, a)) - a * z
        assert close(series_value(K("S2"), s, a), s2, 1e-11)

    @pytest.mark.parametrize(
        "tag,term",
        [
            ("C1", lambda n, s, a: (-1) ** n * (n + a) ** -s),
            ("C2", lambda n, s, a: (-1) ** n * (n + 1) * (n + a) ** -s),
        ],
    )
    @pytest.mark.parametrize("s", [3.5, 2.5 + 1j, 4 - 2j])
    @pytest.mark.parametrize("a", [0.6, 1.0, 3.0])
    def test_alternating_against_mpmath(self, tag, term, s, a):
        mpmath.mp.dps = 20
        expected = complex(mpmath.nsum(lambda n: term(n, mpmath.mpc(s), a), [0, mpmath.inf]))
        mpmath.mp.dps = 15
        assert close(series_value(K(tag), s, a), expected, 1e-11)

    def test_frozen_s2(self):
        assert series_value(K("S2"), 4, 2).real == pytest.approx(0.037410435737317902368, rel=1e-12)

    def test_frozen_t1_boundary(self):
        assert closed_form_value(K("T1"), 1, 1).real == pytest.approx(0.90316541057890972945, abs=1e-12)
        assert series_value(K("T1"), 1, 1).real == pytest.approx(0.90316541057890972945, abs=1e-10)

    def test_c1_log2(self):
        assert series_value(K("C1"), 1, 1).real == pytest.approx(math.log(2), abs=1e-13)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            series_value(K("S1"), 1.0, 1.0)
        with pytest.raises(DomainError):
            series_value(K("SStar", 2), 2.5, 1.0)
        with pytest.raises(DomainError):
            series_value(K("C1"), 2.0, 0.0)


class TestSeriesVersusIntegral:
    OVERLAP = [
        (tag, s, a)
        for tag in ("S1", "S2", "C1", "C2", "T1", "T2")
        for s in (3.5, 2 + 1j, 3 + 2j)
        for a in (0.6, 1.5, 3.0)
        if s.real > series_threshold(K(tag)) and a > integral_threshold(K(tag))
    ]

    @pytest.mark.parametrize("tag,s,a", OVERLAP)
    def test_overlap(self, tag, s, a):
        kind = K(tag)
        assert close(series_value(kind, s, a), integral_value(kind, s, a), 1e-9)

    @pytest.mark.parametrize("tag", ["S2", "C1", "C2", "T1", "T2"])
    @pytest.mark.parametrize("s", [-1.0, -0.5, 0.5, 2 + 1j])
    def test_continuation_matches_closed_form(self, tag, s):
        kind = K(tag)
        a = 1.5
        assert close(integral_value(kind, s, a), closed_form_value(kind, s, a), 1e-9)

    @given(st.floats(1.2, 5.0), st.floats(-3, 3), st.floats(0.6, 4.0))
    def test_c1_property(self, sr, si, a):
        s = complex(sr, si)
        assert close(series_value(K("C1"), s, a), integral_value(K("C1"), s, a), 1e-9)

    @given(st.floats(2.2, 5.0), st.floats(0.3, 4.0))
    def test_t2_property(self, s, a):
        assert close(series_value(K("T2"), s, a), closed_form_value(K("T2"), s, a), 1e-9)


class TestStar:
    @pytest.mark.parametrize("tag,base", [("SStar", "S1"), ("CStar", "C1"), ("TStar", "T1")])
    @pytest.mark.parametrize("s", [2.5, 3 + 2j, 0.5])
    @pytest.mark.parametrize("a", [0.6, 1.0, 3.0])
    def test_alpha_one_reduction(self, tag, base, s, a):
        star = integral_value(K(tag, 1), s, a)
        plain = integral_value(K(base), s, a)
        assert close(star, plain, 1e-9)

    @pytest.mark.parametrize("tag", ["SStar", "CStar", "TStar"])
    @pytest.mark.parametrize("alpha", [1, 2, 3])
    def test_series_versus_integral(self, tag, alpha):
        kind = K(tag, alpha)
        s, a = 5.5, 3.0
        assert close(series_value(kind, s, a), integral_value(kind, s, a), 1e-9)

    @pytest.mark.parametrize("tag", ["SStar", "CStar"])
    @pytest.mark.parametrize("alpha", [2, 3])
    @pytest.mark.parametrize("s", [0.5, 2 + 1j, 5.5])
    def test_closed_form(self, tag, alpha, s):
        kind = K(tag, alpha)
        assert close(integral_value(kind, s, 2.0), closed_form_value(kind, s, 2.0), 1e-9)

    def test_cstar_alpha_two_is_c2(self):
        # C(-2, n) = (-1)^n (n + 1)
        for s in (2.5, 0.5, 1 + 1j):
            assert close(closed_form_value(K("CStar", 2), s, 1.5), closed_form_value(K("C2"), s, 1.5), 1e-12)

    def test_gamma_poles(self):
        with pytest.raises(PoleError):
            integral_value(K("SStar", 2), 1.0, 2.0)
        with pytest.raises(PoleError):
            integral_value(K("SStar", 0.5), 0.5, 2.0)

    def test_no_closed_form(self):
        with pytest.raises(DomainError):
            closed_form_value(K("TStar", 2), 3.0, 1.0)
        with pytest.raises(DomainError):
            closed_form_value(K("SStar", 0.5), 3.0, 1.0)


class TestPoles:
    def test_s1_s2(self):
        with pytest.raises(PoleError):
            integral_value(K("S1"), 1.0, 1.0)
        with pytest.raises(PoleError):
            integral_value(K("S2"), 2.0, 1.0)

    @pytest.mark.parametrize("a", [0.6, 1.0, 3.0])
    def test_s2_probe_bounded(self, a):
        probe = s2_pole_probe(a)
        values = np.array(list(probe.values()))
        assert np.all(np.isfinite(values))
        # continuous across each pole
        assert abs(probe[0.999] - probe[1.001]) < 1e-2 * max(1.0, abs(probe[1.0]))
        assert abs(probe[1.999] - probe[2.001]) < 1e-2 * max(1.0, abs(probe[2.0]))
        # E (a + iX)^0 = 1
        assert probe[2.0] == pytest.approx(1.0, abs=1e-14)

    def test_t2_removable(self):
        kind = K("T2")
        near = closed_form_value(kind, 1.0 + 1e-6, 1.2)
        assert close(closed_form_value(kind, 1.0, 1.2), near, 1e-6)
        assert close(integral_value(kind, 1.0, 1.2), closed_form_value(kind, 1.0, 1.2), 1e-9)


class TestRepresentations:
    def test_jensen_spot(self):
        lhs, rhs = jensen_pair(-1, 1)
        assert lhs.real == pytest.approx(1 / 6, abs=1e-14)
        assert rhs.real == pytest.approx(1 / 6, abs=1e-10)

    @given(st.floats(-1.5, 4.0), st.floats(-3, 3), st.floats(0.6, 4.0))
    def test_jensen_property(self, sr, si, a):
        lhs, rhs = jensen_pair(complex(sr, si), a)
        assert close(lhs, rhs, 1e-9)

    @pytest.mark.parametrize("a", [1.0, 1.5, 3.0])
    @pytest.mark.parametrize("s", [0.0, 0.5, 2.0, 3.5, 2 + 1j])
    def test_u2(self, a, s):
        expected = 1.0 if s == 1.0 else (s - 1.0) * complex(mpmath.zeta(s, a))
        assert close(zeta_u2_representation(s, a), expected, 1e-9)

    def test_u2_basel(self):
        assert zeta_u2_representation(2, 1).real == pytest.approx(math.pi ** 2 / 6, abs=1e-10)

    def test_u2_domain(self):
        with pytest.raises(DomainError):
            zeta_u2_representation(2, 0.9)

    @pytest.mark.parametrize("route", list(BernoulliRoute))
    @pytest.mark.parametrize("n", range(1, 7))
    def test_bernoulli_routes(self, route, n):
        got = gen_bernoulli(2 * n, 1.0, route)
        assert got.real == pytest.approx(bernoulli_number(2 * n), abs=1e-9)

    @given(st.floats(0.0, 6.0), st.floats(1.0, 3.0))
    def test_routes_agree(self, s, a):
        ref = gen_bernoulli(s, a, BernoulliRoute.functional)
        for route in (BernoulliRoute.direct, BernoulliRoute.u2_form):
            assert close(gen_bernoulli(s, a, route), ref, 1e-8)

    @pytest.mark.parametrize("a", [1.0, 1.5, 3.0])
    @pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
    def test_mellin_h(self, a, s):
        lhs, rhs = mellin_h_identity(s, a)
        assert close(lhs, rhs, 1e-9)

    def test_mellin_h_frozen(self):
        lhs, _ = mellin_h_identity(2.0, 1.0)
        assert lhs.real == pytest.approx(math.pi ** 2 / 6, abs=1e-12)

    @pytest.mark.parametrize("s,expected", [(1, 2 * math.log(2)), (2, math.pi ** 2 / 3), (3, 10.818512128436348569)])
    def test_logistic_moments(self, s, expected):
        lhs, rhs = logistic_moment_identity(s, 1.0)
        assert lhs == pytest.approx(expected, abs=1e-9)
        assert rhs == pytest.approx(expected, abs=1e-12)
        assert logistic_abs_moment_closed(s) == pytest.approx(expected, abs=1e-12)

    def test_logistic_half_moment(self):
        assert logistic_abs_moment_closed(0.5) == pytest.approx(1.0721549299401915898, abs=1e-12)

    @given(st.floats(-0.9, 5.0), st.floats(0.55, 4.0))
    def test_g_family(self, s, a):
        lhs, rhs = logistic_moment_identity(s, a)
        assert close(lhs, rhs, 1e-8)
