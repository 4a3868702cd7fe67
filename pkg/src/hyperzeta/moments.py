"""Hyperbolic moment functions: series, integral representations, closed forms.

Each moment function ``K(s, a)`` is available three ways:

* :func:`series_value` sums the defining series where it converges;
* :func:`integral_value` evaluates its complex-moment representation
  ``E (b + i X)^(-s)`` over a hyperbolic law, valid well beyond the series'
  domain;
* :func:`closed_form_value` rewrites it through the Hurwitz zeta oracle.

The kinds and their series are

==========  ==============================================================
``S1``      ``sum (n + a)^-s``
``S2``      ``sum n (n + a)^-s``
``C1``      ``sum (-1)^n (n + a)^-s``
``C2``      ``sum (-1)^n (n + 1) (n + a)^-s``
``T1``      ``sum 2 (-1)^n E (a + n + U)^-s``, ``U`` uniform on (0, 1)
``T2``      ``sum_{n>=1} 4 (-1)^(n-1) n E (a - 1 + n + V)^-s``, ``V = U + U'``
``SStar``   ``sum C(n + alpha - 1, n) (n + a)^-s``
``CStar``   ``sum C(-alpha, n) (n + a)^-s``
``TStar``   ``2^alpha sum (-1)^n C(n + alpha - 1, n) E (a + n + V_alpha)^-s``
==========  ==============================================================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from hyperzeta import distributions as dist
from hyperzeta.distributions import DistributionSpec, Family
from hyperzeta.errors import DomainError, PoleError
from hyperzeta.numerics import gamma_complex
from hyperzeta.quadrature import DEFAULT_TOL, ToleranceSpec, adaptive_integrate, mellin_halfline
from hyperzeta.series import alternating_sum, positive_sum
from hyperzeta.zeta import alternating_hurwitz_zeta, gen_bernoulli_functional, hurwitz_zeta

_U2_SHIFT = 0.5
_OUTER_TOL = ToleranceSpec(abs_tol=1e-12, rel_tol=1e-10)


class Kind(enum.Enum):
    S1 = "S1"
    S2 = "S2"
    C1 = "C1"
    C2 = "C2"
    T1 = "T1"
    T2 = "T2"
    SStar = "SStar"
    CStar = "CStar"
    TStar = "TStar"


_STAR = frozenset({Kind.SStar, Kind.CStar, Kind.TStar})


@dataclass(frozen=True)
class MomentFunctionKind:
    """A moment function tag with its order (``alpha``, star kinds only)."""

    tag: Kind
    alpha: float = 1.0

    def __post_init__(self):
        if self.tag in _STAR:
            if not self.alpha > 0.0:
                raise DomainError("alpha must be > 0")
            if self.tag is Kind.TStar and self.alpha != int(self.alpha):
                raise DomainError("TStar needs an integer alpha")
        elif self.alpha != 1.0:
            raise DomainError(f"{self.tag.value} takes no alpha")

    @classmethod
    def of(cls, tag, alpha=1.0):
        return cls(Kind(tag) if isinstance(tag, str) else tag, float(alpha))

    @property
    def label(self):
        return f"{self.tag.value}[{self.alpha:g}]" if self.tag in _STAR else self.tag.value


def series_threshold(kind: MomentFunctionKind) -> float:
    """``Re s`` above which :func:`series_value` sums the series."""
    tag = kind.tag
    if tag in (Kind.C1, Kind.T1):
        return 0.0
    if tag in (Kind.S1, Kind.C2, Kind.T2):
        return 1.0
    if tag is Kind.S2:
        return 2.0
    return kind.alpha + 1.0


def integral_threshold(kind: MomentFunctionKind) -> float:
    """Smallest ``a`` (exclusive) for which :func:`integral_value` applies."""
    tag = kind.tag
    if tag in (Kind.S1, Kind.C1):
        return 0.5
    if tag is Kind.C2:
        return 1.0
    if tag in (Kind.SStar, Kind.CStar):
        return 0.5 * kind.alpha
    return 0.0


def _binom_rising(x, alpha):
    """``C(x + alpha - 1, x) = Gamma(x + alpha) / (Gamma(x + 1) Gamma(alpha))``."""
    x = np.asarray(x, dtype=float)
    return np.exp(special.gammaln(x + alpha) - special.gammaln(x + 1.0) - special.gammaln(alpha))


def _power(base, s):
    return np.exp(-s * np.log(base))


def series_value(kind: MomentFunctionKind, s, a, tol=1e-13) -> complex:
    """Sum the defining series of ``kind`` at ``(s, a)``.

    Positive series are summed directly for 200 terms and completed by an
    Euler-Maclaurin tail; alternating ones by Euler's transformation.

    Raises
    ------
    DomainError
        If ``Re s`` is not above :func:`series_threshold` or ``a <= 0``.
    """
    s = complex(s)
    if not a > 0.0:
        raise DomainError("a must be > 0")
    if not s.real > series_threshold(kind):
        raise DomainError(f"{kind.label} series needs Re(s) > {series_threshold(kind):g}")
    tag, alpha = kind.tag, kind.alpha
    n_direct = 40 + int(4 * abs(s.imag))
    if tag is Kind.S1:
        res = positive_sum(lambda n: _power(n + a, s), lambda x: _power(x + a, s), tol=tol)
    elif tag is Kind.S2:
        res = positive_sum(lambda n: n * _power(n + a, s), lambda x: x * _power(x + a, s), tol=tol)
    elif tag is Kind.SStar:
        def term(x):
            return _binom_rising(x, alpha) * _power(x + a, s)

        res = positive_sum(term, term, tol=tol)
    elif tag is Kind.C1:
        res = alternating_sum(lambda n: (-1.0) ** n * _power(n + a, s), n_direct=n_direct, tol=tol)
    elif tag is Kind.C2:
        res = alternating_sum(lambda n: (-1.0) ** n * (n + 1.0) * _power(n + a, s), n_direct=n_direct, tol=tol)
    elif tag is Kind.CStar:
        res = alternating_sum(lambda n: (-1.0) ** n * _binom_rising(n, alpha) * _power(n + a, s),
                              n_direct=n_direct, tol=tol)
    elif tag is Kind.T1:
        def term(n):
            return 2.0 * (-1.0) ** n * dist.aux_expectation_neg_power(dist.UNIFORM_U1, a + n, s)

        res = alternating_sum(term, n_direct=n_direct, tol=tol)
    elif tag is Kind.T2:
        def term(m):
            return 4.0 * (-1.0) ** m * (m + 1.0) * dist.aux_expectation_neg_power(dist.TRIANGULAR_V, a + m, s)

        res = alternating_sum(term, n_direct=n_direct, tol=tol)
    else:
        irwin_hall = DistributionSpec(Family.IrwinHall, alpha)

        def term(n):
            return (2.0 ** alpha * (-1.0) ** n * _binom_rising(n, alpha)
                    * dist.aux_expectation_neg_power(irwin_hall, a + n, s))

        res = alternating_sum(term, n_direct=n_direct, tol=tol)
    value = complex(res.value)
    return complex(value.real, 0.0) if s.imag == 0.0 else value


def _gamma_ratio(s, alpha):
    """``Gamma(s - alpha) / Gamma(s)``; ``1 / prod_{j=1..alpha} (s - j)`` for integer alpha."""
    if alpha == int(alpha):
        den = 1.0 + 0j
        for j in range(1, int(alpha) + 1):
            den *= s - j
        if den == 0.0:
            raise PoleError(f"Gamma(s - alpha) / Gamma(s) has a pole at s = {s}")
        return 1.0 / den
    z = s - alpha
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError(f"Gamma(s - alpha) has a pole at s = {s}")
    return complex(gamma_complex(z) * special.rgamma(s))


def integral_value(kind: MomentFunctionKind, s, a, tol: ToleranceSpec = DEFAULT_TOL) -> complex:
    """Evaluate ``kind`` at ``(s, a)`` through its complex-moment representation.

    ==========  ======================================================  ==============
    kind        representation                                          law of ``X``
    ==========  ======================================================  ==============
    ``S1``      ``E (a - 1/2 + i X)^(1-s) / (s - 1)``                   sinh(1)/2
    ``S2``      ``E (a + i X)^(2-s) / ((s - 1)(s - 2))``                sinh(2)/2
    ``C1``      ``E (a - 1/2 + i X)^(-s) / 2``                          cosh(1)/2
    ``C2``      ``E (a - 1 + i X)^(-s) / 4``                            cosh(2)/2
    ``T1``      ``E (a + i X)^(-s)``                                    tanh(1)/2
    ``T2``      ``E (a + i X)^(-s)``                                    tanh(2)/2
    ``SStar``   ``G(s-alpha)/G(s) E (a - alpha/2 + i X)^(alpha-s)``     sinh(alpha)/2
    ``CStar``   ``2^-alpha E (a - alpha/2 + i X)^(-s)``                 cosh(alpha)/2
    ``TStar``   ``E (a + i X)^(-s)``                                    tanh(alpha)/2
    ==========  ======================================================  ==============

    ``S1`` is returned as ``zeta(s, a)`` itself, so that every kind reports
    the value of its own series.

    Raises
    ------
    DomainError
        If ``a`` is not above :func:`integral_threshold`.
    PoleError
        At the poles ``s = 1`` (``S1``), ``s in {1, 2}`` (``S2``) and the
        poles of ``Gamma(s - alpha)`` (``SStar``).
    """
    s = complex(s)
    if not a > integral_threshold(kind):
        raise DomainError(f"{kind.label} integral form needs a > {integral_threshold(kind):g}")
    tag, alpha = kind.tag, kind.alpha
    moment = dist.complex_moment
    if tag is Kind.S1:
        if s == 1.0:
            raise PoleError("S1(s, a) has a pole at s = 1")
        return moment(dist.sinh_law(1), s - 1.0, a - 0.5, tol) / (s - 1.0)
    if tag is Kind.S2:
        if s in (1.0, 2.0):
            raise PoleError("S2(s, a) has poles at s = 1 and s = 2")
        return moment(dist.sinh_law(2), s - 2.0, a, tol) / ((s - 1.0) * (s - 2.0))
    if tag is Kind.C1:
        return 0.5 * moment(dist.cosh_law(1), s, a - 0.5, tol)
    if tag is Kind.C2:
        return 0.25 * moment(dist.cosh_law(2), s, a - 1.0, tol)
    if tag is Kind.T1:
        return moment(dist.tanh_law(1), s, a, tol)
    if tag is Kind.T2:
        return moment(dist.tanh_law(2), s, a, tol)
    if tag is Kind.SStar:
        ratio = _gamma_ratio(s, alpha)
        return ratio * moment(dist.sinh_law(alpha), s - alpha, a - 0.5 * alpha, tol)
    if tag is Kind.CStar:
        return 2.0 ** (-alpha) * moment(dist.cosh_law(alpha), s, a - 0.5 * alpha, tol)
    return moment(dist.tanh_law(alpha), s, a, tol)


def _removable_limit(f, s0, h=1e-3):
    """Limit of ``f`` at ``s0`` from symmetric averages, Richardson-extrapolated."""
    wide = 0.5 * (f(s0 + h) + f(s0 - h))
    narrow = 0.5 * (f(s0 + 0.5 * h) + f(s0 - 0.5 * h))
    return (4.0 * narrow - wide) / 3.0


def _star_polynomial(alpha, a):
    """Coefficients ``c_k`` with ``C(n + alpha - 1, n) = sum_k c_k (n + a)^k`` (integer alpha)."""
    m = int(alpha)
    roots = [a - j for j in range(1, m)]
    coeffs = np.poly(roots) if roots else np.array([1.0])
    return coeffs[::-1] / math.factorial(m - 1)


def closed_form_value(kind: MomentFunctionKind, s, a) -> complex:
    """Evaluate ``kind`` from Hurwitz and alternating Hurwitz zeta values.

    ===========  ===================================================================
    ``S1``       ``zeta(s, a)``
    ``S2``       ``zeta(s-1, a) - a zeta(s, a)``
    ``C1``       ``eta(s, a) = sum (-1)^n (n + a)^-s``
    ``C2``       ``eta(s-1, a) + (1-a) eta(s, a)``
    ``T1``       ``2 (2 eta(s-1, a) - a^(1-s)) / (s - 1)``
    ``T2``       ``4 (a^(2-s) + 4 eta(s-3, a) - 4 a eta(s-2, a)) / ((s-1)(s-2))``
    ``SStar``    ``sum_k c_k zeta(s-k, a)`` for integer alpha
    ``CStar``    ``sum_k c_k eta(s-k, a)`` for integer alpha
    ===========  ===================================================================

    The removable points of ``T1`` (``s = 1``) and ``T2`` (``s in {1, 2}``)
    are filled in: ``T1(1, a) = 2 log(a/2) + 4 log Gamma(a/2) - 4 log Gamma((a+1)/2)``
    and ``T2`` by extrapolating symmetric averages.

    Raises
    ------
    DomainError
        For ``TStar`` and for star kinds of non-integer order.
    PoleError
        At the poles of ``S1``, ``S2`` and ``SStar``.
    """
    s = complex(s)
    tag, alpha = kind.tag, kind.alpha
    eta = alternating_hurwitz_zeta
    if tag is Kind.S1:
        return hurwitz_zeta(s, a)
    if tag is Kind.S2:
        if s in (1.0, 2.0):
            raise PoleError("S2(s, a) has poles at s = 1 and s = 2")
        return hurwitz_zeta(s - 1.0, a) - a * hurwitz_zeta(s, a)
    if tag is Kind.C1:
        return eta(s, a)
    if tag is Kind.C2:
        return eta(s - 1.0, a) + (1.0 - a) * eta(s, a)
    if tag is Kind.T1:
        if s == 1.0:
            value = 2.0 * (math.log(0.5 * a) + 2.0 * special.gammaln(0.5 * a) - 2.0 * special.gammaln(0.5 * (a + 1.0)))
            return complex(value)
        return 2.0 * (2.0 * eta(s - 1.0, a) - a ** (1.0 - s)) / (s - 1.0)
    if tag is Kind.T2:
        def t2(z):
            return 4.0 * (a ** (2.0 - z) + 4.0 * eta(z - 3.0, a) - 4.0 * a * eta(z - 2.0, a)) / ((z - 1.0) * (z - 2.0))

        for pole in (1.0, 2.0):
            if abs(s - pole) < 1e-6:
                return complex(_removable_limit(t2, pole))
        return complex(t2(s))
    if tag is Kind.TStar or alpha != int(alpha):
        raise DomainError(f"no closed form for {kind.label}")
    coeffs = _star_polynomial(alpha, a)
    if tag is Kind.SStar:
        for k in range(coeffs.size):
            if s - k == 1.0 and coeffs[k] != 0.0:
                raise PoleError(f"{kind.label} has a pole at s = {k + 1}")
        return complex(sum(c * hurwitz_zeta(s - k, a) for k, c in enumerate(coeffs)))
    return complex(sum(c * eta(s - k, a) for k, c in enumerate(coeffs)))


# ---------------------------------------------------------------------------
# Zeta and Bernoulli representations.


def jensen_pair(s, a, tol: ToleranceSpec = DEFAULT_TOL):
    """``((s - 1) zeta(s, a), E (a - 1/2 + i X)^(1-s))`` with ``X`` sinh(1)/2, ``a > 1/2``.

    At ``s = 1`` the left side is the residue 1.
    """
    s = complex(s)
    if not a > 0.5:
        raise DomainError("the sinh(1)/2 representation needs a > 1/2")
    lhs = 1.0 + 0j if s == 1.0 else (s - 1.0) * hurwitz_zeta(s, a)
    rhs = dist.complex_moment(dist.sinh_law(1), s - 1.0, a - 0.5, tol)
    return lhs, rhs


def zeta_u2_representation(s, a, tol: ToleranceSpec = DEFAULT_TOL) -> complex:
    """``E (a - 1 + U_2 + i X)^(-s) / 2 + (a - 1) E (a - 1 + U_1 + i X)^(-s)``.

    ``U_1`` is uniform on (0, 1), ``U_2`` has density ``2 (1 - u)`` on (0, 1)
    and ``X`` is sinh(2)/2; the result equals ``(s - 1) zeta(s, a)``.  Both
    expectations carry the shift ``a - 1``: it comes from the common factor
    ``e^{-(a-1) x}`` of the Mellin integrand, and without it the second term
    is wrong for every ``a > 1``.

    The outer expectations over ``u`` are adaptive quadratures; the inner
    moment ``E (b + i X)^(-s)`` is evaluated along ``Im x = -1/2``, where
    ``(b + 1/2 + i y)^(-s)`` stays bounded as ``b -> 0``.  All inner moments
    of one outer pass share a single vector-valued quadrature.

    Raises
    ------
    DomainError
        If ``a < 1``.
    """
    s = complex(s)
    if not a >= 1.0:
        raise DomainError("the U_2 representation needs a >= 1")
    if s == 0.0:
        return 0.5 + (a - 1.0) + 0j
    law = dist.sinh_law(2)

    def inner(bases):
        return dist.complex_moment_shifted(law, s, bases, _U2_SHIFT, tol)

    first = adaptive_integrate(lambda u: 2.0 * (1.0 - u) * inner(a - 1.0 + u), [0.0, 0.5, 1.0], _OUTER_TOL)
    value = 0.5 * complex(first.value)
    if a > 1.0:
        second = adaptive_integrate(lambda u: inner(a - 1.0 + u), [0.0, 0.5, 1.0], _OUTER_TOL)
        value += (a - 1.0) * complex(second.value)
    return complex(value.real, 0.0) if s.imag == 0.0 else value


class BernoulliRoute(enum.Enum):
    direct = "direct"
    functional = "functional"
    u2_form = "u2"


def gen_bernoulli(s, a, route=BernoulliRoute.functional, tol: ToleranceSpec = DEFAULT_TOL) -> complex:
    """Generalized Bernoulli function ``B(s, a)`` along one of three routes.

    ``direct``
        ``E (a - 1/2 + i X)^s`` with ``X`` sinh(1)/2 (``a > 1/2``).
    ``functional``
        ``-s zeta(1 - s, a)`` from the zeta oracle.
    ``u2``
        ``E (a - 1 + U_2 + i X)^(s-1) / 2 + (a - 1) E (a - 1 + U_1 + i X)^(s-1)``
        with ``X`` sinh(2)/2 (``a >= 1``).
    """
    route = BernoulliRoute(route) if not isinstance(route, BernoulliRoute) else route
    s = complex(s)
    if route is BernoulliRoute.functional:
        if not a > 0.5:
            raise DomainError("B(s, a) routes are compared for a > 1/2")
        return gen_bernoulli_functional(s, a)
    if route is BernoulliRoute.direct:
        if not a > 0.5:
            raise DomainError("the sinh(1)/2 route needs a > 1/2")
        return dist.complex_moment(dist.sinh_law(1), -s, a - 0.5, tol)
    return zeta_u2_representation(1.0 - s, a, tol)


# ---------------------------------------------------------------------------
# Mellin identities on the half line and the logistic moments.


def mellin_h_identity(s, a, tol: ToleranceSpec = DEFAULT_TOL):
    """``(int_0^inf x^(s-1) h_a(x) dx, (s - 1) Gamma(s) zeta(s, a))`` for ``a >= 1``, ``Re s > 0``.

    The right side is 1 at ``s = 1`` by continuity.
    """
    s = complex(s)
    if not a >= 1.0:
        raise DomainError("h_a is a density for a >= 1")
    if not s.real > 0.0:
        raise DomainError("the Mellin transform of h_a needs Re(s) > 0")
    res = mellin_halfline(lambda x: dist.density_h(a, x), s, tol, decay_hint=0.9 * a)
    rhs = 1.0 + 0j if s == 1.0 else (s - 1.0) * gamma_complex(s) * hurwitz_zeta(s, a)
    lhs = complex(res.value)
    if s.imag == 0.0:
        lhs, rhs = complex(lhs.real, 0.0), complex(complex(rhs).real, 0.0)
    return lhs, complex(rhs)


def logistic_moment_identity(s, a, tol: ToleranceSpec = DEFAULT_TOL):
    """``(int |x|^s g_a(x) dx, 2 Gamma(s + 1) eta(s, a))`` for ``a > 1/2``, ``s > -1``.

    ``eta(s, a) = sum (-1)^n (n + a)^-s`` is the alternating Hurwitz zeta; at
    ``s = 0`` it equals 1/2 and at ``s = 1``, ``a = 1`` it is ``log 2``.
    """
    s = float(s)
    if not a > 0.5:
        raise DomainError("g_a is a density for a > 1/2")
    if not s > -1.0:
        raise DomainError("the absolute moment diverges for s <= -1")
    res = mellin_halfline(lambda x: dist.density_g(a, x), s + 1.0, tol, decay_hint=0.9 * a)
    lhs = 2.0 * float(np.real(res.value))
    rhs = 2.0 * math.gamma(s + 1.0) * alternating_hurwitz_zeta(s, a).real
    return lhs, rhs


def logistic_abs_moment_closed(s) -> float:
    """``2 Gamma(s + 1) (1 - 2^(1-s)) zeta(s)``, continuous at ``s = 1``."""
    from hyperzeta.zeta import dirichlet_eta

    return 2.0 * math.gamma(float(s) + 1.0) * dirichlet_eta(float(s)).real


def s2_pole_probe(a, eps=1e-3, tol: ToleranceSpec = DEFAULT_TOL):
    """``E (a + i X)^(2-s)`` at ``s = 1 +- eps`` and ``2 +- eps`` (sinh(2)/2).

    This is ``S2(s, a) (s - 1)(s - 2)``, finite across the poles of ``S2``.
    Returns a dict mapping each probe ``s`` to the moment.
    """
    law = dist.sinh_law(2)
    probes = (1.0 - eps, 1.0, 1.0 + eps, 2.0 - eps, 2.0, 2.0 + eps)
    return {s: dist.complex_moment(law, s - 2.0, a, tol) for s in probes}
