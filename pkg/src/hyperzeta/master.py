"""Mellin transforms of damped characteristic functions and Laplace transforms.

For a symmetric law ``X`` with all moments and ``a > 0``, ``Re s > 0``,

    int_0^inf t^(s-1) e^(-a t) phi_X(t) dt = Gamma(s) E (a + i X)^(-s),

and at integer ``s`` this becomes the power series

    e^(-a t) phi_X(t) = sum_n (-t)^n E (a + i X)^n / n!.

The same holds with a nonnegative ``Y`` and its Laplace transform ``L`` in
place of ``phi_X`` and ``a + Y`` in place of ``a + i X``.  Each function here
evaluates both sides by independent numerics and returns them as a pair.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from hyperzeta import distributions as dist
from hyperzeta.distributions import DistributionSpec, Family
from hyperzeta.errors import DomainError
from hyperzeta.numerics import gamma_complex
from hyperzeta.quadrature import (
    DEFAULT_TOL,
    ToleranceSpec,
    integrate_finite,
    integrate_halfline_decaying,
    mellin_halfline,
)

WINDOW = 5.0
MAX_TERMS = 40


class SeriesDivergenceWarning(RuntimeWarning):
    """The truncated power series was still growing at its last term."""


@dataclass(frozen=True)
class MasterCheckCase:
    """A symmetric law with a point ``(s, a)``, ``Re s > 0`` and ``a > 0``."""

    spec: DistributionSpec
    s: complex
    a: float

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        if not self.s.real > 0.0:
            raise DomainError("Re(s) must be > 0")
        if not self.a > 0.0:
            raise DomainError("a must be > 0")
        if not self.spec.symmetric:
            raise DomainError(f"{self.spec.label} is not symmetric")


def master_mellin_check(case: MasterCheckCase, tol: ToleranceSpec = DEFAULT_TOL):
    """``(int_0^inf t^(s-1) e^(-a t) phi_X(t) dt, Gamma(s) E (a + i X)^(-s))``.

    The left side is a Mellin quadrature of the closed-form characteristic
    function; the right side integrates against the density.
    """
    spec, s, a = case.spec, case.s, case.a

    def damped(t):
        return np.exp(-a * t) * dist.cf(spec, t)

    lhs = complex(mellin_halfline(damped, s, tol, decay_hint=0.9 * a).value)
    rhs = complex(gamma_complex(s)) * dist.complex_moment(spec, s, a, tol)
    if s.imag == 0.0:
        lhs, rhs = complex(lhs.real, 0.0), complex(rhs.real, 0.0)
    return lhs, rhs


@dataclass(frozen=True)
class SeriesCheck:
    """Both sides of the power-series form and its diagnostics.

    Attributes
    ----------
    lhs : float
        ``e^(-a t) phi_X(t)``.
    rhs : float
        The series truncated after ``n_max``.
    last_term : float
        Magnitude of the ``n_max`` term.
    in_window : bool
        Whether ``t (a + 3 sigma) <= 5``; outside it cancellation between
        terms can swamp double precision.
    """

    lhs: float
    rhs: float
    last_term: float
    in_window: bool

    def __iter__(self):
        return iter((self.lhs, self.rhs))


def raw_moments(spec: DistributionSpec, n_max: int, tol: ToleranceSpec = DEFAULT_TOL) -> np.ndarray:
    """``E X^k`` for ``k = 0..n_max`` of a symmetric law (odd ones vanish)."""
    out = np.zeros(n_max + 1)
    out[0] = 1.0
    for k in range(2, n_max + 1, 2):
        out[k] = dist.abs_moment(spec, k, tol)
    return out


def shifted_integer_moments(spec: DistributionSpec, a, n_max: int, tol: ToleranceSpec = DEFAULT_TOL):
    """``E (a + i X)^n`` for ``n = 0..n_max`` by binomial expansion in the raw moments."""
    m = raw_moments(spec, n_max, tol)
    out = np.empty(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        k = np.arange(n + 1)
        out[n] = np.sum(special.comb(n, k) * float(a) ** (n - k) * (1j) ** k * m[: n + 1])
    return out


def master_series_check(spec: DistributionSpec, a, t, n_max: int = 30,
                        tol: ToleranceSpec = DEFAULT_TOL) -> SeriesCheck:
    """Compare ``e^(-a t) phi_X(t)`` with ``sum_{n<=n_max} (-t)^n E (a + i X)^n / n!``.

    Warns with :class:`SeriesDivergenceWarning` if the last two terms are
    larger than the two before them and not yet below rounding level.

    Raises
    ------
    DomainError
        If ``t < 0``, ``a <= 0``, ``n_max`` is outside ``0..40`` or the law is
        not symmetric.
    """
    t, a = float(t), float(a)
    if t < 0.0:
        raise DomainError("t must be >= 0")
    if not a > 0.0:
        raise DomainError("a must be > 0")
    if not 0 <= n_max <= MAX_TERMS:
        raise DomainError(f"n_max must lie in 0..{MAX_TERMS}")
    if not spec.symmetric:
        raise DomainError(f"{spec.label} is not symmetric")
    lhs = float(math.exp(-a * t) * dist.cf(spec, t))
    moments = shifted_integer_moments(spec, a, n_max, tol)
    n = np.arange(n_max + 1)
    terms = ((-t) ** n / special.factorial(n)) * moments
    rhs = float(math.fsum(terms.real))
    mags = np.abs(terms)
    # Compare consecutive pairs: the terms of a symmetric law oscillate between odd and even n.
    if n_max >= 4:
        recent, before = mags[-2:].max(), mags[-4:-2].max()
        growing = recent > before and recent > 1e-16 * max(1.0, abs(rhs))
    else:
        growing = False
    if growing:
        warnings.warn(f"series terms still growing at n_max = {n_max}", SeriesDivergenceWarning, stacklevel=2)
    sigma = math.sqrt(raw_moments(spec, 2, tol)[2])
    return SeriesCheck(lhs, rhs, float(mags[-1]), t * (a + 3.0 * sigma) <= WINDOW)


# ---------------------------------------------------------------------------
# Nonnegative laws: the gamma family and its Laplace transform (1 + u)^-alpha.


def gamma_laplace(alpha, u):
    """``E e^(-u Y) = (1 + u)^(-alpha)`` for ``Y`` gamma(alpha)."""
    return np.power(1.0 + np.asarray(u, dtype=float), -float(alpha))


def gamma_expectation(alpha, g, tol: ToleranceSpec = DEFAULT_TOL) -> complex:
    """``E g(Y)`` for ``Y`` gamma(alpha) by quadrature.

    For ``alpha < 1`` the density is unbounded at 0; there the piece over
    ``(0, 1)`` is rewritten with ``y = u^(1/alpha)``, which turns it into
    ``int_0^1 g(y) e^(-y) du / Gamma(alpha + 1)`` with a bounded integrand.
    """
    alpha = float(alpha)
    spec = DistributionSpec(Family.Gamma_alpha, alpha)

    def weighted(y):
        return g(y) * dist.pdf(spec, y, tol)

    if alpha >= 1.0:
        return complex(integrate_halfline_decaying(weighted, tol, 0.9).value)
    inv = 1.0 / alpha
    norm = math.exp(-special.gammaln(alpha + 1.0))

    def head(u):
        y = u ** inv
        return g(y) * np.exp(-y) * norm

    near = integrate_finite(head, 0.0, 1.0, tol)
    far = integrate_halfline_decaying(weighted, tol, 0.9, lo=1.0)
    return complex(near.value) + complex(far.value)


def laplace_variant_check(alpha, s, a, tol: ToleranceSpec = DEFAULT_TOL):
    """``(int_0^inf x^(s-1) e^(-a x) (1 + x)^(-alpha) dx, Gamma(s) E (a + Y)^(-s))``, ``Y`` gamma(alpha)."""
    s = complex(s)
    if not s.real > 0.0:
        raise DomainError("Re(s) must be > 0")
    if not a > 0.0:
        raise DomainError("a must be > 0")
    if not alpha > 0.0:
        raise DomainError("alpha must be > 0")

    def damped(x):
        return np.exp(-a * x) * gamma_laplace(alpha, x)

    lhs = complex(mellin_halfline(damped, s, tol, decay_hint=0.9 * a).value)
    rhs = complex(gamma_complex(s)) * gamma_expectation(alpha, lambda y: np.exp(-s * np.log(a + y)), tol)
    if s.imag == 0.0:
        lhs, rhs = complex(lhs.real, 0.0), complex(rhs.real, 0.0)
    return lhs, rhs


def gamma_interchange_check(alpha, beta, tol: ToleranceSpec = DEFAULT_TOL):
    """``(E_beta (1 + Y)^(-alpha), E_alpha (1 + Y)^(-beta))``, both by quadrature."""
    if not (alpha > 0.0 and beta > 0.0):
        raise DomainError("alpha and beta must be > 0")
    lhs = gamma_expectation(beta, lambda y: gamma_laplace(alpha, y), tol).real
    rhs = gamma_expectation(alpha, lambda y: gamma_laplace(beta, y), tol).real
    return float(lhs), float(rhs)
