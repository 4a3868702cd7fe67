"""Hyperbolic sinh/cosh/tanh laws and the auxiliary laws built around them.

A law is described by a frozen :class:`DistributionSpec`.  The hyperbolic
families ``SinhHat``, ``CoshHat`` and ``TanhHat`` of order ``alpha`` have
characteristic functions

* ``(theta / sinh theta) ** alpha``,
* ``(1 / cosh theta) ** alpha``,
* ``(tanh theta / theta) ** alpha``

on the ``Full`` scale; the ``Half`` scale is the law of half such a variable,
so its density is ``2 f_full(2 x)`` and its characteristic function is the
full one at ``theta / 2``.

Densities are evaluated from closed forms where they exist (orders 1 and 2 of
every family, and every order of the cosh family through the complex gamma
function) and otherwise by Fourier inversion of the characteristic function.
All public functions accept scalars or arrays of evaluation points and return
a float for scalar input.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import interpolate, optimize, special

from hyperzeta.errors import DomainError, SingularityError
from hyperzeta.numerics import complex_pow_principal
from hyperzeta.quadrature import (
    DEFAULT_TOL,
    QuadratureResult,
    ToleranceSpec,
    fourier_cosine_halfline,
    integrate_finite,
    integrate_halfline_decaying,
    mellin_halfline,
)

_PI = math.pi
_CHUNK = 128


class Family(enum.Enum):
    SinhHat = "sinh"
    CoshHat = "cosh"
    TanhHat = "tanh"
    Logistic = "logistic"
    UniformU1 = "uniform"
    TriangularU2_on01 = "triangular-u2"
    TriangularV_on02 = "triangular-v"
    IrwinHall = "irwin-hall"
    DensityH_a = "h"
    DensityG_a = "g"
    StdNormal = "normal"
    Gamma_alpha = "gamma"


class Scale(enum.Enum):
    Full = "full"
    Half = "half"


HYPERBOLIC = frozenset({Family.SinhHat, Family.CoshHat, Family.TanhHat})
_ORDERED = HYPERBOLIC | {Family.IrwinHall, Family.Gamma_alpha}
_SYMMETRIC = HYPERBOLIC | {Family.Logistic, Family.DensityG_a, Family.StdNormal}


@dataclass(frozen=True)
class DistributionSpec:
    """A law from the package's catalogue.

    Parameters
    ----------
    family : Family
    order : float
        ``alpha`` for the hyperbolic, Irwin-Hall (integer) and gamma
        families; ignored (kept at 1) for the others.
    scale : Scale
        ``Half`` is only meaningful for the hyperbolic families.
    a_param : float, optional
        Shape parameter of ``DensityH_a`` (``a >= 1``) and ``DensityG_a``
        (``a > 1/2``).
    """

    family: Family
    order: float = 1.0
    scale: Scale = Scale.Full
    a_param: float | None = None

    def __post_init__(self):
        fam = self.family
        if not isinstance(fam, Family):
            raise DomainError(f"unknown family {fam!r}")
        if not (self.order > 0.0 and math.isfinite(self.order)):
            raise DomainError("order must be a positive finite number")
        if fam not in _ORDERED and self.order != 1.0:
            raise DomainError(f"{fam.name} takes no order parameter")
        if fam is Family.IrwinHall and self.order != int(self.order):
            raise DomainError("Irwin-Hall order must be a positive integer")
        if fam not in HYPERBOLIC and self.scale is not Scale.Full:
            raise DomainError("the half scale applies to the hyperbolic families only")
        if fam is Family.DensityH_a:
            if self.a_param is None or not self.a_param >= 1.0:
                raise DomainError("h_a needs a >= 1")
        elif fam is Family.DensityG_a:
            if self.a_param is None or not self.a_param > 0.5:
                raise DomainError("g_a needs a > 1/2")
        elif self.a_param is not None:
            raise DomainError(f"{fam.name} takes no a parameter")

    @property
    def symmetric(self):
        return self.family in _SYMMETRIC

    @property
    def label(self):
        """Short human-readable name, e.g. ``sinh(2)/2`` or ``logistic``."""
        fam = self.family
        if fam in HYPERBOLIC:
            text = f"{fam.value}({self.order:g})"
            return text + "/2" if self.scale is Scale.Half else text
        if fam in (Family.IrwinHall, Family.Gamma_alpha):
            return f"{fam.value}({self.order:g})"
        if self.a_param is not None:
            return f"{fam.value}(a={self.a_param:g})"
        return fam.value


def sinh_law(alpha=1.0, scale=Scale.Half):
    return DistributionSpec(Family.SinhHat, float(alpha), scale)


def cosh_law(alpha=1.0, scale=Scale.Half):
    return DistributionSpec(Family.CoshHat, float(alpha), scale)


def tanh_law(alpha=1.0, scale=Scale.Half):
    return DistributionSpec(Family.TanhHat, float(alpha), scale)


LOGISTIC = DistributionSpec(Family.Logistic)
STD_NORMAL = DistributionSpec(Family.StdNormal)
UNIFORM_U1 = DistributionSpec(Family.UniformU1)
TRIANGULAR_U2 = DistributionSpec(Family.TriangularU2_on01)
TRIANGULAR_V = DistributionSpec(Family.TriangularV_on02)


def _as_array(x):
    scalar = np.ndim(x) == 0
    return np.atleast_1d(np.asarray(x, dtype=float)), scalar


def _finish(values, scalar):
    values = np.asarray(values)
    return float(values.reshape(-1)[0]) if scalar else values


def _chunked(fn, xs):
    flat = xs.reshape(-1)
    out = np.empty(flat.size)
    for start in range(0, flat.size, _CHUNK):
        out[start:start + _CHUNK] = fn(flat[start:start + _CHUNK])
    return out.reshape(xs.shape)


# ---------------------------------------------------------------------------
# Closed-form densities of the order-1 and order-2 half-scale laws.


def sinh1_half_pdf(x):
    """``pi / (2 cosh^2(pi x))``, the law of half a sinh(1) variable."""
    x, scalar = _as_array(x)
    t = np.exp(-2.0 * _PI * np.abs(x))
    return _finish(2.0 * _PI * t / (1.0 + t) ** 2, scalar)


def sinh2_half_pdf(x):
    """``pi [pi x coth(pi x) - 1] / sinh^2(pi x)``; equals ``pi/3`` at 0."""
    x, scalar = _as_array(x)
    y = _PI * np.abs(x)
    out = np.empty_like(y)
    small = y < 0.05
    ys = y[small]
    y2 = ys * ys
    poly = 1.0 / 3.0 - y2 * (1.0 / 45.0 - y2 * (2.0 / 945.0 - y2 / 4725.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = (ys / np.sinh(ys)) ** 2 * poly
    out[small] = np.where(ys == 0.0, 1.0 / 3.0, ratio)
    yl = y[~small]
    t = np.exp(-2.0 * yl)
    one_minus = -np.expm1(-2.0 * yl)
    out[~small] = 4.0 * t * (yl * (1.0 + t) / one_minus - 1.0) / one_minus ** 2
    return _finish(_PI * out, scalar)


def cosh1_half_pdf(x):
    """``1 / cosh(pi x)``."""
    x, scalar = _as_array(x)
    t = np.exp(-_PI * np.abs(x))
    return _finish(2.0 * t / (1.0 + t * t), scalar)


def cosh2_half_pdf(x):
    """``2 x / sinh(pi x)``; equals ``2/pi`` at 0."""
    x, scalar = _as_array(x)
    ax = np.abs(x)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = 4.0 * ax * np.exp(-_PI * ax) / -np.expm1(-2.0 * _PI * ax)
    return _finish(np.where(ax == 0.0, 2.0 / _PI, val), scalar)


def tanh1_half_pdf(x):
    """``(2/pi) log coth(pi |x| / 2)``; infinite at 0.

    Raises
    ------
    SingularityError
        If any ``x == 0``.
    """
    x, scalar = _as_array(x)
    if np.any(x == 0.0):
        raise SingularityError("the tanh(1) density is infinite at x = 0")
    t = np.exp(-_PI * np.abs(x))
    return _finish((2.0 / _PI) * (np.log1p(t) - np.log1p(-t)), scalar)


def tanh2_half_pdf(x, tol: ToleranceSpec = DEFAULT_TOL):
    """``int_{2|x|}^inf y (y - 2|x|) / sinh(pi y / 2) dy`` by quadrature.

    With ``c = 2|x|`` and ``y = c + v`` the integrand is
    ``exp(-pi c / 2) * 2 (c + v) v exp(-pi v / 2) / (1 - exp(-pi (c + v)))``;
    the factor ``exp(-pi c / 2)`` is pulled out so the quadrature works at
    relative accuracy for every ``x``.
    """
    x, scalar = _as_array(x)
    c_all = 2.0 * np.abs(x.reshape(-1))
    uniq, inverse = np.unique(c_all, return_inverse=True)

    def block(c):
        def integrand(v):
            cv = c[None, :] + v[:, None]
            return 2.0 * cv * v[:, None] * np.exp(-0.5 * _PI * v)[:, None] / -np.expm1(-_PI * cv)

        res = integrate_halfline_decaying(integrand, tol, decay_hint=0.45 * _PI)
        return np.atleast_1d(res.value) * np.exp(-0.5 * _PI * c)

    values = _chunked(block, uniq)[inverse]
    return _finish(values.reshape(x.shape), scalar)


def tanh2_half_pdf_series(x, terms=2_000_000):
    """Independent evaluation of the tanh(2)/2 density by a series.

    Expanding ``1/sinh`` as ``2 sum_k exp(-(2k+1) z)`` gives
    ``2 sum_k exp(-m_k c) (2 / m_k^3 + c / m_k^2)`` with
    ``m_k = (2k+1) pi / 2`` and ``c = 2|x|``.  The terms are summed from the
    smallest upwards; at ``x = 0`` the remainder after ``terms`` terms is
    below ``1 / terms^2``.
    """
    x, scalar = _as_array(x)
    m = (2.0 * np.arange(terms, dtype=float)[::-1] + 1.0) * (0.5 * _PI)
    out = np.empty(x.size)
    for i, xi in enumerate(x.reshape(-1)):
        c = 2.0 * abs(xi)
        out[i] = 2.0 * math.fsum(np.exp(-m * c) * (2.0 / m ** 3 + c / m ** 2))
    return _finish(out.reshape(x.shape), scalar)


# ---------------------------------------------------------------------------
# General-order full-scale densities.


def _sinh_cf_full(u, alpha):
    u = np.abs(np.asarray(u, dtype=float))
    out = np.ones_like(u)
    mid = (u > 0.0) & (u <= 20.0)
    out[mid] = (u[mid] / np.sinh(u[mid])) ** alpha
    big = u > 20.0
    ub = u[big]
    out[big] = np.exp(alpha * (np.log(2.0 * ub) - ub - np.log1p(-np.exp(-2.0 * ub))))
    return out


def _cosh_cf_full(u, alpha):
    u = np.abs(np.asarray(u, dtype=float))
    return np.exp(alpha * (math.log(2.0) - u - np.log1p(np.exp(-2.0 * u))))


def _tanh_cf_full(u, alpha):
    u = np.abs(np.asarray(u, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(u < 1e-8, 1.0, np.tanh(u) / np.where(u == 0.0, 1.0, u))
    return ratio ** alpha


def _resolved(res, tol):
    # Values inside their own error band (far tails) are reported as 0.
    value = np.atleast_1d(res.value)
    floor = np.maximum(2.0 * np.atleast_1d(res.abs_error_estimate), tol.abs_tol)
    return np.where(value > floor, value, 0.0)


def sinh_pdf_fourier(alpha, x, tol: ToleranceSpec = DEFAULT_TOL):
    """Full-scale sinh(alpha) density ``(1/pi) int_0^inf cos(x u) (u / sinh u)^alpha du``."""
    x, scalar = _as_array(x)

    def block(xs):
        res = fourier_cosine_halfline(lambda u: _sinh_cf_full(u, alpha), xs, tol,
                                      decay="exponential", rate=0.9 * alpha)
        return _resolved(res, tol)

    return _finish(np.maximum(_chunked(block, np.abs(x)), 0.0), scalar)


def cosh_pdf_gamma(alpha, x):
    """Full-scale cosh(alpha) density ``2^(alpha-2) |Gamma((alpha + i x)/2)|^2 / (Gamma(alpha) pi)``."""
    x, scalar = _as_array(x)
    log_mod = 2.0 * special.loggamma(0.5 * (alpha + 1j * x)).real
    log_c = (alpha - 2.0) * math.log(2.0) - special.gammaln(alpha) - math.log(_PI)
    return _finish(np.exp(log_c + log_mod), scalar)


def tanh_pdf_fourier(alpha, x, tol: ToleranceSpec = DEFAULT_TOL):
    """Full-scale tanh(alpha) density ``(1/pi) int_0^inf cos(x u) (tanh u / u)^alpha du``.

    The integrand decays only like ``u^(-alpha)``; the tail is summed over
    half periods of ``cos(x u)`` with Euler's transformation.

    Raises
    ------
    SingularityError
        At ``x = 0`` when ``alpha <= 1`` (the integral diverges).
    """
    x, scalar = _as_array(x)
    if alpha <= 1.0 and np.any(x == 0.0):
        raise SingularityError(f"the tanh({alpha:g}) density is infinite at x = 0")

    def block(xs):
        res = fourier_cosine_halfline(lambda u: _tanh_cf_full(u, alpha), xs, tol,
                                      decay="algebraic", rate=alpha)
        return _resolved(res, tol)

    return _finish(np.maximum(_chunked(block, np.abs(x)), 0.0), scalar)


def _log_ratio_near_one(y):
    """``(-log y) / (1 - y^2)`` with the removable point ``y = 1`` guarded."""
    d = 1.0 - y
    out = np.empty_like(y)
    near = np.abs(d) < 1e-4
    dn = d[near]
    out[near] = (1.0 + dn * (0.5 + dn * (1.0 / 3.0 + 0.25 * dn))) / (2.0 - dn)
    yf = y[~near]
    out[~near] = -np.log(yf) / (d[~near] * (1.0 + yf))
    return out


def sinh_pdf_unit_interval(alpha, x, tol: ToleranceSpec = DEFAULT_TOL):
    """Full-scale sinh(alpha) density from its ``(0, 1)`` integral form.

    ``(2^alpha / pi) int_0^1 cos(x log y) y^(alpha-1) ((-log y) / (1 - y^2))^alpha dy``,
    which is the cosine form after ``u = -log y``.  Only the positive ratio
    ``(-log y) / (1 - y^2)`` is raised to the power ``alpha``.
    """
    x, scalar = _as_array(x)
    xs = x.reshape(-1)

    def integrand(y):
        w = y ** (alpha - 1.0) * _log_ratio_near_one(y) ** alpha
        return np.cos(np.outer(np.log(y), xs)) * w[:, None]

    res = integrate_finite(integrand, 0.0, 1.0, tol, points=(0.5,))
    values = np.atleast_1d(res.value) * (2.0 ** alpha / _PI)
    return _finish(values.reshape(x.shape), scalar)


def tanh_pdf_unit_interval(alpha, x, cutoff, tol: ToleranceSpec = DEFAULT_TOL):
    """``(1/pi) int_cutoff^1 cos(x log y) ((1 - y^2) / ((1 + y^2)(-log y)))^alpha dy / y``.

    This is the ``(0, 1)`` form of the tanh(alpha) density restricted to
    ``y > cutoff``; under ``u = -log y`` it equals the cosine form over
    ``(0, -log cutoff)``.  The full range is out of reach in double
    precision: the neglected piece is of order ``(-log cutoff)^(1-alpha)``.
    """
    if not 0.0 < cutoff < 1.0:
        raise DomainError("cutoff must lie in (0, 1)")
    x, scalar = _as_array(x)
    xs = x.reshape(-1)

    def integrand(y):
        ratio = 1.0 / (_log_ratio_near_one(y) * (1.0 + y * y))
        w = ratio ** alpha / y
        return np.cos(np.outer(np.log(y), xs)) * w[:, None]

    points = tuple(p for p in np.geomspace(cutoff, 1.0, 12)[1:-1])
    res = integrate_finite(integrand, cutoff, 1.0, tol, points=points)
    values = np.atleast_1d(res.value) / _PI
    return _finish(values.reshape(x.shape), scalar)


# ---------------------------------------------------------------------------
# Dispatch.


def _hyperbolic_full_pdf(family, alpha, x, tol):
    if family is Family.CoshHat:
        return cosh_pdf_gamma(alpha, x)
    if family is Family.SinhHat:
        if alpha == 1.0:
            return 0.5 * sinh1_half_pdf(0.5 * x)
        if alpha == 2.0:
            return 0.5 * sinh2_half_pdf(0.5 * x)
        return sinh_pdf_fourier(alpha, x, tol)
    if alpha == 1.0:
        return 0.5 * tanh1_half_pdf(0.5 * x)
    if alpha == 2.0:
        return 0.5 * tanh2_half_pdf(0.5 * x, tol)
    return tanh_pdf_fourier(alpha, x, tol)


_HALF_CLOSED = {
    (Family.SinhHat, 1.0): sinh1_half_pdf,
    (Family.SinhHat, 2.0): sinh2_half_pdf,
    (Family.CoshHat, 1.0): cosh1_half_pdf,
    (Family.CoshHat, 2.0): cosh2_half_pdf,
    (Family.TanhHat, 1.0): tanh1_half_pdf,
    (Family.TanhHat, 2.0): tanh2_half_pdf,
}


def _irwin_hall_pdf(n, x):
    n = int(n)
    out = np.zeros_like(x)
    inside = (x > 0.0) & (x < n)
    xi = x[inside]
    total = np.zeros_like(xi)
    for k in range(n):
        part = np.clip(xi - k, 0.0, None)
        total += (-1.0) ** k * special.comb(n, k) * part ** (n - 1)
    out[inside] = total / math.factorial(n - 1)
    return out


def _irwin_hall_cdf(n, x):
    n = int(n)
    xc = np.clip(x, 0.0, float(n))
    total = np.zeros_like(xc)
    for k in range(n + 1):
        total += (-1.0) ** k * special.comb(n, k) * np.clip(xc - k, 0.0, None) ** n
    return np.clip(total / math.factorial(n), 0.0, 1.0)


def density_h(a, x):
    """``h_a(x) = exp(-a x) [a x - 1 + exp(-x)(1 - (a-1) x)] / (1 - exp(-x))^2`` for ``x >= 0``.

    Rewritten as ``exp(-a x) [(x - E) + (a-1) x E] / E^2`` with
    ``E = 1 - exp(-x)``; ``x - E`` uses its Taylor series for small ``x``.
    The value at 0 is the limit ``a - 1/2``.
    """
    x, scalar = _as_array(x)
    if np.any(x < 0.0):
        raise DomainError("h_a is supported on x >= 0")
    e = -np.expm1(-x)
    small = x < 1e-2
    xs = x[small]
    x_minus_e = np.empty_like(x)
    x_minus_e[small] = xs * xs * (0.5 - xs * (1.0 / 6.0 - xs * (1.0 / 24.0 - xs * (1.0 / 120.0 - xs / 720.0))))
    x_minus_e[~small] = x[~small] - e[~small]
    with np.errstate(invalid="ignore", divide="ignore"):
        val = np.exp(-a * x) * (x_minus_e + (a - 1.0) * x * e) / (e * e)
    return _finish(np.where(x == 0.0, a - 0.5, val), scalar)


def density_g(a, x):
    """``g_a(x) = exp(-a|x|) (a + (a-1) exp(-|x|)) / (1 + exp(-|x|))^2``."""
    x, scalar = _as_array(x)
    t = np.exp(-np.abs(x))
    return _finish(np.exp(-a * np.abs(x)) * (a + (a - 1.0) * t) / (1.0 + t) ** 2, scalar)


def pdf(spec: DistributionSpec, x, tol: ToleranceSpec = DEFAULT_TOL):
    """Density of ``spec`` at ``x`` (scalar or array).

    Raises
    ------
    SingularityError
        For the tanh family with ``order <= 1`` at ``x = 0``, and for the
        gamma law with ``order < 1`` at ``x = 0``.
    DomainError
        For ``x < 0`` with the half-line laws ``h_a`` and gamma.
    """
    x, scalar = _as_array(x)
    fam, alpha = spec.family, spec.order
    if fam in HYPERBOLIC:
        if spec.scale is Scale.Half:
            closed = _HALF_CLOSED.get((fam, alpha))
            if closed is not None:
                out = closed(x, tol) if fam is Family.TanhHat and alpha == 2.0 else closed(x)
            else:
                if fam is Family.TanhHat and alpha <= 1.0 and np.any(x == 0.0):
                    raise SingularityError(f"the tanh({alpha:g}) density is infinite at x = 0")
                out = 2.0 * _hyperbolic_full_pdf(fam, alpha, 2.0 * x, tol)
        else:
            if fam is Family.TanhHat and alpha <= 1.0 and np.any(x == 0.0):
                raise SingularityError(f"the tanh({alpha:g}) density is infinite at x = 0")
            out = _hyperbolic_full_pdf(fam, alpha, x, tol)
    elif fam is Family.Logistic:
        t = np.exp(-np.abs(x))
        out = t / (1.0 + t) ** 2
    elif fam is Family.StdNormal:
        out = np.exp(-0.5 * x * x) / math.sqrt(2.0 * _PI)
    elif fam is Family.UniformU1:
        out = np.where((x > 0.0) & (x < 1.0), 1.0, 0.0)
    elif fam is Family.TriangularU2_on01:
        out = np.where((x > 0.0) & (x < 1.0), 2.0 * (1.0 - x), 0.0)
    elif fam is Family.TriangularV_on02:
        out = _irwin_hall_pdf(2, x)
    elif fam is Family.IrwinHall:
        out = _irwin_hall_pdf(alpha, x)
    elif fam is Family.DensityH_a:
        out = density_h(spec.a_param, x)
    elif fam is Family.DensityG_a:
        out = density_g(spec.a_param, x)
    elif fam is Family.Gamma_alpha:
        if np.any(x < 0.0):
            raise DomainError("the gamma law is supported on x >= 0")
        if alpha < 1.0 and np.any(x == 0.0):
            raise SingularityError("the gamma density with order < 1 is infinite at 0")
        with np.errstate(divide="ignore"):
            logx = np.log(x)
        out = np.where(x == 0.0, 1.0 if alpha == 1.0 else 0.0,
                       np.exp((alpha - 1.0) * np.where(x == 0.0, 0.0, logx) - x - special.gammaln(alpha)))
    else:  # pragma: no cover - the enum is exhaustive
        raise DomainError(f"no density for {fam}")
    return _finish(out, scalar)


def cf(spec: DistributionSpec, theta):
    """Characteristic function ``E exp(i theta X)`` of a symmetric law (real-valued).

    Available for the hyperbolic families, the logistic law and the standard
    normal law.
    """
    theta, scalar = _as_array(theta)
    fam, alpha = spec.family, spec.order
    if fam in HYPERBOLIC:
        th = 0.5 * theta if spec.scale is Scale.Half else theta
        if fam is Family.SinhHat:
            out = _sinh_cf_full(th, alpha)
        elif fam is Family.CoshHat:
            out = _cosh_cf_full(th, alpha)
        else:
            out = _tanh_cf_full(th, alpha)
    elif fam is Family.Logistic:
        out = _sinh_cf_full(_PI * theta, 1.0)
    elif fam is Family.StdNormal:
        out = np.exp(-0.5 * theta * theta)
    else:
        raise DomainError(f"no closed-form characteristic function for {spec.label}")
    return _finish(out, scalar)


def decay_rate(spec: DistributionSpec):
    """Exponential rate ``lambda`` with ``pdf(x) = O(|x|^p exp(-lambda |x|))``."""
    fam = spec.family
    half = 2.0 if spec.scale is Scale.Half else 1.0
    if fam is Family.SinhHat:
        return _PI * half
    if fam in (Family.CoshHat, Family.TanhHat):
        return 0.5 * _PI * half
    if fam is Family.Logistic:
        return 1.0
    if fam is Family.DensityG_a:
        return spec.a_param
    if fam is Family.DensityH_a:
        return spec.a_param
    if fam is Family.Gamma_alpha:
        return 1.0
    if fam is Family.StdNormal:
        return 4.0
    return math.inf


def support(spec: DistributionSpec):
    """``(lo, hi)`` of the support (possibly infinite)."""
    fam = spec.family
    if fam in (Family.UniformU1, Family.TriangularU2_on01):
        return 0.0, 1.0
    if fam is Family.TriangularV_on02:
        return 0.0, 2.0
    if fam is Family.IrwinHall:
        return 0.0, float(spec.order)
    if fam in (Family.DensityH_a, Family.Gamma_alpha):
        return 0.0, math.inf
    return -math.inf, math.inf


# ---------------------------------------------------------------------------
# Distribution functions.


def _chi2_legendre(z):
    # chi_2(z) = (Li2(z) - Li2(-z)) / 2 with Li2(z) = spence(1 - z)
    return 0.5 * (special.spence(1.0 - z) - special.spence(1.0 + z))


def _closed_cdf(spec, x):
    fam, alpha = spec.family, spec.order
    if fam in HYPERBOLIC:
        xh = x if spec.scale is Scale.Half else 0.5 * x
        if alpha == 1.0:
            if fam is Family.SinhHat:
                return special.expit(2.0 * _PI * xh)
            if fam is Family.CoshHat:
                return 0.5 + (2.0 / _PI) * np.arctan(np.tanh(0.5 * _PI * xh))
            tail = (4.0 / _PI ** 2) * _chi2_legendre(np.exp(-_PI * np.abs(xh)))
            return np.where(xh >= 0.0, 1.0 - tail, tail)
        return None
    if fam is Family.Logistic:
        return special.expit(x)
    if fam is Family.StdNormal:
        return special.ndtr(x)
    if fam is Family.UniformU1:
        return np.clip(x, 0.0, 1.0)
    if fam is Family.TriangularU2_on01:
        u = np.clip(x, 0.0, 1.0)
        return 1.0 - (1.0 - u) ** 2
    if fam is Family.TriangularV_on02:
        return _irwin_hall_cdf(2, x)
    if fam is Family.IrwinHall:
        return _irwin_hall_cdf(alpha, x)
    if fam is Family.Gamma_alpha:
        return special.gammainc(alpha, np.clip(x, 0.0, None))
    return None


def _mass_from_zero(spec, r, tol):
    """``int_0^r pdf`` for each ``r >= 0`` as ``r int_0^1 pdf(r t) dt``."""
    out = np.zeros_like(r)
    pos = r > 0.0
    rp = r[pos]
    if rp.size:
        def integrand(t):
            return pdf(spec, np.outer(t, rp), tol) * rp[None, :]

        res = integrate_finite(integrand, 0.0, 1.0, tol)
        out[pos] = np.atleast_1d(res.value)
    return out


def cdf(spec: DistributionSpec, x, tol: ToleranceSpec = DEFAULT_TOL):
    """``P(X <= x)``.

    Closed forms are used for the logistic, normal, uniform, triangular,
    Irwin-Hall and gamma laws and for the order-1 hyperbolic laws (the
    tanh(1) tail is a Legendre chi function).  Every other law is handled by
    integrating its density from the centre of symmetry (or from 0 for
    ``h_a``).
    """
    x, scalar = _as_array(x)
    closed = _closed_cdf(spec, x)
    if closed is not None:
        return _finish(np.asarray(closed, dtype=float), scalar)
    flat = x.reshape(-1)
    if spec.family is Family.DensityH_a:
        out = _chunked(lambda r: _mass_from_zero(spec, r, tol), np.clip(flat, 0.0, None))
    else:
        mass = _chunked(lambda r: _mass_from_zero(spec, r, tol), np.abs(flat))
        out = 0.5 + np.sign(flat) * mass
    return _finish(np.clip(out, 0.0, 1.0).reshape(x.shape), scalar)


# ---------------------------------------------------------------------------
# Sampling.


@dataclass(frozen=True)
class SampleBatch:
    values: np.ndarray
    seed: int
    spec: DistributionSpec


@dataclass(frozen=True)
class _CdfTable:
    x: np.ndarray
    F: np.ndarray
    interp: interpolate.PchipInterpolator


_TABLE_SIZE = 4096
_TAIL_MASS = 1e-10
_GL5_X, _GL5_W = np.polynomial.legendre.leggauss(5)


def _table_range(spec):
    lo, hi = support(spec)
    if math.isfinite(lo) and math.isfinite(hi):
        return lo, hi
    closed = _closed_cdf(spec, np.array([0.0]))
    rate = decay_rate(spec)
    right = 1.0
    # Walk out until the tail mass drops below the table's quantile range.
    while True:
        if closed is not None:
            tail = 1.0 - float(_closed_cdf(spec, np.array([right]))[0])
        else:
            tail = float(pdf(spec, right)) * 2.0 / rate
        if tail < _TAIL_MASS or right > 1e3:
            break
        right *= 1.25
    if closed is not None and 1.0 - float(_closed_cdf(spec, np.array([right]))[0]) > 0.0:
        f = lambda r: 1.0 - float(_closed_cdf(spec, np.array([r]))[0]) - _TAIL_MASS
        if f(0.0) > 0.0 and f(right) < 0.0:
            right = optimize.brentq(f, 0.0, right, xtol=1e-12)
    left = lo if math.isfinite(lo) else -right
    return left, right


@lru_cache(maxsize=64)
def _cdf_table(spec: DistributionSpec):
    lo, hi = _table_range(spec)
    grid = np.linspace(lo, hi, _TABLE_SIZE)
    closed = _closed_cdf(spec, grid)
    if closed is not None:
        F = np.asarray(closed, dtype=float)
    else:
        # Five-point Gauss-Legendre on every cell; end points are never
        # evaluated, so integrable singularities at cell edges are tolerated.
        left, right = grid[:-1], grid[1:]
        half = 0.5 * (right - left)
        nodes = 0.5 * (left + right)[:, None] + half[:, None] * _GL5_X[None, :]
        dens = pdf(spec, nodes)
        cells = (dens * _GL5_W[None, :]).sum(axis=1) * half
        F = np.concatenate([[0.0], np.cumsum(cells)])
        F /= F[-1]
    F = np.maximum.accumulate(np.clip(F, 0.0, 1.0))
    keep = np.concatenate([[True], np.diff(F) > 0.0])
    xs, Fs = grid[keep], F[keep]
    return _CdfTable(xs, Fs, interpolate.PchipInterpolator(xs, Fs, extrapolate=False))


def sample(spec: DistributionSpec, n: int, seed: int) -> SampleBatch:
    """Draw ``n`` i.i.d. values by inverse-CDF sampling.

    The CDF is tabulated on 4096 points spanning the ``1e-10`` quantile range
    and interpolated by a monotone cubic.  Each uniform is first bracketed
    by table cells, then the interpolated CDF is inverted by bisection inside
    the cell.  The result depends only on ``(spec, n, seed)``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    table = _cdf_table(spec)
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    u = np.clip(u, table.F[0], table.F[-1])
    idx = np.clip(np.searchsorted(table.F, u, side="right") - 1, 0, table.x.size - 2)
    lo = table.x[idx].copy()
    hi = table.x[idx + 1].copy()
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = table.interp(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return SampleBatch(0.5 * (lo + hi), int(seed), spec)


# ---------------------------------------------------------------------------
# Moments.


_SHIFTABLE = {
    (Family.SinhHat, Scale.Half, 1.0): 0.5,
    (Family.SinhHat, Scale.Half, 2.0): 1.0,
    (Family.CoshHat, Scale.Half, 1.0): 0.5,
    (Family.CoshHat, Scale.Half, 2.0): 1.0,
}


def pdf_complex(spec: DistributionSpec, z):
    """Analytic continuation of a closed-form half-scale density to complex ``z``.

    Available for sinh(1)/2, sinh(2)/2 (analytic for ``|Im z| < 1/2`` and
    ``< 1``), cosh(1)/2 and cosh(2)/2 (``|Im z| < 1/2`` and ``< 1``).
    """
    key = (spec.family, spec.scale, spec.order)
    if key not in _SHIFTABLE:
        raise DomainError(f"no complex continuation for {spec.label}")
    z = np.asarray(z, dtype=complex)
    w = _PI * z
    if spec.family is Family.SinhHat:
        if spec.order == 1.0:
            return 0.5 * _PI / np.cosh(w) ** 2
        return _PI * (w / np.tanh(w) - 1.0) / np.sinh(w) ** 2
    if spec.order == 1.0:
        return 1.0 / np.cosh(w)
    return 2.0 * z / np.sinh(w)


def complex_moment(spec: DistributionSpec, s, a, tol: ToleranceSpec = DEFAULT_TOL,
                   method: str = "direct", contour_shift: float = 0.0) -> complex:
    """Induced Hurwitz zeta ``E (a + i X)^(-s)``.

    Parameters
    ----------
    spec : DistributionSpec
    s : complex
        Use ``-s`` for the positive powers ``E (a + i X)^s``.
    a : float
        Real shift, ``a > 0``.
    method : {"direct", "cosine"}
        ``"direct"`` integrates ``(a + i x)^(-s) f(x)`` with the principal
        power, folded onto ``x > 0`` for symmetric laws.  ``"cosine"`` (real
        ``s`` and symmetric laws only) integrates
        ``2 cos(s atan(x/a)) (a^2 + x^2)^(-s/2) f(x)`` over ``x > 0``.
    contour_shift : float
        If positive, integrate along ``Im x = -contour_shift`` using the
        analytic continuation of the density (see :func:`pdf_complex`).  The
        power then becomes ``(a + c + i y)^(-s)``, which stays smooth as
        ``a -> 0``.

    Raises
    ------
    DomainError
        If ``a <= 0`` or the method does not apply.
    """
    s = complex(s)
    if not a > 0.0:
        raise DomainError("complex moments need a > 0")
    if s == 0.0:
        return 1.0 + 0j
    if contour_shift:
        return complex(complex_moment_shifted(spec, s, np.array([a]), contour_shift, tol)[0])
    if method == "cosine":
        if s.imag != 0.0 or not spec.symmetric:
            raise DomainError("the cosine form needs real s and a symmetric law")
        sr = s.real

        def integrand(x):
            return 2.0 * np.cos(sr * np.arctan(x / a)) * np.exp(-0.5 * sr * np.log(a * a + x * x)) * pdf(spec, x, tol)

        res = integrate_halfline_decaying(integrand, tol, 0.9 * decay_rate(spec))
        return complex(res.value)
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    if spec.symmetric:
        def integrand(x):
            return (complex_pow_principal(a, x, s) + complex_pow_principal(a, -x, s)) * pdf(spec, x, tol)

        res = integrate_halfline_decaying(integrand, tol, 0.9 * decay_rate(spec))
        value = complex(res.value)
        return complex(value.real, 0.0) if s.imag == 0.0 else value
    return complex(_support_integral(spec, lambda x: complex_pow_principal(a, x, s), tol).value)


def complex_moment_shifted(spec: DistributionSpec, s, bases, c, tol: ToleranceSpec = DEFAULT_TOL):
    """``E (b + i X)^(-s)`` for every ``b`` in ``bases`` along ``Im x = -c``.

    ``b >= 0`` is allowed: the shifted integrand is
    ``(b + c + i y)^(-s) f(y - i c)``, analytic and bounded for ``b >= 0``.
    One vector-valued quadrature serves all bases.
    """
    s = complex(s)
    bases = np.atleast_1d(np.asarray(bases, dtype=float))
    limit = _SHIFTABLE.get((spec.family, spec.scale, spec.order))
    if limit is None:
        raise DomainError(f"no contour shift available for {spec.label}")
    if not 0.0 < c < limit:
        raise DomainError(f"contour shift must lie in (0, {limit})")
    if np.any(bases < 0.0):
        raise DomainError("bases must be >= 0")
    shifted = bases + c

    def integrand(y):
        fp = pdf_complex(spec, y - 1j * c)
        fm = pdf_complex(spec, -y - 1j * c)
        return (complex_pow_principal(shifted[None, :], y[:, None], s) * fp[:, None]
                + complex_pow_principal(shifted[None, :], -y[:, None], s) * fm[:, None])

    # A moment near zero cannot meet a relative target; measure error against E |integrand| instead.
    rate = 0.8 * decay_rate(spec)
    scale = integrate_halfline_decaying(lambda y: np.abs(integrand(y)), ToleranceSpec(1e-3, 1e-3), rate,
                                        raise_on_failure=False).value
    floor = float(np.max(np.atleast_1d(scale))) * tol.rel_tol
    inner_tol = ToleranceSpec(min(max(tol.abs_tol, floor), 0.5), tol.rel_tol, tol.max_evaluations)
    res = integrate_halfline_decaying(integrand, inner_tol, rate)
    return np.atleast_1d(res.value)


def _support_integral(spec, weight, tol):
    lo, hi = support(spec)
    if math.isfinite(hi):
        pts = tuple(float(k) for k in range(1, int(hi)))
        return integrate_finite(lambda x: weight(x) * pdf(spec, x, tol), lo, hi, tol, points=pts)
    return integrate_halfline_decaying(lambda x: weight(x) * pdf(spec, x, tol), tol,
                                       0.9 * decay_rate(spec), lo=lo)


def abs_moment(spec: DistributionSpec, s, tol: ToleranceSpec = DEFAULT_TOL) -> float:
    """``E |X|^s`` for real ``s > -1`` by Mellin-type quadrature.

    Raises
    ------
    SingularityError
        If ``s <= -1`` (the moment diverges for every law with a positive
        density at the origin).
    """
    s = float(s)
    if s <= -1.0:
        raise SingularityError("E|X|^s diverges for s <= -1")
    lo, hi = support(spec)
    if math.isfinite(hi):
        res = integrate_finite(lambda x: np.abs(x) ** s * pdf(spec, x, tol), lo, hi, tol,
                               points=tuple(float(k) for k in range(1, int(hi))))
        return float(res.value)
    res = mellin_halfline(lambda x: pdf(spec, x, tol), s + 1.0, tol, decay_hint=0.9 * decay_rate(spec))
    factor = 2.0 if spec.symmetric else 1.0
    return factor * float(np.real(res.value))


def fourier_transform(spec: DistributionSpec, theta, tol: ToleranceSpec = DEFAULT_TOL) -> float:
    """``int cos(theta x) pdf(x) dx`` of a symmetric law by quadrature."""
    if not spec.symmetric:
        raise DomainError("fourier_transform is for symmetric laws")
    theta = float(theta)
    period = 2.0 * _PI / abs(theta) if theta else None

    def integrand(x):
        return 2.0 * np.cos(theta * x) * pdf(spec, x, tol)

    res = integrate_halfline_decaying(integrand, tol, 0.9 * decay_rate(spec), period=period)
    return float(res.value)


def total_mass(spec: DistributionSpec, tol: ToleranceSpec = DEFAULT_TOL) -> QuadratureResult:
    """``int pdf`` over the support by quadrature (a normalization check)."""
    if spec.symmetric:
        return integrate_halfline_decaying(lambda x: 2.0 * pdf(spec, x, tol), tol, 0.9 * decay_rate(spec))
    return _support_integral(spec, np.ones_like, tol)


# ---------------------------------------------------------------------------
# Expectations over the uniform-sum laws.


def _irwin_hall_neg_power(n, c, s):
    k = np.arange(n + 1)
    weights = (-1.0) ** k * special.comb(n, k)
    base = c[:, None] + k[None, :]
    logb = np.log(base)
    j = int(round(s.real))
    if 1 <= j <= n and abs(s - j) < 1e-4:
        eps = s - j
        w = weights[None, :] * base ** (n - j)
        num = 0j
        for m in range(1, 5):
            num = num + np.sum(w * (-logb) ** m, axis=1) * eps ** (m - 1) / math.factorial(m)
        den = 1.0 + 0j
        for i in range(1, n + 1):
            if i != j:
                den *= s - i
        return num / den
    num = np.sum(weights[None, :] * np.exp((n - s) * logb), axis=1)
    den = 1.0 + 0j
    for i in range(1, n + 1):
        den *= s - i
    return num / den


def aux_expectation_neg_power(aux: DistributionSpec, c, s):
    """``E (c + W)^(-s)`` for ``W`` uniform, triangular on (0, 2) or Irwin-Hall.

    For ``W = U_1 + ... + U_n`` the Laplace transform ``((1 - e^-x)/x)^n``
    gives the finite difference

        E (c + W)^(-s) = sum_k (-1)^k C(n, k) (c + k)^(n - s) / prod_{j=1..n} (s - j).

    The zeros of the denominator at ``s = 1..n`` are removable; within
    ``1e-4`` of them the quotient is replaced by the ratio of Taylor
    expansions, whose numerator coefficients carry powers of ``log(c + k)``.

    Parameters
    ----------
    aux : DistributionSpec
        ``UniformU1``, ``TriangularV_on02`` or ``IrwinHall``.
    c : float or array_like
        Shift(s), all ``> 0``.
    s : complex

    Raises
    ------
    DomainError
        For other laws or ``c <= 0``.
    """
    if aux.family is Family.UniformU1:
        n = 1
    elif aux.family is Family.TriangularV_on02:
        n = 2
    elif aux.family is Family.IrwinHall:
        n = int(aux.order)
    else:
        raise DomainError(f"no closed form for {aux.label}")
    scalar = np.ndim(c) == 0
    c_arr = np.atleast_1d(np.asarray(c, dtype=float))
    if np.any(~(c_arr > 0.0)):
        raise DomainError("shift c must be > 0")
    out = _irwin_hall_neg_power(n, c_arr, complex(s))
    return complex(out[0]) if scalar else out


def aux_expectation_quadrature(aux: DistributionSpec, c, s, tol: ToleranceSpec = DEFAULT_TOL) -> complex:
    """``E (c + W)^(-s)`` by quadrature against the density of ``W`` (an oracle)."""
    if not c > 0.0:
        raise DomainError("shift c must be > 0")
    s = complex(s)
    return complex(_support_integral(aux, lambda w: np.exp(-s * np.log(c + w)), tol).value)
