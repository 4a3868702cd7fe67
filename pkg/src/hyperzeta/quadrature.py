"""Adaptive quadrature for the integral shapes used throughout the package.

Every engine here evaluates its integrand on whole arrays of nodes at once:
an integrand is a callable ``f(x)`` taking a 1-D float array and returning
either an array of the same length or an array of shape ``(len(x), m)``.  The
second form integrates ``m`` functions simultaneously over a shared adaptive
partition, which is how densities defined by Fourier inversion are tabulated
at many points in one call.

The workhorse is a globally adaptive 21-point Gauss-Kronrod rule.  It never
evaluates the integrand at interval end points, so integrable end point
singularities (``log y`` at 0, ``x^(s-1)`` with ``0 < Re s < 1``) are handled
by bisection alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from hyperzeta.errors import ConvergenceError, DomainError, IntegrandError, SingularityError

Integrand = Callable[[np.ndarray], np.ndarray]

_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980528253,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651146,
])

# Nodes on [-1, 1] in increasing order with matching Kronrod / Gauss weights.
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KW = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_GW = np.zeros(21)
_GW[[1, 3, 5, 7, 9]] = _WG
_GW[[19, 17, 15, 13, 11]] = _WG

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny

_GL20_X, _GL20_W = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class ToleranceSpec:
    """Requested accuracy and evaluation budget for one integral."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_evaluations: int = 400_000

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {value!r}")
        if self.max_evaluations <= 0:
            raise DomainError("max_evaluations must be positive")

    def scaled(self, factor):
        """Copy with both tolerances multiplied by ``factor`` (clipped below 1)."""
        return ToleranceSpec(
            min(self.abs_tol * factor, 0.5),
            min(self.rel_tol * factor, 0.5),
            self.max_evaluations,
        )


DEFAULT_TOL = ToleranceSpec()


@dataclass
class QuadratureResult:
    """Value, error estimate and cost of one (possibly vector-valued) integral."""

    value: complex | float | np.ndarray
    abs_error_estimate: float | np.ndarray
    evaluations: int
    converged: bool


def _evaluate(f, x):
    y = np.asarray(f(x))
    if y.ndim == 0:
        y = np.broadcast_to(y, x.shape)
    if y.shape[0] != x.shape[0]:
        raise IntegrandError(f"integrand returned shape {y.shape} for {x.shape[0]} nodes")
    if np.any(np.isnan(y)):
        raise IntegrandError("integrand returned NaN")
    return y


def _gk21(f, a, b):
    """Kronrod values and QUADPACK-style error estimates on each ``[a_i, b_i]``."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = center[:, None] + half[:, None] * _NODES[None, :]
    y = _evaluate(f, x.ravel())
    y = y.reshape((a.size, 21) + y.shape[1:])
    extra = (1,) * (y.ndim - 2)
    hk = half.reshape((-1,) + extra)
    kw = _KW.reshape((1, 21) + extra)
    gw = _GW.reshape((1, 21) + extra)
    resk = np.sum(kw * y, axis=1)
    resg = np.sum(gw * y, axis=1)
    mean = 0.5 * resk
    resabs = np.sum(kw * np.abs(y), axis=1) * np.abs(hk)
    resasc = np.sum(kw * np.abs(y - mean[:, None]), axis=1) * np.abs(hk)
    err = np.abs((resk - resg) * hk)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    err = np.where(resabs > _TINY / (50.0 * _EPS), np.maximum(50.0 * _EPS * resabs, err), err)
    return resk * hk, err


def adaptive_integrate(f: Integrand, breaks, tol: ToleranceSpec = DEFAULT_TOL) -> QuadratureResult:
    """Globally adaptive Gauss-Kronrod integration over ``[breaks[0], breaks[-1]]``.

    ``breaks`` is the initial partition.  Each pass bisects the intervals that
    carry the largest share of the error until the summed error estimate is
    below ``max(abs_tol, rel_tol * |value|)`` for every output component.
    """
    breaks = np.asarray(breaks, dtype=float)
    if breaks.ndim != 1 or breaks.size < 2 or np.any(np.diff(breaks) <= 0.0):
        raise DomainError("integration limits must be strictly increasing")
    lo = breaks[:-1].copy()
    hi = breaks[1:].copy()
    vals, errs = _gk21(f, lo, hi)
    nevals = 21 * lo.size
    converged = False
    while True:
        total = vals.sum(axis=0)
        total_err = errs.sum(axis=0)
        target = np.maximum(tol.abs_tol, tol.rel_tol * np.abs(total))
        if np.all(total_err <= target):
            converged = True
            break
        if nevals >= tol.max_evaluations:
            break
        share = (errs / target).reshape(lo.size, -1).max(axis=1)
        width = hi - lo
        splittable = width > 8.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + _TINY
        share = np.where(splittable, share, 0.0)
        if not np.any(share > 0.0):
            break
        order = np.argsort(-share, kind="stable")
        cumulative = np.cumsum(share[order])
        limit = 0.5 * cumulative[-1]
        n_split = int(np.searchsorted(cumulative, limit) + 1)
        budget = max(1, (tol.max_evaluations - nevals) // 42)
        n_split = min(n_split, budget)
        pick = np.sort(order[:n_split])
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        new_vals, new_errs = _gk21(f, new_lo, new_hi)
        nevals += 21 * new_lo.size
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
        order = np.argsort(lo, kind="stable")
        lo, hi, vals, errs = lo[order], hi[order], vals[order], errs[order]
    total = vals.sum(axis=0)
    total_err = errs.sum(axis=0)
    return QuadratureResult(_scalarize(total), _scalarize(total_err), nevals, converged)


def _scalarize(v):
    v = np.asarray(v)
    if v.ndim == 0:
        return complex(v) if np.iscomplexobj(v) else float(v)
    return v


def _check(result, what, raise_on_failure):
    if raise_on_failure and not result.converged:
        raise ConvergenceError(f"{what} did not converge (error estimate {np.max(result.abs_error_estimate):.3g})", result)
    return result


def integrate_finite(f: Integrand, lo: float, hi: float, tol: ToleranceSpec = DEFAULT_TOL,
                     points=(), raise_on_failure=True) -> QuadratureResult:
    """Integrate ``f`` over the open interval ``(lo, hi)``.

    ``points`` are optional interior break points (kinks, peaks).  The end
    points are never evaluated.

    Raises
    ------
    ConvergenceError
        If the budget is exhausted (unless ``raise_on_failure`` is false).
    """
    if not lo < hi:
        raise DomainError("integrate_finite needs lo < hi")
    inner = sorted(p for p in points if lo < p < hi)
    res = adaptive_integrate(f, [lo, *inner, hi], tol)
    return _check(res, "finite integral", raise_on_failure)


def truncation_point(f: Integrand, lo: float, decay_hint: float, abs_tol: float, span=None):
    """Point ``T`` beyond which ``|f| <= C exp(-decay_hint x)`` leaves < abs_tol/2.

    ``C`` is the largest sampled value of ``|f(x)| exp(decay_hint (x - lo))``
    on ``(lo, lo + span]``.  Returns ``(T, tail_bound)``; ``T == lo`` when the
    integrand vanishes on all samples.

    Raises
    ------
    DomainError
        If the sampled envelope peaks at the far end of the sampling window,
        meaning the stated decay rate is not attained.
    """
    if decay_hint <= 0.0:
        raise DomainError("decay_hint must be positive")
    if span is None:
        span = 200.0 / decay_hint
    xs = lo + span * np.linspace(0.0, 1.0, 513)[1:]
    vals = np.abs(_evaluate(f, xs))
    if vals.ndim > 1:
        vals = vals.reshape(xs.size, -1).max(axis=1)
    # Samples this small cannot move the integral; they are also where
    # integrands computed by quadrature sit on their rounding floor.
    floor = 0.01 * abs_tol * decay_hint
    vals = np.where(vals > floor, vals, 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        env = vals * np.exp(decay_hint * (xs - lo))
    env = np.where(np.isfinite(env), env, np.inf)
    c_max = float(np.max(env))
    if c_max == 0.0:
        return lo, 0.0
    if not np.isfinite(c_max) or np.argmax(env) >= env.size - 8:
        raise DomainError("integrand does not decay at the stated exponential rate")
    c_max *= 2.0  # head-room for the envelope between samples
    t = lo + max(math.log(c_max / (decay_hint * 0.5 * abs_tol)) / decay_hint, 1.0)
    tail = c_max * math.exp(-decay_hint * (t - lo)) / decay_hint
    return t, tail


def _halfline_breaks(lo, hi, period=None):
    pts = [lo]
    step = 0.5
    while lo + step < hi:
        pts.append(lo + step)
        step *= 2.0
    pts.append(hi)
    breaks = np.array(pts)
    if period is not None and period > 0.0:
        n = int(math.ceil((hi - lo) / period))
        if n > len(pts):
            breaks = np.union1d(breaks, np.linspace(lo, hi, n + 1))
    return breaks


def integrate_halfline_decaying(f: Integrand, tol: ToleranceSpec = DEFAULT_TOL, decay_hint: float = 1.0,
                                lo: float = 0.0, period=None, raise_on_failure=True) -> QuadratureResult:
    """Integrate an exponentially decaying ``f`` over ``(lo, inf)``.

    The tail beyond ``T`` is dropped once the envelope bound
    ``C exp(-decay_hint x)`` guarantees it is below ``abs_tol / 2``; the bound
    is added to the reported error.  ``period`` (optional) is an oscillation
    length used to seed the initial partition.
    """
    t, tail = truncation_point(f, lo, decay_hint, tol.abs_tol)
    if t <= lo:
        sample = np.asarray(_evaluate(f, np.array([lo + 1.0])))[0]
        zero = np.zeros_like(sample)
        return QuadratureResult(_scalarize(zero), _scalarize(np.zeros(np.shape(zero))), 512, True)
    res = adaptive_integrate(f, _halfline_breaks(lo, t, period), tol)
    res.abs_error_estimate = _scalarize(np.asarray(res.abs_error_estimate) + tail)
    res.evaluations += 512
    return _check(res, "half-line integral", raise_on_failure)


def integrate_real_line_symmetric(f: Integrand, tol: ToleranceSpec = DEFAULT_TOL, decay_hint: float = 1.0,
                                  raise_on_failure=True) -> QuadratureResult:
    """``int_R f`` computed as ``int_0^inf (f(x) + f(-x)) dx``."""
    def folded(x):
        return _evaluate(f, x) + _evaluate(f, -x)

    return integrate_halfline_decaying(folded, tol, decay_hint, raise_on_failure=raise_on_failure)


def mellin_halfline(w: Integrand, s, tol: ToleranceSpec = DEFAULT_TOL, decay_hint: float = 1.0,
                    raise_on_failure=True) -> QuadratureResult:
    """Mellin transform ``int_0^inf x^(s-1) w(x) dx`` for ``Re s > 0``.

    On ``(0, 1)`` the substitution ``x = u^m`` with ``m Re(s) >= 2`` turns the
    weight ``x^(s-1)`` into the bounded ``m u^(m s - 1)``.  The remaining
    ``(1, inf)`` piece is a decaying half-line integral.
    """
    s = complex(s)
    if s.real <= 0.0:
        raise DomainError("mellin_halfline needs Re(s) > 0")
    m = 1 if s.real >= 2.0 else int(math.ceil(2.0 / s.real))

    def near(u):
        x = u ** m
        return m * np.exp((m * s - 1.0) * np.log(u)) * _evaluate(w, x)

    def far(x):
        return np.exp((s - 1.0) * np.log(x)) * _evaluate(w, x)

    head = adaptive_integrate(near, [0.0, 0.5, 1.0], tol.scaled(0.5))
    tail = integrate_halfline_decaying(far, tol.scaled(0.5), 0.75 * decay_hint, lo=1.0, raise_on_failure=False)
    value = np.asarray(head.value) + np.asarray(tail.value)
    res = QuadratureResult(
        _scalarize(value),
        _scalarize(np.asarray(head.abs_error_estimate) + np.asarray(tail.abs_error_estimate)),
        head.evaluations + tail.evaluations,
        head.converged and tail.converged,
    )
    return _check(res, "Mellin integral", raise_on_failure)


def _euler_sum(terms):
    """Sum an alternating tail by repeated averaging of its partial sums.

    ``terms`` has the series index on the last axis.  Returns the accelerated
    sum and the change made by the final averaging step.
    """
    partial = np.cumsum(terms, axis=-1)
    prev = partial[..., -1]
    while partial.shape[-1] > 1:
        prev = partial[..., -1]
        partial = 0.5 * (partial[..., 1:] + partial[..., :-1])
    est = partial[..., 0]
    return est, np.abs(est - prev)


def _gl_panels(g, x, edges):
    """Gauss-Legendre (20 points) sums of ``cos(x u) g(u)`` over panels.

    ``edges`` has shape ``(n_x, n_panels + 1)``; returns ``(n_x, n_panels)``.
    """
    left = edges[:, :-1]
    right = edges[:, 1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    u = mid[..., None] + half[..., None] * _GL20_X
    gu = _evaluate(g, u.ravel()).reshape(u.shape)
    return np.sum(_GL20_W * np.cos(x[:, None, None] * u) * gu, axis=-1) * half


def fourier_cosine_halfline(g: Integrand, x, tol: ToleranceSpec = DEFAULT_TOL, decay: str = "exponential",
                            rate: float = 1.0, head: float = 30.0, n_half_periods: int = 48,
                            raise_on_failure=True) -> QuadratureResult:
    """Compute ``(1/pi) int_0^inf cos(x u) g(u) du`` for a scalar or array ``x``.

    Parameters
    ----------
    g : callable
        Vectorized, real, continuous on ``(0, inf)``.
    x : float or array_like
        Evaluation points; the result is even in ``x``.
    decay : {"exponential", "algebraic"}
        ``"exponential"``: ``|g(u)| <= C exp(-rate u)``; the integral is
        truncated and integrated adaptively.  ``"algebraic"``:
        ``g(u) ~ C u^(-rate)`` for ``u >= head``; the range beyond ``head`` is
        cut at consecutive zeros of ``cos(x u)`` and the alternating sequence
        of half-period integrals is summed by Euler's transformation.

    Raises
    ------
    SingularityError
        ``decay="algebraic"``, ``rate <= 1`` and some ``x == 0``: the integral
        diverges.
    """
    scalar = np.ndim(x) == 0
    xs = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    if decay == "exponential":
        xmax = float(xs.max()) if xs.size else 0.0
        period = 2.0 * math.pi / xmax if xmax > 0 else None

        def integrand(u):
            return np.cos(np.outer(u, xs)) * _evaluate(g, u)[:, None]

        res = integrate_halfline_decaying(integrand, tol.scaled(math.pi), rate, period=period,
                                          raise_on_failure=False)
        value = np.asarray(res.value) / math.pi
        err = np.asarray(res.abs_error_estimate) / math.pi
        res = QuadratureResult(value, err, res.evaluations, res.converged)
    elif decay == "algebraic":
        res = _fourier_cosine_algebraic(g, xs, tol, rate, head, n_half_periods)
    else:
        raise DomainError(f"unknown decay kind {decay!r}")
    if scalar:
        res = QuadratureResult(float(np.asarray(res.value)[0]), float(np.asarray(res.abs_error_estimate)[0]),
                               res.evaluations, res.converged)
    return _check(res, "Fourier cosine integral", raise_on_failure)


def _fourier_cosine_algebraic(g, xs, tol, power, head, n_half):
    zero = xs == 0.0
    if np.any(zero) and power <= 1.0:
        raise SingularityError("cosine integral of a u^-p tail with p <= 1 diverges at x = 0")
    xmax = float(xs.max()) if xs.size else 0.0
    n_init = max(4, int(math.ceil(head * xmax / math.pi)))

    def integrand(u):
        return np.cos(np.outer(u, xs)) * _evaluate(g, u)[:, None]

    head_res = adaptive_integrate(integrand, np.linspace(0.0, head, n_init + 1), tol.scaled(0.5 * math.pi))
    value = np.array(head_res.value, dtype=float)
    err = np.array(head_res.abs_error_estimate, dtype=float)
    evaluations = head_res.evaluations

    pos = ~zero
    if np.any(pos):
        xp = xs[pos]
        k0 = np.ceil(xp * head / math.pi - 0.5)
        u_first = (k0 + 0.5) * math.pi / xp
        u_first = np.maximum(u_first, head)
        # Geometric panels bridge head -> first zero (less than half a period).
        n_geo = 24
        ratio = np.linspace(0.0, 1.0, n_geo + 1)
        edges = head * (u_first / head)[:, None] ** ratio[None, :]
        bridge = _gl_panels(g, xp, edges).sum(axis=1)
        # Half-period panels between consecutive zeros.
        step = math.pi / xp
        tail_edges = u_first[:, None] + step[:, None] * np.arange(n_half + 1)[None, :]
        terms = _gl_panels(g, xp, tail_edges)
        tail, tail_err = _euler_sum(terms)
        value[pos] += bridge + tail
        err[pos] += tail_err + 1e-15 * np.abs(bridge)
        evaluations += 20 * (n_geo + n_half) * xp.size
    if np.any(zero):
        # u = head / v maps (head, inf) onto (0, 1); the integrand ~ v^(p-2) is integrable.
        def folded(v):
            u = head / v
            return _evaluate(g, u) * u / v

        far = adaptive_integrate(folded, [0.0, 1.0], tol.scaled(0.5 * math.pi))
        value[zero] += float(far.value)
        err[zero] += float(far.abs_error_estimate)
        evaluations += far.evaluations
    value /= math.pi
    err /= math.pi
    target = np.maximum(tol.abs_tol, tol.rel_tol * np.abs(value))
    converged = head_res.converged and bool(np.all(err <= 10.0 * target))
    return QuadratureResult(value, err, evaluations, converged)
