"""Registry of identities, grid execution and residual reports.

Every identity is an :class:`IdentityCheck`: an evaluator that returns the
two sides at a :class:`Point`, a :class:`ParameterGrid` filtered by a domain
predicate, and a tolerance.  A point passes when
``min(abs_residual, rel_residual) <= tolerance``.  Numerical failures at a
point are recorded with their reason; they never abort a run.

Reports carry no timing information, so the serialized output of a run is
identical across repetitions and across degrees of parallelism.
"""

from __future__ import annotations

import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from hyperzeta import distributions as dist
from hyperzeta import master, moments
from hyperzeta.errors import DomainError, HyperzetaError
from hyperzeta.moments import Kind, MomentFunctionKind
from hyperzeta.numerics import bernoulli_number_exact
from hyperzeta.zeta import hurwitz_zeta

DEFAULT_TOLERANCE = 1e-7
TANH2_TOLERANCE = 1e-6

S_GRID = (-1.0, -0.5, 0.0, 0.5, 2.0, 3.5, 2 + 1j, 3 + 2j)
A_GRID = (0.6, 1.0, 1.5, 3.0)
ALPHA_GRID = (0.5, 1.0, 2.0, 3.0)
STAR_S_GRID = S_GRID + (5.5,)

LAWS = {
    "sinh(1)/2": dist.sinh_law(1),
    "sinh(2)/2": dist.sinh_law(2),
    "cosh(1)/2": dist.cosh_law(1),
    "cosh(2)/2": dist.cosh_law(2),
    "tanh(1)/2": dist.tanh_law(1),
    "normal": dist.STD_NORMAL,
}


@dataclass(frozen=True)
class Point:
    """One grid point; unused coordinates are ``None``."""

    s: complex | None = None
    a: float | None = None
    alpha: float | None = None
    x: float | None = None
    law: str | None = None


@dataclass(frozen=True)
class ParameterGrid:
    """Cartesian product of parameter values.

    ``x`` is a generic extra coordinate (a density argument, a time ``t`` or
    a second order ``beta``) and ``laws`` holds keys of :data:`LAWS`.
    """

    s_values: tuple = (None,)
    a_values: tuple = (None,)
    alpha_values: tuple = (None,)
    x_values: tuple = (None,)
    laws: tuple = (None,)

    def points(self, domain: Callable[[Point], bool] | None = None) -> list[Point]:
        axes = (self.s_values, self.a_values, self.alpha_values, self.x_values, self.laws)
        if any(len(axis) == 0 for axis in axes):
            raise DomainError("parameter grid has an empty axis")
        out = []
        for s, a, alpha, x, law in itertools.product(*axes):
            p = Point(None if s is None else complex(s), a, alpha, x, law)
            if domain is None or domain(p):
                out.append(p)
        if not out:
            raise DomainError("no grid point lies in the identity's domain")
        return out


@dataclass(frozen=True)
class IdentityCheck:
    """An identity ``lhs == rhs`` to be certified on a grid.

    Attributes
    ----------
    id : str
        Registry key.
    evaluator : str
        Key of :data:`EVALUATORS`; maps a :class:`Point` to ``(lhs, rhs)``.
    grid : ParameterGrid
    tolerance : float
    anchor : str
        The identity in formula form.
    domain : callable, optional
        Predicate selecting the grid points where the identity is claimed.
    """

    id: str
    evaluator: str
    grid: ParameterGrid
    tolerance: float
    anchor: str
    domain: Callable[[Point], bool] | None = None

    def __post_init__(self):
        if not self.anchor:
            raise DomainError(f"check {self.id!r} has no anchor")
        if self.evaluator not in EVALUATORS:
            raise DomainError(f"unknown evaluator {self.evaluator!r}")


@dataclass(frozen=True)
class PointRecord:
    point: Point
    lhs: complex | None
    rhs: complex | None
    abs_residual: float
    rel_residual: float
    passed: bool
    reason: str = ""


@dataclass(frozen=True)
class CheckReport:
    id: str
    tolerance: float
    records: tuple

    @property
    def n_points(self):
        return len(self.records)

    @property
    def n_passed(self):
        return sum(r.passed for r in self.records)

    @property
    def passed(self):
        return self.n_passed == self.n_points

    @property
    def max_abs_residual(self):
        return max(r.abs_residual for r in self.records)

    @property
    def max_rel_residual(self):
        return max(r.rel_residual for r in self.records)


@dataclass(frozen=True)
class SuiteReport:
    reports: tuple = field(default_factory=tuple)

    @property
    def n_points(self):
        return sum(r.n_points for r in self.reports)

    @property
    def n_passed(self):
        return sum(r.n_passed for r in self.reports)

    @property
    def passed(self):
        return all(r.passed for r in self.reports)


def residuals(lhs, rhs):
    """``(|lhs - rhs|, |lhs - rhs| / |rhs|)``; the relative one is 0 when both vanish."""
    diff = abs(complex(lhs) - complex(rhs))
    scale = abs(complex(rhs))
    if scale > 0.0:
        rel = diff / scale
    else:
        rel = 0.0 if diff == 0.0 else math.inf
    return diff, rel


def evaluate_point(check: IdentityCheck, point: Point) -> PointRecord:
    fn = EVALUATORS[check.evaluator]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lhs, rhs = fn(point)
        lhs, rhs = complex(lhs), complex(rhs)
    except (HyperzetaError, ArithmeticError, ValueError) as exc:
        return PointRecord(point, None, None, math.inf, math.inf, False, f"{type(exc).__name__}: {exc}")
    abs_res, rel_res = residuals(lhs, rhs)
    if not (math.isfinite(lhs.real) and math.isfinite(lhs.imag) and math.isfinite(rhs.real)
            and math.isfinite(rhs.imag)):
        return PointRecord(point, lhs, rhs, math.inf, math.inf, False, "non-finite value")
    passed = min(abs_res, rel_res) <= check.tolerance
    return PointRecord(point, lhs, rhs, abs_res, rel_res, passed)


def run_check(check: IdentityCheck | str) -> CheckReport:
    """Evaluate both sides of ``check`` at every point of its grid.

    Raises
    ------
    KeyError
        If ``check`` is an unknown id.
    DomainError
        If the grid is empty after domain filtering.
    """
    if isinstance(check, str):
        check = REGISTRY[check]
    points = check.grid.points(check.domain)
    return CheckReport(check.id, check.tolerance, tuple(evaluate_point(check, p) for p in points))


def run_suite(ids=None, jobs: int = 1) -> SuiteReport:
    """Run the checks in ``ids`` (all registered ones by default).

    With ``jobs > 1`` checks run in worker processes; reports come back in
    the order of ``ids`` regardless.
    """
    ids = list(REGISTRY) if ids is None else list(ids)
    for key in ids:
        if key not in REGISTRY:
            raise KeyError(f"unknown identity {key!r}")
    if jobs <= 1 or len(ids) <= 1:
        return SuiteReport(tuple(run_check(key) for key in ids))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        reports = tuple(pool.map(run_check, ids))
    return SuiteReport(reports)


# ---------------------------------------------------------------------------
# Evaluators: Point -> (lhs, rhs).


def _kind_pair(tag, alpha=1.0, other="series"):
    """``(other side, integral side)`` for a moment function kind."""

    def evaluate(p: Point):
        kind = MomentFunctionKind.of(tag, alpha if p.alpha is None else p.alpha)
        rhs = moments.integral_value(kind, p.s, p.a)
        if other == "series":
            lhs = moments.series_value(kind, p.s, p.a)
        else:
            lhs = moments.closed_form_value(kind, p.s, p.a)
        return lhs, rhs

    return evaluate


def _zeta_u2(p):
    lhs = 1.0 if p.s == 1.0 else (p.s - 1.0) * hurwitz_zeta(p.s, p.a)
    return lhs, moments.zeta_u2_representation(p.s, p.a)


def _bernoulli_numbers(p):
    n = int(p.s.real)
    return float(bernoulli_number_exact(n)), moments.gen_bernoulli(p.s, 1.0, "functional")


def _bernoulli_direct(p):
    return moments.gen_bernoulli(p.s, p.a, "functional"), moments.gen_bernoulli(p.s, p.a, "direct")


def _bernoulli_u2(p):
    return moments.gen_bernoulli(p.s, p.a, "functional"), moments.gen_bernoulli(p.s, p.a, "u2")


def _h1_tail(p):
    upper = 1.0 - float(dist.cdf(dist.sinh_law(2, dist.Scale.Full), p.x / math.pi))
    return float(dist.density_h(1.0, p.x)), upper


def _logistic(p):
    return moments.logistic_moment_identity(p.s.real, p.a)


def _cf_mellin(p):
    return master.master_mellin_check(master.MasterCheckCase(LAWS[p.law], p.s, p.a))


def _cf_series(p):
    res = master.master_series_check(LAWS[p.law], p.a, p.x, n_max=master.MAX_TERMS)
    return res.lhs, res.rhs


def _laplace(p):
    return master.laplace_variant_check(p.alpha, p.s, p.a)


def _interchange(p):
    return master.gamma_interchange_check(p.alpha, p.x)


def _cf_round_trip(family):
    def evaluate(p: Point):
        spec = dist.DistributionSpec(family, p.alpha)
        return complex(dist.cf(spec, p.x)), dist.fourier_transform(spec, p.x)

    return evaluate


EVALUATORS: dict[str, Callable[[Point], tuple]] = {
    "jensen": lambda p: moments.jensen_pair(p.s, p.a),
    "zeta_u2": _zeta_u2,
    "bernoulli_numbers": _bernoulli_numbers,
    "bernoulli_direct": _bernoulli_direct,
    "bernoulli_u2": _bernoulli_u2,
    "mellin_h": lambda p: moments.mellin_h_identity(p.s, p.a),
    "h1_tail": _h1_tail,
    "S2_series": _kind_pair(Kind.S2),
    "S2_closed": _kind_pair(Kind.S2, other="closed"),
    "C1_series": _kind_pair(Kind.C1),
    "C1_closed": _kind_pair(Kind.C1, other="closed"),
    "C2_series": _kind_pair(Kind.C2),
    "C2_closed": _kind_pair(Kind.C2, other="closed"),
    "T1_series": _kind_pair(Kind.T1),
    "T1_closed": _kind_pair(Kind.T1, other="closed"),
    "T2_series": _kind_pair(Kind.T2),
    "T2_closed": _kind_pair(Kind.T2, other="closed"),
    "logistic": _logistic,
    "cf_mellin": _cf_mellin,
    "cf_series": _cf_series,
    "laplace": _laplace,
    "interchange": _interchange,
    "sinh_cf": _cf_round_trip(dist.Family.SinhHat),
    "cosh_cf": _cf_round_trip(dist.Family.CoshHat),
    "tanh_cf": _cf_round_trip(dist.Family.TanhHat),
    "SStar_series": _kind_pair(Kind.SStar),
    "SStar_closed": _kind_pair(Kind.SStar, other="closed"),
    "CStar_series": _kind_pair(Kind.CStar),
    "CStar_closed": _kind_pair(Kind.CStar, other="closed"),
    "TStar_series": _kind_pair(Kind.TStar),
}


# ---------------------------------------------------------------------------
# Domain predicates.


def _series_domain(tag, a_min, integer_alpha=False):
    def domain(p: Point):
        alpha = 1.0 if p.alpha is None else p.alpha
        if integer_alpha and alpha != int(alpha):
            return False
        kind = MomentFunctionKind.of(tag, alpha)
        return p.s.real > moments.series_threshold(kind) and p.a > max(a_min, moments.integral_threshold(kind))

    return domain


def _closed_domain(tag, poles=()):
    def domain(p: Point):
        alpha = 1.0 if p.alpha is None else p.alpha
        if alpha != int(alpha):
            return False
        kind = MomentFunctionKind.of(tag, alpha)
        star_poles = range(1, int(alpha) + 1) if tag is Kind.SStar else ()
        if any(p.s == q for q in tuple(poles) + tuple(star_poles)):
            return False
        return p.a > moments.integral_threshold(kind)

    return domain


def _a_above(threshold, strict=True):
    if strict:
        return lambda p: p.a > threshold
    return lambda p: p.a >= threshold


def _build_registry():
    S, A = S_GRID, A_GRID
    x_cf = (0.0, 0.5, 1.0, 2.5)
    checks = [
        IdentityCheck("jensen-hurwitz", "jensen", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "(s-1) zeta(s,a) = E(a-1/2+iX)^(1-s), X ~ sinh(1)/2", _a_above(0.5)),
        IdentityCheck("zeta-u2", "zeta_u2", ParameterGrid(S, (1.0, 1.5, 3.0)), DEFAULT_TOLERANCE,
                      "(s-1) zeta(s,a) = E(a-1+U2+iX)^(-s)/2 + (a-1) E(a-1+U1+iX)^(-s), X ~ sinh(2)/2",
                      _a_above(1.0, strict=False)),
        IdentityCheck("bernoulli-numbers", "bernoulli_numbers",
                      ParameterGrid(tuple(float(2 * n) for n in range(1, 7)), (1.0,)), 1e-9,
                      "B(2n, 1) = B_2n"),
        IdentityCheck("bernoulli-sinh1", "bernoulli_direct", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "B(s,a) = E(a-1/2+iX)^s, X ~ sinh(1)/2", _a_above(0.5)),
        IdentityCheck("bernoulli-u2", "bernoulli_u2", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "B(s,a) = E(a-1+U2+iX)^(s-1)/2 + (a-1) E(a-1+U1+iX)^(s-1), X ~ sinh(2)/2",
                      _a_above(1.0, strict=False)),
        IdentityCheck("mellin-h", "mellin_h", ParameterGrid((0.5, 1.0, 1.5, 2.0, 2.5, 3.5, 2 + 1j, 3 + 2j),
                                                            (1.0, 1.5, 3.0)), DEFAULT_TOLERANCE,
                      "int_0^inf x^(s-1) h_a(x) dx = (s-1) Gamma(s) zeta(s,a)"),
        IdentityCheck("h1-tail", "h1_tail", ParameterGrid(x_values=(0.5, 1.0, 2.0, 4.0)), 1e-6,
                      "h_1(x) = P(pi sinh(2) > x)"),
        IdentityCheck("sinh2-moment", "S2_series", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "S2(s,a) = E(a+iX)^(2-s) / ((s-1)(s-2)), X ~ sinh(2)/2", _series_domain(Kind.S2, 0.0)),
        IdentityCheck("sinh2-moment-continued", "S2_closed", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "zeta(s-1,a) - a zeta(s,a) = E(a+iX)^(2-s) / ((s-1)(s-2))",
                      _closed_domain(Kind.S2, poles=(1.0, 2.0))),
        IdentityCheck("cosh1-moment", "C1_series", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "C1(s,a) = E(a-1/2+iX)^(-s) / 2, X ~ cosh(1)/2", _series_domain(Kind.C1, 0.5)),
        IdentityCheck("cosh1-moment-continued", "C1_closed", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "eta(s,a) = E(a-1/2+iX)^(-s) / 2", _closed_domain(Kind.C1)),
        IdentityCheck("cosh2-moment", "C2_series", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "C2(s,a) = E(a-1+iX)^(-s) / 4, X ~ cosh(2)/2", _series_domain(Kind.C2, 1.0)),
        IdentityCheck("cosh2-moment-continued", "C2_closed", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "eta(s-1,a) + (1-a) eta(s,a) = E(a-1+iX)^(-s) / 4", _closed_domain(Kind.C2)),
        IdentityCheck("tanh1-moment", "T1_series", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "T1(s,a) = E(a+iX)^(-s), X ~ tanh(1)/2", _series_domain(Kind.T1, 0.0)),
        IdentityCheck("tanh1-moment-continued", "T1_closed", ParameterGrid(S, A), DEFAULT_TOLERANCE,
                      "2 (2 eta(s-1,a) - a^(1-s)) / (s-1) = E(a+iX)^(-s)", _closed_domain(Kind.T1)),
        IdentityCheck("tanh2-moment", "T2_series", ParameterGrid(S, A), TANH2_TOLERANCE,
                      "T2(s,a) = E(a+iX)^(-s), X ~ tanh(2)/2", _series_domain(Kind.T2, 0.0)),
        IdentityCheck("tanh2-moment-continued", "T2_closed", ParameterGrid(S, A), TANH2_TOLERANCE,
                      "4 (a^(2-s) + 4 eta(s-3,a) - 4a eta(s-2,a)) / ((s-1)(s-2)) = E(a+iX)^(-s)",
                      _closed_domain(Kind.T2)),
        IdentityCheck("logistic-abs-moment", "logistic",
                      ParameterGrid((-0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 3.5), A), DEFAULT_TOLERANCE,
                      "int |x|^s g_a(x) dx = 2 Gamma(s+1) eta(s,a)", _a_above(0.5)),
        IdentityCheck("cf-mellin", "cf_mellin",
                      ParameterGrid((0.5, 1.0, 2.0, 3.5, 2 + 1j), (0.7, 1.0, 3.0), laws=tuple(LAWS)),
                      DEFAULT_TOLERANCE, "int_0^inf t^(s-1) e^(-at) phi_X(t) dt = Gamma(s) E(a+iX)^(-s)"),
        IdentityCheck("cf-power-series", "cf_series",
                      ParameterGrid(a_values=(0.5, 1.0, 2.0), x_values=(0.0, 0.25, 0.5, 1.0),
                                    laws=("sinh(1)/2", "cosh(1)/2", "tanh(1)/2", "normal")),
                      1e-10, "e^(-at) phi_X(t) = sum_n (-t)^n E(a+iX)^n / n!", _in_series_window),
        IdentityCheck("laplace-gamma", "laplace",
                      ParameterGrid((0.5, 1.0, 2.0, 3.5, 2 + 1j), (0.7, 1.0, 3.0), (0.5, 1.0, 2.0, 3.0)),
                      DEFAULT_TOLERANCE,
                      "int_0^inf x^(s-1) e^(-ax) (1+x)^(-alpha) dx = Gamma(s) E(a+Y)^(-s), Y ~ gamma(alpha)"),
        IdentityCheck("gamma-interchange", "interchange",
                      ParameterGrid(alpha_values=tuple(np.geomspace(0.25, 4.0, 5)),
                                    x_values=tuple(np.geomspace(0.25, 4.0, 5))), 1e-9,
                      "E_beta (1+Y)^(-alpha) = E_alpha (1+Y)^(-beta), Y gamma"),
        IdentityCheck("sinh-alpha-cf", "sinh_cf", ParameterGrid(alpha_values=ALPHA_GRID, x_values=x_cf),
                      DEFAULT_TOLERANCE, "int cos(theta x) phi_alpha(x) dx = (theta / sinh theta)^alpha"),
        IdentityCheck("cosh-alpha-cf", "cosh_cf", ParameterGrid(alpha_values=ALPHA_GRID, x_values=x_cf),
                      DEFAULT_TOLERANCE, "int cos(theta x) psi_alpha(x) dx = (1 / cosh theta)^alpha"),
        IdentityCheck("tanh-alpha-cf", "tanh_cf", ParameterGrid(alpha_values=ALPHA_GRID, x_values=x_cf),
                      DEFAULT_TOLERANCE, "int cos(theta x) eta_alpha(x) dx = (tanh theta / theta)^alpha"),
        IdentityCheck("sinh-star", "SStar_series", ParameterGrid(STAR_S_GRID, A, ALPHA_GRID), DEFAULT_TOLERANCE,
                      "S*_alpha(s,a) = Gamma(s-alpha)/Gamma(s) E(a-alpha/2+iX)^(alpha-s), X ~ sinh(alpha)/2",
                      _series_domain(Kind.SStar, 0.0)),
        IdentityCheck("sinh-star-continued", "SStar_closed", ParameterGrid(STAR_S_GRID, A, ALPHA_GRID),
                      DEFAULT_TOLERANCE,
                      "sum_k c_k zeta(s-k,a) = Gamma(s-alpha)/Gamma(s) E(a-alpha/2+iX)^(alpha-s)",
                      _closed_domain(Kind.SStar)),
        IdentityCheck("cosh-star", "CStar_series", ParameterGrid(STAR_S_GRID, A, ALPHA_GRID), DEFAULT_TOLERANCE,
                      "C*_alpha(s,a) = 2^(-alpha) E(a-alpha/2+iX)^(-s), X ~ cosh(alpha)/2",
                      _series_domain(Kind.CStar, 0.0)),
        IdentityCheck("cosh-star-continued", "CStar_closed", ParameterGrid(STAR_S_GRID, A, ALPHA_GRID),
                      DEFAULT_TOLERANCE, "sum_k c_k eta(s-k,a) = 2^(-alpha) E(a-alpha/2+iX)^(-s)",
                      _closed_domain(Kind.CStar)),
        IdentityCheck("tanh-star", "TStar_series", ParameterGrid(STAR_S_GRID, A, (1.0, 2.0, 3.0)),
                      DEFAULT_TOLERANCE, "T*_alpha(s,a) = E(a+iX)^(-s), X ~ tanh(alpha)/2",
                      _series_domain(Kind.TStar, 0.0, integer_alpha=True)),
    ]
    return {c.id: c for c in checks}


def _in_series_window(p: Point):
    spec = LAWS[p.law]
    sigma = math.sqrt(master.raw_moments(spec, 2)[2])
    return p.x * (p.a + 3.0 * sigma) <= master.WINDOW


REGISTRY: dict[str, IdentityCheck] = _build_registry()
