"""Command-line interface.

Examples
--------
::

    hyperzeta zeta --s 2 --a 1
    hyperzeta pdf --family tanh --alpha 1 --scale half --x 0.25,0.5
    hyperzeta moment --kind S2 --s 3,1 --a 1.5 --method integral
    hyperzeta suite --all --format csv --jobs 4

Exit status is 0 on success, 1 on a numerical failure (non-convergence, a
singular point, a failed identity) and 2 on a usage error.  ``--tol`` (or
the ``HYPERZETA_TOL`` environment variable) sets the quadrature tolerance;
for ``identity`` and ``suite`` it replaces each check's pass threshold.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys

import numpy as np

from hyperzeta import distributions as dist
from hyperzeta import harness, moments
from hyperzeta.distributions import DistributionSpec, Family, Scale
from hyperzeta.errors import (
    ConvergenceError,
    DomainError,
    HyperzetaError,
    IntegrandError,
    PoleError,
    SingularityError,
)
from hyperzeta.quadrature import DEFAULT_TOL, ToleranceSpec
from hyperzeta.zeta import hurwitz_zeta

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
TOL_ENV = "HYPERZETA_TOL"

SUITE_COLUMNS = ("identity_id", "s_re", "s_im", "a", "alpha", "x", "law", "lhs_re", "lhs_im",
                 "rhs_re", "rhs_im", "abs_residual", "rel_residual", "pass", "reason")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument types.


def parse_complex(text: str) -> complex:
    """Parse ``RE`` or ``RE,IM`` into a complex number."""
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}") from None
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_floats(text: str) -> list[float]:
    """Parse a comma-separated list of reals."""
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def tolerance_value(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1)")
    return value


def _law_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--family", required=True, choices=[f.value for f in Family],
                   help="distribution family")
    p.add_argument("--alpha", type=float, default=1.0, help="order of the hyperbolic, Irwin-Hall or gamma law")
    p.add_argument("--scale", choices=[s.value for s in Scale], default="full",
                   help="'half' divides a hyperbolic variable by 2")
    p.add_argument("--a", type=float, default=None, help="shape parameter of the h and g densities")
    return p


def _common_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--tol", type=tolerance_value, default=None,
                   help=f"quadrature tolerance (default: ${TOL_ENV} or built-in)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, law = _common_parent(), _law_parent()
    parser = argparse.ArgumentParser(prog="hyperzeta",
                                     description="Hurwitz zeta, hyperbolic laws and their moment identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common], help="Hurwitz zeta(s, a)")
    p.add_argument("--s", type=parse_complex, required=True, help="RE[,IM]")
    p.add_argument("--a", type=float, default=1.0)

    p = sub.add_parser("bernoulli", parents=[common], help="generalized Bernoulli function B(s, a)")
    p.add_argument("--s", type=parse_complex, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--route", choices=[r.value for r in moments.BernoulliRoute], default="functional")

    for name, what in (("pdf", "density"), ("cdf", "distribution function")):
        p = sub.add_parser(name, parents=[common, law], help=what)
        p.add_argument("--x", type=parse_floats, required=True, help="comma-separated arguments")

    p = sub.add_parser("cf", parents=[common, law], help="characteristic function")
    p.add_argument("--theta", type=parse_floats, required=True)

    p = sub.add_parser("moment", parents=[common],
                       help="E(a+iX)^(-s) of a law, or a moment function S1..TStar")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--family", choices=[f.value for f in Family])
    which.add_argument("--kind", choices=[k.value for k in moments.Kind])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--scale", choices=[s.value for s in Scale], default="full")
    p.add_argument("--s", type=parse_complex, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--method", choices=("integral", "series", "closed"), default="integral",
                   help="evaluation route for --kind")

    p = sub.add_parser("sample", parents=[common, law], help="draw from a law by inverse cdf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("identity", parents=[common], help="certify one registered identity")
    p.add_argument("id", choices=list(harness.REGISTRY))

    p = sub.add_parser("suite", parents=[common], help="certify several registered identities")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--ids", type=lambda t: [x for x in t.split(",") if x])
    p.add_argument("--jobs", type=int, default=1)

    sub.add_parser("list", parents=[common], help="list registered identities")
    return parser


# ---------------------------------------------------------------------------
# Serialization.


def jsonable_complex(z):
    if z is None:
        return None
    z = complex(z)
    return {"re": jsonable_float(z.real), "im": jsonable_float(z.imag)}


def jsonable_float(v):
    """Finite floats pass through (``repr`` round-trips); infinities and NaN become ``None``."""
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _dump_json(obj):
    return json.dumps(obj, allow_nan=False) + "\n"


def _tolerance(args) -> ToleranceSpec:
    value = args.tol
    if value is None and os.environ.get(TOL_ENV):
        try:
            value = tolerance_value(os.environ[TOL_ENV])
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"{TOL_ENV}: {exc}") from None
    if value is None:
        return DEFAULT_TOL
    return ToleranceSpec(abs_tol=value, rel_tol=value)


def _threshold(args):
    if args.tol is not None:
        return args.tol
    if os.environ.get(TOL_ENV):
        return float(os.environ[TOL_ENV])
    return None


def _spec(args) -> DistributionSpec:
    family = Family(args.family)
    order = args.alpha if family in dist.HYPERBOLIC or family in (Family.IrwinHall, Family.Gamma_alpha) else 1.0
    a_param = args.a if family in (Family.DensityH_a, Family.DensityG_a) else None
    return DistributionSpec(family, order, Scale(args.scale), a_param)


def _scalar_output(command, params, value, fmt):
    value = complex(value)
    if fmt == "json":
        return _dump_json({"re": value.real, "im": value.imag, "command": command, "params": params})
    if fmt == "csv":
        keys = list(params)
        return _csv_text(keys + ["re", "im"], [[_flatten(params[k]) for k in keys] + [value.real, value.imag]])
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r} {sign} {abs(value.imag)!r}i\n"


def _flatten(v):
    if isinstance(v, dict):
        return f"{v['re']!r},{v['im']!r}"
    return v


def _array_output(command, params, xs, values, fmt, xname="x"):
    values = [float(v) for v in np.atleast_1d(values)]
    if fmt == "json":
        obj = {"command": command, "params": params}
        if xs is not None:
            obj[xname] = [float(x) for x in xs]
        obj["values"] = values
        return _dump_json(obj)
    if fmt == "csv":
        if xs is None:
            return _csv_text(["value"], [[v] for v in values])
        return _csv_text([xname, "value"], [[float(x), v] for x, v in zip(xs, values)])
    if xs is None:
        return "".join(f"{v!r}\n" for v in values)
    return "".join(f"{float(x)!r} {v!r}\n" for x, v in zip(xs, values))


def _point_json(rec: harness.PointRecord):
    p = rec.point
    return {
        "s": jsonable_complex(p.s), "a": p.a, "alpha": p.alpha, "x": p.x, "law": p.law,
        "lhs": jsonable_complex(rec.lhs), "rhs": jsonable_complex(rec.rhs),
        "abs_residual": jsonable_float(rec.abs_residual), "rel_residual": jsonable_float(rec.rel_residual),
        "pass": rec.passed, "reason": rec.reason,
    }


def report_json(suite: harness.SuiteReport, command="suite"):
    checks = []
    for r in suite.reports:
        check = harness.REGISTRY[r.id]
        checks.append({
            "id": r.id, "anchor": check.anchor, "tolerance": r.tolerance, "passed": r.passed,
            "n_points": r.n_points, "n_passed": r.n_passed,
            "max_abs_residual": jsonable_float(r.max_abs_residual),
            "max_rel_residual": jsonable_float(r.max_rel_residual),
            "points": [_point_json(rec) for rec in r.records],
        })
    summary = {"n_checks": len(suite.reports), "n_points": suite.n_points, "n_passed": suite.n_passed,
               "passed": suite.passed}
    return {"command": command, "checks": checks, "summary": summary}


def report_rows(suite: harness.SuiteReport):
    for r in suite.reports:
        for rec in r.records:
            p = rec.point
            s = p.s if p.s is not None else None
            lhs, rhs = rec.lhs, rec.rhs
            yield [r.id,
                   None if s is None else s.real, None if s is None else s.imag,
                   p.a, p.alpha, p.x, p.law,
                   None if lhs is None else lhs.real, None if lhs is None else lhs.imag,
                   None if rhs is None else rhs.real, None if rhs is None else rhs.imag,
                   rec.abs_residual, rec.rel_residual, rec.passed, rec.reason]


def _report_output(suite, fmt, command):
    if fmt == "json":
        return _dump_json(report_json(suite, command))
    if fmt == "csv":
        rows = list(report_rows(suite))
        summary = ["SUMMARY"] + [None] * 10 + [None, None, suite.passed,
                                                f"{suite.n_passed}/{suite.n_points} points passed"]
        return _csv_text(SUITE_COLUMNS, rows + [summary])
    lines = []
    for r in suite.reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.id} {r.n_passed}/{r.n_points} max_abs={r.max_abs_residual:.3e} "
                     f"tol={r.tolerance:g}")
        for rec in r.records:
            if not rec.passed:
                lines.append(f"    {rec.point} abs={rec.abs_residual:.3e} {rec.reason}")
    lines.append(f"{suite.n_passed}/{suite.n_points} points passed")
    return "\n".join(lines) + "\n"


def _with_threshold(report: harness.CheckReport, tol):
    check = harness.REGISTRY[report.id]
    if tol is None:
        return report
    check = dataclasses.replace(check, tolerance=tol)
    records = tuple(dataclasses.replace(r, passed=r.lhs is not None and min(r.abs_residual, r.rel_residual) <= tol)
                    for r in report.records)
    return harness.CheckReport(check.id, tol, records)


# ---------------------------------------------------------------------------
# Commands.


def _cmd_zeta(args, tol):
    value = hurwitz_zeta(args.s, args.a)
    return _scalar_output("zeta", {"s": jsonable_complex(args.s), "a": args.a}, value, args.format), EXIT_OK


def _cmd_bernoulli(args, tol):
    value = moments.gen_bernoulli(args.s, args.a, args.route, tol)
    params = {"s": jsonable_complex(args.s), "a": args.a, "route": args.route}
    return _scalar_output("bernoulli", params, value, args.format), EXIT_OK


def _law_params(spec):
    return {"law": spec.label, "family": spec.family.value, "alpha": spec.order, "scale": spec.scale.value,
            "a": spec.a_param}


def _cmd_pdf(args, tol):
    spec = _spec(args)
    values = dist.pdf(spec, np.asarray(args.x, dtype=float), tol)
    return _array_output("pdf", _law_params(spec), args.x, values, args.format), EXIT_OK


def _cmd_cdf(args, tol):
    spec = _spec(args)
    values = dist.cdf(spec, np.asarray(args.x, dtype=float), tol)
    return _array_output("cdf", _law_params(spec), args.x, values, args.format), EXIT_OK


def _cmd_cf(args, tol):
    spec = _spec(args)
    values = dist.cf(spec, np.asarray(args.theta, dtype=float))
    return _array_output("cf", _law_params(spec), args.theta, values, args.format, xname="theta"), EXIT_OK


def _cmd_moment(args, tol):
    params = {"s": jsonable_complex(args.s), "a": args.a}
    if args.kind is not None:
        kind = moments.MomentFunctionKind.of(args.kind, args.alpha)
        if args.method == "series":
            value = moments.series_value(kind, args.s, args.a)
        elif args.method == "closed":
            value = moments.closed_form_value(kind, args.s, args.a)
        else:
            value = moments.integral_value(kind, args.s, args.a, tol)
        params.update({"kind": kind.label, "method": args.method})
    else:
        family = Family(args.family)
        order = args.alpha if family in dist.HYPERBOLIC or family in (Family.IrwinHall, Family.Gamma_alpha) else 1.0
        spec = DistributionSpec(family, order, Scale(args.scale))
        value = dist.complex_moment(spec, args.s, args.a, tol)
        params.update({"law": spec.label})
    return _scalar_output("moment", params, value, args.format), EXIT_OK


def _cmd_sample(args, tol):
    if args.n <= 0:
        raise UsageError("--n must be positive")
    spec = _spec(args)
    batch = dist.sample(spec, args.n, args.seed)
    params = dict(_law_params(spec), n=args.n, seed=args.seed)
    return _array_output("sample", params, None, batch.values, args.format), EXIT_OK


def _cmd_identity(args, tol):
    report = _with_threshold(harness.run_check(args.id), _threshold(args))
    suite = harness.SuiteReport((report,))
    return _report_output(suite, args.format, "identity"), EXIT_OK if suite.passed else EXIT_NUMERIC


def _cmd_suite(args, tol):
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    ids = list(harness.REGISTRY) if args.all else args.ids
    unknown = [i for i in ids if i not in harness.REGISTRY]
    if unknown:
        raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
    suite = harness.run_suite(ids, jobs=args.jobs)
    threshold = _threshold(args)
    suite = harness.SuiteReport(tuple(_with_threshold(r, threshold) for r in suite.reports))
    return _report_output(suite, args.format, "suite"), EXIT_OK if suite.passed else EXIT_NUMERIC


def _cmd_list(args, tol):
    rows = [(c.id, c.anchor, c.tolerance) for c in harness.REGISTRY.values()]
    if args.format == "json":
        items = [{"id": i, "anchor": a, "tolerance": t} for i, a, t in rows]
        return _dump_json({"command": "list", "identities": items}), EXIT_OK
    if args.format == "csv":
        return _csv_text(["id", "anchor", "tolerance"], rows), EXIT_OK
    return "".join(f"{i}  {a}\n" for i, a, _ in rows), EXIT_OK


COMMANDS = {
    "zeta": _cmd_zeta, "bernoulli": _cmd_bernoulli, "pdf": _cmd_pdf, "cdf": _cmd_cdf, "cf": _cmd_cf,
    "moment": _cmd_moment, "sample": _cmd_sample, "identity": _cmd_identity, "suite": _cmd_suite,
    "list": _cmd_list,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    """Run the CLI; returns the exit status instead of calling ``sys.exit``."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        tol = _tolerance(args)
        text, code = COMMANDS[args.command](args, tol)
    except (SingularityError, PoleError, ConvergenceError, IntegrandError, ArithmeticError) as exc:
        print(f"hyperzeta {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERIC
    except (UsageError, DomainError) as exc:
        print(f"hyperzeta {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except HyperzetaError as exc:
        print(f"hyperzeta {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERIC
    stdout.write(text)
    return code


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
