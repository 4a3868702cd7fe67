"""Summation helpers for slowly convergent series.

Two shapes cover every series in the package:

* alternating series whose term magnitudes vary smoothly with the index,
  summed directly for a head and then by Euler's transformation
  (van Wijngaarden's repeated averaging of partial sums);
* positive series with algebraically decaying terms, summed directly for a
  head and completed by an Euler-Maclaurin estimate of the tail built from
  a quadrature of the continuous term function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hyperzeta.errors import ConvergenceError
from hyperzeta.quadrature import ToleranceSpec, adaptive_integrate


@dataclass
class SeriesResult:
    value: complex
    error_estimate: float
    terms: int


def alternating_sum(term, n_direct=40, n_euler=40, tol=1e-13):
    """Sum ``sum_{n>=0} term(n)`` for a sign-alternating sequence.

    ``term`` maps an integer array to the signed terms.  The first
    ``n_direct`` terms are summed directly; the next ``n_euler`` partial sums
    are repeatedly averaged.  The change made by the last averaging step
    serves as error estimate.
    """
    n = np.arange(n_direct + n_euler)
    t = np.asarray(term(n), dtype=complex)
    head = math.fsum(t[:n_direct].real) + 1j * math.fsum(t[:n_direct].imag)
    partial = head + np.cumsum(t[n_direct:])
    prev = partial[-1]
    while partial.size > 1:
        prev = partial[-1]
        partial = 0.5 * (partial[1:] + partial[:-1])
    value = complex(partial[0])
    err = abs(value - prev)
    scale = max(1.0, abs(value))
    if not err <= max(tol, 1e-12 * scale) * 1e3:
        raise ConvergenceError(f"alternating series failed to converge (estimate {err:.3g})",
                               SeriesResult(value, err, n.size))
    return SeriesResult(value, err, n.size)


def positive_sum(term, term_continuous, n_direct=200, tol=1e-13):
    """Sum ``sum_{n>=0} term(n)`` for smooth algebraically decaying terms.

    ``term_continuous`` extends ``term`` to real arguments.  The tail from
    ``N = n_direct`` is ``int_{N - 1/2}^inf t(x) dx + t'(N - 1/2) / 24``
    (midpoint Euler-Maclaurin); the tail integral is mapped to ``(0, 1]`` by
    ``x = (N - 1/2) / v``.  The derivative correction doubles as error
    estimate.
    """
    n = np.arange(n_direct)
    t = np.asarray(term(n), dtype=complex)
    head = math.fsum(t.real) + 1j * math.fsum(t.imag)
    x0 = n_direct - 0.5

    def mapped(v):
        x = x0 / v
        return np.asarray(term_continuous(x), dtype=complex) * x0 / (v * v)

    res = adaptive_integrate(mapped, [0.0, 0.25, 0.5, 1.0], ToleranceSpec(abs_tol=tol * 1e-2, rel_tol=1e-13))
    h = 1e-3 * x0
    deriv = (np.asarray(term_continuous(np.array([x0 + h])), dtype=complex)[0]
             - np.asarray(term_continuous(np.array([x0 - h])), dtype=complex)[0]) / (2.0 * h)
    correction = deriv / 24.0
    value = head + complex(res.value) + correction
    err = abs(correction) * 1e-2 + float(res.abs_error_estimate)
    return SeriesResult(value, err, n_direct)
