"""Reference implementations of the Hurwitz zeta function and its relatives.

These are the oracle side of every identity check: nothing here touches a
probability distribution or an integral representation.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special

from hyperzeta.errors import DomainError, PoleError
from hyperzeta.numerics import bernoulli_number
from hyperzeta.series import alternating_sum

_EPS = np.finfo(float).eps
_K_DEFAULT = 12


@lru_cache(maxsize=None)
def _em_coefficients(k_max):
    # B_{2k} / (2k)!
    return tuple(bernoulli_number(2 * k) / math.factorial(2 * k) for k in range(1, k_max + 1))


def _is_nonpositive_integer(s):
    return s.imag == 0.0 and s.real <= 0.0 and s.real == round(s.real)


def _em_terms(s, a, n, k_terms):
    """Euler-Maclaurin pieces for ``zeta(s, a)`` with ``n`` explicit terms.

    Returns ``(value, rounding_scale, remainder_estimate)``.
    """
    coeffs = _em_coefficients(k_terms + 1)
    base = n + a
    log_base = math.log(base)
    head = np.exp(-s * np.log(np.arange(n) + a))
    head_sum = complex(np.sum(head))
    scale = float(np.sum(np.abs(head)))
    lead = np.exp((1.0 - s) * log_base) / (s - 1.0) + 0.5 * np.exp(-s * log_base)
    scale += abs(lead)
    corr = 0j
    rising = s  # (s)_{2k-1}
    for k in range(1, k_terms + 1):
        term = coeffs[k - 1] * rising * np.exp((-s - 2 * k + 1) * log_base)
        corr += term
        scale += abs(term)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    remainder = abs(coeffs[k_terms] * rising * np.exp((-s - 2 * k_terms - 1) * log_base))
    return head_sum + lead + corr, scale, remainder


def hurwitz_zeta(s, a):
    """Hurwitz zeta ``zeta(s, a) = sum_{n>=0} (n + a)^(-s)`` continued to ``s != 1``.

    Euler-Maclaurin summation.  The number of explicit terms is picked from
    ``0 .. max(10, ceil|s| + 10)`` to minimise rounding plus remainder, which
    keeps cancellation under control for negative ``Re s`` (at non-positive
    integers ``s`` the expansion terminates and the result is exact up to
    rounding).

    Raises
    ------
    PoleError
        At ``s == 1``.
    DomainError
        If ``a <= 0``.
    """
    s = complex(s)
    a = float(a)
    if not a > 0.0:
        raise DomainError("Hurwitz zeta needs a > 0")
    if s == 1.0:
        raise PoleError("zeta(s, a) has a simple pole at s = 1")
    k_terms = _K_DEFAULT
    if _is_nonpositive_integer(s):
        k_terms = max(k_terms, int(1 - s.real) // 2 + 1)
    n_max = max(10, int(math.ceil(abs(s))) + 10)
    best = None
    for n in range(0, n_max + 1):
        value, scale, remainder = _em_terms(s, a, n, k_terms)
        total_err = _EPS * scale + remainder
        if best is None or total_err < best[1]:
            best = (value, total_err)
        if remainder == 0.0 or remainder < _EPS * abs(value) * 1e-2:
            break
    value = best[0]
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return value


def riemann_zeta(s):
    """Riemann zeta, the ``a = 1`` case of :func:`hurwitz_zeta`."""
    return hurwitz_zeta(s, 1.0)


def dirichlet_eta(s):
    """Alternating zeta ``(1 - 2^(1-s)) zeta(s)``; ``log 2`` at ``s = 1``."""
    s = complex(s)
    if s == 1.0:
        return complex(math.log(2.0))
    factor = -np.expm1((1.0 - s) * math.log(2.0))
    return complex(factor * riemann_zeta(s))


def dirichlet_beta(s):
    """``L_chi4(s) = sum_{n>=0} (-1)^n (2n+1)^(-s)`` for ``Re s > 0``.

    Summed with Euler's transformation of the alternating series.
    """
    s = complex(s)
    if s.real <= 0.0:
        raise DomainError("dirichlet_beta is implemented for Re(s) > 0 only")
    n_direct = 40 + int(4 * abs(s.imag))

    def term(n):
        return (-1.0) ** n * np.exp(-s * np.log(2.0 * n + 1.0))

    res = alternating_sum(term, n_direct=n_direct)
    value = res.value
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return value


def alternating_hurwitz_zeta(s, a):
    """``sum_{n>=0} (-1)^n (n + a)^(-s)`` continued to all ``s``.

    Split into even and odd ``n``: ``2^(-s) [zeta(s, a/2) - zeta(s, (a+1)/2)]``.
    At ``s = 1`` the poles cancel and the value is
    ``[digamma((a+1)/2) - digamma(a/2)] / 2``.
    """
    s = complex(s)
    a = float(a)
    if not a > 0.0:
        raise DomainError("alternating Hurwitz zeta needs a > 0")
    if s == 1.0:
        return complex(0.5 * (special.digamma(0.5 * (a + 1.0)) - special.digamma(0.5 * a)))
    value = np.exp(-s * math.log(2.0)) * (hurwitz_zeta(s, 0.5 * a) - hurwitz_zeta(s, 0.5 * (a + 1.0)))
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return complex(value)


def gen_bernoulli_functional(s, a):
    """Generalized Bernoulli function ``B(s, a) = -s zeta(1 - s, a)``.

    ``B(0, a) = 1`` from the unit residue of ``zeta`` at ``s = 1``.
    """
    s = complex(s)
    if not a > 0.0:
        raise DomainError("B(s, a) needs a > 0")
    if s == 0.0:
        return 1.0 + 0j
    if abs(s) < 1e-8:
        # zeta(1 + e, a) = 1/e - digamma(a) + O(e)
        return 1.0 + s * float(special.digamma(a))
    return -s * hurwitz_zeta(1.0 - s, a)
