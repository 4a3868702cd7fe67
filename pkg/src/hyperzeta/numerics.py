"""Principal-branch complex powers, complex log-gamma and Bernoulli numbers.

All bases handled here have the form ``a + i x`` with ``a > 0``; they live in
the open right half-plane, where the principal logarithm is analytic and
``arg(a + i x) = atan(x / a)`` lies in ``(-pi/2, pi/2)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special

from hyperzeta.errors import DomainError, PoleError

# exp() overflows just above this real part.
_MAX_EXPONENT = 709.0


def complex_pow_principal(a, x, s):
    """Return ``(a + i x) ** (-s)`` on the principal branch.

    Parameters
    ----------
    a : float or array_like
        Real part of the base, strictly positive.
    x : float or array_like
        Imaginary part of the base.
    s : complex
        Exponent; the function returns the power ``-s``.

    Returns
    -------
    complex or ndarray of complex
        ``exp(-s * (log|a + i x| + i atan(x / a)))``.  Its modulus is
        ``(a^2 + x^2)^(-Re s / 2) * exp(Im s * theta)``.

    Raises
    ------
    DomainError
        If any ``a <= 0``.
    OverflowError
        If the real part of the exponent exceeds the double range.
    """
    a_arr = np.asarray(a, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(~(a_arr > 0.0)):
        raise DomainError("base real part must be > 0 for the principal branch")
    s = complex(s)
    log_mod = np.log(np.hypot(a_arr, x_arr))
    theta = np.arctan2(x_arr, a_arr)
    expo = -s * (log_mod + 1j * theta)
    if np.any(expo.real > _MAX_EXPONENT):
        raise OverflowError("complex power overflows double precision")
    out = np.exp(expo)
    if out.ndim == 0:
        return complex(out)
    return out


def log_gamma_complex(z):
    """Principal-branch ``log Gamma(z)`` for complex (or real) ``z``.

    Backed by :func:`scipy.special.loggamma`, which returns the branch that is
    analytic on the plane cut along the negative real axis.  For
    ``|z| <= 50`` it agrees with the true log-gamma to better than 1e-13.

    Raises
    ------
    PoleError
        If ``z`` is zero or a negative integer.
    """
    z_arr = np.asarray(z, dtype=complex)
    at_pole = (z_arr.imag == 0.0) & (z_arr.real <= 0.0) & (z_arr.real == np.round(z_arr.real))
    if np.any(at_pole):
        raise PoleError("Gamma has a pole at non-positive integers")
    out = special.loggamma(z_arr)
    if out.ndim == 0:
        return complex(out)
    return out


def gamma_complex(z):
    """``Gamma(z)`` for complex ``z`` via :func:`log_gamma_complex`."""
    return np.exp(log_gamma_complex(z))


@lru_cache(maxsize=None)
def _bernoulli_table(n_max):
    table = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * table[k]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_number_exact(n):
    """Exact Bernoulli number ``B_n`` as a :class:`fractions.Fraction`.

    Uses the recurrence ``sum_{k=0}^{n} C(n+1, k) B_k = 0``, so ``B_1 = -1/2``.
    Only the even-index values coincide with ``B(n, 1)`` of the generalized
    Bernoulli function, which takes ``B(1, 1) = +1/2``.
    """
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n > 60:
        raise OverflowError("Bernoulli oracle is limited to n <= 60")
    return _bernoulli_table(60)[n]


def bernoulli_number(n):
    """Bernoulli number ``B_n`` as a float (see :func:`bernoulli_number_exact`)."""
    return float(bernoulli_number_exact(n))
