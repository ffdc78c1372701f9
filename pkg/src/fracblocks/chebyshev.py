"""Chebyshev polynomials of the second kind.

``U_k`` is evaluated by the three-term recurrence for general (complex)
arguments, and through ``sin((k+1)θ)/sin(θ)`` on the unit interval.
"""

import math

import numpy as np

from .errors import DomainError

#: below this |sin θ| the ratio form is replaced by the recurrence
TRIG_SWITCH = 1e-6


def _check_order(k):
    if int(k) != k or k < 0:
        raise DomainError(f"Chebyshev degree must be a non-negative integer, got {k!r}")
    return int(k)


def eval_U(k, x):
    """Evaluate ``U_k(x)`` by the recurrence ``U_{k+1} = 2x U_k - U_{k-1}``.

    Parameters
    ----------
    k : int
        Polynomial degree, ``k >= 0``.
    x : complex or array_like
        Evaluation point(s).

    Returns
    -------
    complex or ndarray
        Same shape as ``x``. Real input stays real.
    """
    k = _check_order(k)
    x = np.asarray(x)
    prev = np.ones_like(x)
    if k == 0:
        return prev[()]
    cur = 2 * x
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur[()]


def eval_U_trig(k, theta):
    """``U_k(cos θ)`` from the sine ratio, with the analytic limit near θ ∈ πZ."""
    k = _check_order(k)
    s = math.sin(theta)
    if abs(s) < TRIG_SWITCH:
        return float(eval_U(k, math.cos(theta)))
    return math.sin((k + 1) * theta) / s


def sinpi(x):
    """``sin(πx)`` with exact zeros at the integers."""
    x = np.asarray(x, dtype=float)
    r = np.round(x)
    sign = np.where(np.mod(r, 2) == 0, 1.0, -1.0)
    return (sign * np.sin(np.pi * (x - r)))[()]


def cospi(x):
    """``cos(πx)`` with exact values ±1 at the integers."""
    x = np.asarray(x, dtype=float)
    r = np.round(x)
    sign = np.where(np.mod(r, 2) == 0, 1.0, -1.0)
    return (sign * np.cos(np.pi * (x - r)))[()]


def eval_U_cospi(k, x):
    """``U_k(cos(πx))`` for angles given in units of π.

    Same switch rule as :func:`eval_U_trig`, but the sines are reduced
    modulo the period first, so integer ``(k+1)x`` gives an exact zero.
    """
    k = _check_order(k)
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = np.atleast_1d(x)
    s = np.atleast_1d(sinpi(x))
    near = np.abs(s) < TRIG_SWITCH
    out = np.empty_like(x)
    out[~near] = sinpi((k + 1) * x[~near]) / s[~near]
    if np.any(near):
        out[near] = eval_U(k, cospi(x[near]))
    return out.reshape(shape)[()]


def eval_U_shifted(n, alpha, d):
    """``U_{n-1}(cos((alpha + d)π/n))`` for real ``alpha`` and integer ``d``.

    Uses ``sin(π(alpha+d)) = (-1)^d sin(πalpha)`` and reduces
    ``(alpha+d)/n`` by its nearest integer ``m`` with integer arithmetic
    before dividing, so the sine ratio keeps full relative accuracy when
    both sines are small. Within ``TRIG_SWITCH`` of a multiple of π the
    recurrence is used at the reduced cosine; the limit ``U_{n-1}(±1)``
    comes out exactly.
    """
    n = _check_order(n - 1) + 1
    d = np.asarray(d)
    if not np.issubdtype(d.dtype, np.integer):
        raise DomainError("shift d must be integer-valued")
    m = np.round((alpha + d) / n).astype(int)
    r = (alpha + (d - m * n)) / n
    sign_m = np.where(m % 2 == 0, 1.0, -1.0)
    num = np.where(d % 2 == 0, 1.0, -1.0) * sinpi(alpha)
    den = sign_m * np.sin(np.pi * r)
    # near the poles U is flat, so the recurrence at the reduced cosine is exact enough
    near = np.abs(den) < TRIG_SWITCH
    limit = sign_m ** (n - 1) * eval_U(n - 1, np.cos(np.pi * r))
    safe = np.where(near, 1.0, den)
    return np.where(near, limit, num / safe)[()]
