"""Scalar n-th order equation satisfied by one component of ``x' + M x = 0``.

Every component of a solution is a combination of ``exp(-λ t)``,
``λ ∈ σ(M)``, so it solves the constant-coefficient equation whose
characteristic polynomial is ``Π (r + λ_i) = Σ_k e_k(M) r^(n-k)``. The
elementary symmetric functions ``e_k = tr(Λ^k M)`` (traces of exterior
powers) are obtained from power traces through a ``k x k`` determinant.
"""

from dataclasses import dataclass
import json
import math

import numpy as np

from .block_operator import fractional_power_closed_form
from .chebyshev import eval_U_shifted
from .errors import DomainError

__all__ = [
    "CharCoeffs",
    "exterior_trace",
    "exterior_traces",
    "faddeev_leverrier",
    "char_coeffs",
    "trace_identity_check",
    "DetCheck",
    "cofactor_determinant",
    "det_identity_check",
    "format_ode",
]


def _power_traces(m, k):
    traces = []
    p = np.eye(m.shape[0], dtype=m.dtype)
    for _ in range(k):
        p = p @ m
        traces.append(np.trace(p))
    return traces


def _newton_matrix(traces, k):
    # row r: tr(M^(r+1)), ..., tr(M) then k-r-1 on the superdiagonal
    h = np.zeros((k, k), dtype=complex)
    for r in range(k):
        for c in range(r + 1):
            h[r, c] = traces[r - c]
        if r + 1 < k:
            h[r, r + 1] = k - r - 1
    return h


def exterior_trace(matrix, k):
    """``tr(Λ^k M)``: the k-th elementary symmetric function of the eigenvalues.

    Computed as ``det(H_k) / k!`` where ``H_k`` has the power traces
    ``tr(M), tr(M^2), ...`` on and below its diagonal and
    ``k-1, k-2, ..., 1`` on its superdiagonal.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("exterior_trace needs a square matrix")
    if int(k) != k or not 1 <= k <= m.shape[0]:
        raise DomainError(f"k must lie in 1..{m.shape[0]}, got {k!r}")
    k = int(k)
    traces = _power_traces(m, k)
    return complex(np.linalg.det(_newton_matrix(traces, k)) / math.factorial(k))


def exterior_traces(matrix):
    """``[tr(Λ^1 M), ..., tr(Λ^n M)]``."""
    m = np.asarray(matrix, dtype=complex)
    return [exterior_trace(m, k) for k in range(1, m.shape[0] + 1)]


def faddeev_leverrier(matrix):
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(r I + M)``.

    Independent of :func:`exterior_trace`: the Faddeev-LeVerrier recursion
    produces ``det(r I - M) = Σ a_k r^(n-k)``, and ``c_k = (-1)^k a_k``.
    """
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    a = [1.0 + 0j]
    aux = np.zeros_like(m)
    eye = np.eye(n)
    for k in range(1, n + 1):
        aux = m @ aux + a[-1] * eye
        a.append(-np.trace(m @ aux) / k)
    return np.array([(-1) ** k * a[k] for k in range(n + 1)])


@dataclass(frozen=True, eq=False)
class CharCoeffs:
    """Characteristic polynomial ``r^n + c_1 r^(n-1) + ... + c_n`` of one mode.

    Its roots are the exponential rates ``r`` of the solutions ``e^(rt)``,
    i.e. the negated eigenvalues of the block.
    """

    n: int
    mu: float
    alpha: float
    coefficients: np.ndarray

    def __call__(self, r):
        return np.polyval(self.coefficients, r)

    def roots(self):
        return np.roots(self.coefficients)

    def to_dict(self):
        return {
            "n": self.n,
            "mu": self.mu,
            "alpha": self.alpha,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, doc):
        coeffs = np.array([complex(re, im) for re, im in doc["coefficients"]])
        return cls(int(doc["n"]), float(doc["mu"]), float(doc["alpha"]), coeffs)

    def to_json(self):
        return json.dumps(self.to_dict())


def char_coeffs(n, alpha, mu):
    """Scalar-equation coefficients for the ``alpha`` power block of one mode."""
    block = fractional_power_closed_form(n, mu, alpha).entries
    coeffs = np.array([1.0 + 0j] + exterior_traces(block))
    return CharCoeffs(n, float(mu), float(alpha), coeffs)


def trace_identity_check(n, alpha, mu):
    """``|tr(B) - U_{n-1}(cos(alpha π/n)) mu^(alpha/n)|`` for the closed-form block."""
    block = fractional_power_closed_form(n, mu, alpha).entries
    predicted = float(eval_U_shifted(n, alpha, 0)) * mu ** (alpha / n)
    return float(abs(np.trace(block) - predicted))


def cofactor_determinant(matrix, row):
    """Laplace expansion ``Σ_j (-1)^(i+j) a_ij M_ij`` along ``row`` (0-based)."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    total = 0j
    for j in range(n):
        minor = np.delete(np.delete(a, row, axis=0), j, axis=1)
        total += (-1) ** (row + j) * a[row, j] * (np.linalg.det(minor) if n > 1 else 1.0)
    return complex(total)


def chebyshev_cofactor_determinant(n, alpha, mu, row):
    """The same expansion with the entries written out in Chebyshev form:
    ``(1/n) Σ_j U_{n-1}(cos((alpha+i-j)π/n)) mu^((alpha+i-j)/n) M_ij``.

    The sign of the entry cancels the cofactor sign ``(-1)^(i+j)``.
    """
    block = fractional_power_closed_form(n, mu, alpha).entries
    total = 0.0
    for j in range(n):
        x = (alpha + row - j) / n
        minor = np.delete(np.delete(block, row, axis=0), j, axis=1)
        total += float(eval_U_shifted(n, alpha, row - j)) * mu**x * np.linalg.det(minor)
    return complex(total / n)


@dataclass(frozen=True)
class DetCheck:
    residual: float
    cofactor_residual: float
    determinant: complex


def det_identity_check(n, alpha, mu, row=None):
    """Compare ``det`` of the closed-form block with ``mu**alpha``.

    ``residual`` is ``|det(B) - mu^alpha|``; ``cofactor_residual`` is the gap
    between the dense determinant and the Chebyshev cofactor expansion
    along ``row`` (default: the last row).
    """
    block = fractional_power_closed_form(n, mu, alpha).entries
    det = complex(np.linalg.det(block))
    row = n - 1 if row is None else row
    expansion = chebyshev_cofactor_determinant(n, alpha, mu, row)
    return DetCheck(abs(det - mu**alpha), abs(expansion - det), det)


def format_ode(cc, var="u", tol=1e-12):
    """Human-readable scalar equation, highest derivative first."""
    terms = []
    n = cc.n
    scale = max(1.0, float(np.max(np.abs(cc.coefficients))))
    for k, c in enumerate(cc.coefficients):
        if abs(c) < tol * scale:
            continue
        order = n - k
        d = var if order == 0 else (f"{var}'" if order == 1 else f"d^{order}{var}/dt^{order}")
        val = c.real if abs(c.imag) < tol * scale else c
        if k == 0:
            terms.append(d)
        else:
            terms.append(f"{val:+.12g}*{d}")
    return " ".join(terms) + " = 0"
