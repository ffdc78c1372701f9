"""Per-mode blocks of the n-th order companion operator and its functions.

On the eigenmode of ``A`` with eigenvalue ``mu`` the first-order system
operator acts as the ``n x n`` matrix with ``-1`` on the superdiagonal and
``mu`` in the bottom-left corner. Its fractional powers are computed three
ways: the closed Chebyshev form, a principal-branch eigendecomposition and
the Balakrishnan integral over the closed-form resolvent.
"""

from dataclasses import dataclass
import json

import numpy as np
import scipy.linalg

from .chebyshev import eval_U_shifted
from .errors import (
    BranchCutError,
    DiagonalizationError,
    DomainError,
    SingularResolventError,
)
from .spectral_base import QuadratureSpec, balakrishnan_integral

__all__ = [
    "ModeBlock",
    "assemble_lambda",
    "inverse_closed_form",
    "resolvent_closed_form",
    "resolvent_entries",
    "fractional_power_closed_form",
    "fractional_power_eig_oracle",
    "principal_power",
    "balakrishnan_block",
    "power_semigroup_check",
    "mode_scaling",
    "is_toeplitz",
]

#: eigenvector condition number above which a block counts as defective
DEFECT_COND = 1e8


@dataclass(frozen=True, eq=False)
class ModeBlock:
    """An ``n x n`` matrix attached to one eigenvalue ``mu`` of ``A``."""

    n: int
    mu: float
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (self.n, self.n):
            raise DomainError(f"entries must be {self.n}x{self.n}, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise DomainError("block entries must be finite")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def real(self):
        """Real part of the entries; the closed-form blocks are real."""
        return self.entries.real

    def __matmul__(self, other):
        other = other.entries if isinstance(other, ModeBlock) else other
        return self.entries @ other

    def to_dict(self):
        return {
            "n": self.n,
            "mu": self.mu,
            "entries": [[z.real, z.imag] for z in self.entries.ravel()],
        }

    @classmethod
    def from_dict(cls, doc):
        n = int(doc["n"])
        flat = np.array([complex(re, im) for re, im in doc["entries"]])
        return cls(n, float(doc["mu"]), flat.reshape(n, n))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def pretty(self, digits=6):
        """Human-readable matrix; rounding-level entries print as 0."""
        emax = np.max(np.abs(self.entries)) if self.entries.size else 0.0
        snap = 1e-13 * max(emax, 1.0)
        rows = []
        for row in self.entries:
            cells = []
            for z in row:
                re = 0.0 if abs(z.real) < snap else z.real
                im = 0.0 if abs(z.imag) < snap else z.imag
                cells.append(f"{re:.{digits}g}" if im == 0 else f"{complex(re, im):.{digits}g}")
            rows.append("[" + ", ".join(cells) + "]")
        return "\n".join(rows)


def _check(n, mu):
    if int(n) != n or n < 2:
        raise DomainError(f"system order n must be an integer >= 2, got {n!r}")
    if not mu > 0:
        raise DomainError(f"mode eigenvalue mu must be positive, got {mu!r}")
    return int(n), float(mu)


def _offsets(n):
    i = np.arange(n)
    return i[:, None] - i[None, :]


def mode_scaling(n, mu):
    """Diagonal ``d_i = mu**((i-1)/n)``.

    With ``D = diag(d)`` every closed-form block ``B`` of order ``alpha``
    satisfies ``D^-1 B D = mu**(alpha/n) * B_1``, where ``B_1`` is the
    ``mu = 1`` block of the same order.
    """
    return float(mu) ** (np.arange(n) / n)


def is_toeplitz(matrix, tol=0.0):
    """True if every diagonal of ``matrix`` is constant (up to ``tol``)."""
    m = np.asarray(matrix)
    return bool(np.all(np.abs(m[1:, 1:] - m[:-1, :-1]) <= tol))


def assemble_lambda(n, mu):
    """The block of the system operator on one mode.

    >>> assemble_lambda(3, 5.0).real
    array([[ 0., -1.,  0.],
           [ 0.,  0., -1.],
           [ 5.,  0.,  0.]])
    """
    n, mu = _check(n, mu)
    m = np.diag(-np.ones(n - 1), 1).astype(complex)
    m[n - 1, 0] = mu
    return ModeBlock(n, mu, m)


def inverse_closed_form(n, mu):
    """Inverse block: ``1/mu`` in the top-right corner, ``-1`` on the subdiagonal."""
    n, mu = _check(n, mu)
    m = np.diag(-np.ones(n - 1), -1).astype(complex)
    m[0, n - 1] = 1.0 / mu
    return ModeBlock(n, mu, m)


def resolvent_entries(n, mu, lam):
    """Closed-form ``(lam I + Λ)^-1`` entries for an array of ``lam`` values.

    Returns an array of shape ``lam.shape + (n, n)``. Entry ``(i, j)`` is
    ``lam**(n-1+i-j)`` above and on the diagonal and ``-mu*lam**(i-j-1)``
    below it, all divided by ``lam**n + mu``.
    """
    lam = np.asarray(lam, dtype=complex)
    d = _offsets(n)
    upper = d <= 0
    coef = np.where(upper, 1.0, -mu)
    lam_e = lam[..., None, None]
    big = np.abs(lam_e) > 1
    # small |lam|: powers of lam; large |lam|: same ratio in powers of 1/lam
    safe = np.where(big, 1.0, lam_e)
    inv = np.where(big, 1.0 / np.where(big, lam_e, 1.0), 1.0)
    small_expo = np.where(upper, n - 1 + d, d - 1)
    big_expo = np.where(upper, 1 - d, n + 1 - d)
    small_val = _ipow(safe, small_expo) / (safe**n + mu)
    big_val = _ipow(inv, big_expo) / (1.0 + mu * inv**n)
    return coef * np.where(big, big_val, small_val)


def _ipow(base, expo):
    # integer powers with 0**0 = 1
    return np.where(expo == 0, 1.0 + 0j, base ** np.maximum(expo, 1))


def resolvent_closed_form(n, mu, lam):
    """Resolvent ``(lam I + Λ)^-1`` of one mode block.

    Raises
    ------
    SingularResolventError
        If ``lam**n == -mu``, i.e. ``-lam`` is an eigenvalue of the block.
    """
    n, mu = _check(n, mu)
    lam = complex(lam)
    # relative size of lam**n + mu, scaled by its larger term to avoid overflow
    if abs(lam) > 1:
        inv = 1 / lam
        gap = abs(1 + mu * inv**n) / max(1.0, mu * abs(inv) ** n)
    else:
        gap = abs(lam**n + mu) / max(mu, abs(lam) ** n)
    if gap <= 1e-14:
        raise SingularResolventError(f"lam={lam} satisfies lam**n = -mu for mu={mu}")
    return ModeBlock(n, mu, resolvent_entries(n, mu, lam))


def fractional_power_closed_form(n, mu, alpha):
    """Closed Chebyshev form of the ``alpha`` power of the mode block.

    Entry ``(i, j)`` equals
    ``(-1)**(i-j)/n * U_{n-1}(cos((alpha+i-j)π/n)) * mu**((alpha+i-j)/n)``.
    The result is Toeplitz; ``alpha = 0`` gives the identity and
    ``alpha = 1`` gives :func:`assemble_lambda`.
    """
    n, mu = _check(n, mu)
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    d = _offsets(n)
    x = (alpha + d) / n
    sign = np.where(d % 2 == 0, 1.0, -1.0)
    cheb = eval_U_shifted(n, alpha, d)
    m = sign / n * cheb * np.power(mu, x)
    return ModeBlock(n, mu, m.astype(complex))


def principal_power(matrix, alpha, cond_limit=DEFECT_COND):
    """Principal-branch power ``V diag(z**alpha) V^-1`` of a square matrix.

    The matrix is balanced by a diagonal similarity before the
    eigendecomposition; ``z**alpha = exp(alpha Log z)`` with
    ``arg z`` in ``(-π, π)``.

    Raises
    ------
    BranchCutError
        If an eigenvalue is zero or has argument ``π`` (within 1e-12).
    DiagonalizationError
        If the eigenvector matrix has condition number above ``cond_limit``.
    """
    a = np.asarray(matrix, dtype=complex)
    balanced, (scale, perm) = scipy.linalg.matrix_balance(a, permute=False, separate=True)
    z, v = np.linalg.eig(balanced)
    if np.any(z == 0) or np.any(np.abs(np.abs(np.angle(z)) - np.pi) <= 1e-12):
        raise BranchCutError("eigenvalue on the closed negative real axis")
    if np.linalg.cond(v) > cond_limit:
        raise DiagonalizationError("matrix is defective or nearly so")
    f = (v * np.exp(alpha * np.log(z))) @ np.linalg.inv(v)
    return f * scale[:, None] / scale[None, :]


def fractional_power_eig_oracle(block, alpha):
    """Fractional power of an arbitrary block by principal-branch eigendecomposition."""
    return ModeBlock(block.n, block.mu, principal_power(block.entries, alpha))


def balakrishnan_block(n, mu, alpha, quad=None):
    """Fractional power from the Balakrishnan integral.

    Integrates ``lam**(alpha-1) Λ (lam I + Λ)^-1`` entrywise, with the
    resolvent from :func:`resolvent_closed_form`. The integral is split at
    ``lam = mu**(1/n)``, the modulus of the block eigenvalues.
    """
    n, mu = _check(n, mu)
    lam_block = assemble_lambda(n, mu).entries

    def integrand(lam):
        # the form I - λ(λI+Λ)^-1 cancels badly for large λ; multiply instead
        return lam_block @ resolvent_entries(n, mu, lam)

    out = balakrishnan_integral(integrand, alpha, mu ** (1.0 / n), quad or QuadratureSpec())
    return ModeBlock(n, mu, out)


def power_semigroup_check(n, mu, alpha, beta):
    """``||Λ^alpha Λ^beta - Λ^(alpha+beta)||_2`` from the closed forms."""
    if not (0 <= alpha <= 1 and 0 <= beta <= 1 and alpha + beta <= 1):
        raise DomainError("need alpha, beta and alpha + beta in [0, 1]")
    a = fractional_power_closed_form(n, mu, alpha).entries
    b = fractional_power_closed_form(n, mu, beta).entries
    ab = fractional_power_closed_form(n, mu, alpha + beta).entries
    return float(np.linalg.norm(a @ b - ab, 2))
