"""Eigenvalue locations of the block operator and its fractional powers.

For every eigenvalue ``μ_j`` of ``A`` the block has ``n`` eigenvalues of
modulus ``μ_j**(1/n)`` on the rays ``±(n-2k-1)π/n``, ``k = 0..⌊(n-1)/2⌋``.
The principal ``alpha`` power scales the angles by ``alpha``; the negated
operator rotates them by ``π``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import csv
import io
import math

import numpy as np

from .block_operator import fractional_power_closed_form, resolvent_entries
from .errors import DomainError

__all__ = [
    "TAGS",
    "SpectrumEntry",
    "SpectrumReport",
    "eigenvalues_formula",
    "sectoriality_threshold",
    "classify_generation",
    "max_real_part",
    "numeric_spectrum_check",
    "match_multisets",
    "ResolventScan",
    "resolvent_bound_scan",
    "sector_half_angle",
    "semilines",
]

TAGS = ("lambda", "minus_lambda", "lambda_alpha", "minus_lambda_alpha")

DECAYING = "decaying-analytic"
BOUNDARY = "boundary"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class SpectrumEntry:
    """One eigenvalue: mode ``j`` (1-based), branch ``k`` and its sign.

    ``conjugate`` marks the ``+`` branch angle of a conjugate pair; when the
    two branch angles coincide (``n`` odd, ``k = (n-1)/2``) a single entry is
    kept with ``conjugate=False``. ``angle_over_pi`` lies in ``[0, 2)`` and is
    exact when ``alpha`` is a :class:`fractions.Fraction`.
    """

    j: int
    k: int
    conjugate: bool
    value: complex
    angle_over_pi: object
    multiplicity: int = 1

    @property
    def modulus(self):
        return abs(self.value)

    @property
    def angle(self):
        return float(self.angle_over_pi) * math.pi


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    alpha: object
    operator_tag: str
    entries: tuple = field(default_factory=tuple)

    def values(self, j=None):
        return np.array([e.value for e in self.entries if j is None or e.j == j])

    def angles_over_pi(self):
        """Distinct branch angles (in units of π), ascending."""
        return sorted({e.angle_over_pi for e in self.entries})

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["j", "k", "conjugate", "re", "im", "modulus", "angle"])
        for e in self.entries:
            writer.writerow(
                [e.j, e.k, int(e.conjugate), repr(e.value.real), repr(e.value.imag),
                 repr(e.modulus), repr(e.angle)]
            )
        return buf.getvalue()


def _check_n(n):
    if int(n) != n or n < 2:
        raise DomainError(f"system order n must be an integer >= 2, got {n!r}")
    return int(n)


def _mod2(x):
    # reduce an angle in units of π to [0, 2), keeping Fractions exact
    return x - 2 * math.floor(x / 2)


def eigenvalues_formula(n, alpha, op, tag="minus_lambda_alpha"):
    """Eigenvalues predicted by the closed formulas for every mode of ``op``.

    Parameters
    ----------
    n : int
        System order.
    alpha : float or Fraction
        Power in ``(0, 1]``; ignored (taken as 1) for the tags ``lambda``
        and ``minus_lambda``.
    op : SpectralOperator
    tag : str
        One of :data:`TAGS`.
    """
    n = _check_n(n)
    if tag not in TAGS:
        raise DomainError(f"unknown operator tag {tag!r}")
    if tag in ("lambda", "minus_lambda"):
        alpha = 1
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    shift = 1 if tag.startswith("minus") else 0
    entries = []
    for j, mu in enumerate(op.eigenvalues, start=1):
        r = mu ** (float(alpha) / n)
        for k in range((n - 1) // 2 + 1):
            spread = Fraction(n - 2 * k - 1, n) * alpha if isinstance(alpha, Fraction) \
                else (n - 2 * k - 1) * alpha / n
            signs = (1,) if n - 2 * k - 1 == 0 else (-1, 1)
            for sgn in signs:
                # the minus_lambda_alpha "-" angle is π - spread, i.e. sign -1 here
                angle = _mod2(shift + sgn * spread)
                value = r * complex(math.cos(math.pi * angle), math.sin(math.pi * angle))
                entries.append(SpectrumEntry(j, k, sgn > 0 and len(signs) == 2, value, angle))
    return SpectrumReport(n, alpha, tag, tuple(entries))


def sectoriality_threshold(n):
    """Largest power for which all eigenvalues of ``-Λ^alpha`` lie in Re < 0."""
    n = _check_n(n)
    return n / (2 * (n - 1))


def classify_generation(n, alpha, tol=1e-12):
    """Sign of the largest real part among the eigenvalue rays of ``-Λ^alpha``.

    Returns ``"decaying-analytic"`` if every ray lies in the open left half
    plane, ``"boundary"`` if the extreme rays lie on the imaginary axis
    (within ``tol``), and ``"unstable"`` otherwise.
    """
    n = _check_n(n)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    top = max(math.cos(math.pi * (n - (n - 2 * k - 1) * alpha) / n)
              for k in range((n - 1) // 2 + 1))
    if top < -tol:
        return DECAYING
    if top <= tol:
        return BOUNDARY
    return UNSTABLE


def max_real_part(n, alpha, op):
    """``max Re σ(-Λ^alpha)`` over the modes of ``op``."""
    rep = eigenvalues_formula(n, alpha, op, "minus_lambda_alpha")
    return float(max(e.value.real for e in rep.entries))


def match_multisets(computed, predicted):
    """Greedy nearest-neighbour matching; returns the largest matched distance.

    ``predicted`` is consumed in order, so among equidistant candidates the
    one listed first (lowest branch index) wins.
    """
    pool = list(np.asarray(computed, dtype=complex))
    if len(pool) != len(predicted):
        raise DomainError("multisets have different sizes")
    worst = 0.0
    for p in predicted:
        dist = [abs(c - p) for c in pool]
        i = int(np.argmin(dist))
        worst = max(worst, dist[i])
        pool.pop(i)
    return float(worst)


def numeric_spectrum_check(n, alpha, op, relative=False):
    """Largest distance between dense eigenvalues of the closed-form blocks
    and the formula eigenvalues of ``Λ^alpha``, over all modes.

    With ``relative=True`` each distance is divided by the mode's
    eigenvalue modulus ``μ_j**(alpha/n)``.
    """
    rep = eigenvalues_formula(n, alpha, op, "lambda_alpha")
    worst = 0.0
    for j, mu in enumerate(op.eigenvalues, start=1):
        block = fractional_power_closed_form(n, mu, float(alpha)).entries
        dist = match_multisets(np.linalg.eigvals(block), rep.values(j))
        if relative:
            dist /= mu ** (float(alpha) / n)
        worst = max(worst, dist)
    return worst


@dataclass(frozen=True)
class ResolventScan:
    sup_bound: float
    argmax_lambda: float
    argmax_mode: int
    bounds: np.ndarray


def resolvent_bound_scan(n, op, lambda_grid, weighted=True):
    """``(1 + λ) ||(λ I + Λ)^-1||`` maximised over a grid of ``λ >= 0``.

    The norm is the operator norm on the truncated phase space: with
    ``weighted=True`` component ``i`` carries the weight ``μ**((n-i)/n)`` of
    the phase-space norm, otherwise the plain Euclidean norm is used. The
    operator is block diagonal, so its norm is the largest block norm.
    ``bounds`` holds the per-λ maximum over modes.
    """
    n = _check_n(n)
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.size == 0:
        raise DomainError("lambda grid must be nonempty")
    if np.any(grid < 0):
        raise DomainError("lambda grid must be nonnegative")
    expo = (n - 1 - np.arange(n)) / n
    bounds = np.zeros(grid.size)
    modes = np.zeros(grid.size, dtype=int)
    for j, mu in enumerate(op.eigenvalues, start=1):
        r = resolvent_entries(n, mu, grid)
        if weighted:
            w = mu**expo
            r = r * w[:, None] / w[None, :]
        norms = np.linalg.norm(r, ord=2, axis=(-2, -1)) * (1 + grid)
        better = norms > bounds
        bounds = np.where(better, norms, bounds)
        modes = np.where(better, j, modes)
    i = int(np.argmax(bounds))
    return ResolventScan(float(bounds[i]), float(grid[i]), int(modes[i]), bounds)


def sector_half_angle(K):
    """Half-opening ``arcsin(1/(2K))`` of the resolvent sector for a
    positive-type constant ``K >= 1`` (reporting only)."""
    if K < 1:
        raise DomainError("positive-type constant must be >= 1")
    return math.asin(1 / (2 * K))


def semilines(report):
    """Rays of a spectrum report: one row per distinct angle.

    Returns a list of dicts with the branch, angle and the smallest and
    largest modulus reached on that ray, ready for plotting.
    """
    rays = {}
    for e in report.entries:
        ray = rays.setdefault(e.angle_over_pi, {"k": e.k, "conjugate": e.conjugate,
                                                "angle_over_pi": e.angle_over_pi,
                                                "r_min": math.inf, "r_max": 0.0})
        ray["r_min"] = min(ray["r_min"], e.modulus)
        ray["r_max"] = max(ray["r_max"], e.modulus)
    return [rays[a] for a in sorted(rays)]
