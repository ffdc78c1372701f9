"""The base operator ``A`` in its eigenbasis, scalar powers and the
Balakrishnan integral.

A positive self-adjoint operator with compact resolvent is represented only
by its ascending eigenvalue list; coordinates are taken in the eigenbasis,
so every function of ``A`` acts diagonally.
"""

from dataclasses import dataclass
import json
import math

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "SpectralOperator",
    "QuadratureSpec",
    "scalar_power",
    "balakrishnan_scalar",
    "balakrishnan_integral",
    "MomentReport",
    "moment_ratio",
    "moment_inequality_check",
]


@dataclass(frozen=True)
class SpectralOperator:
    """Positive diagonal operator given by its eigenvalues ``0 < μ_1 <= ... <= μ_J``."""

    eigenvalues: tuple
    label: str = ""

    def __post_init__(self):
        mu = tuple(float(m) for m in np.ravel(self.eigenvalues))
        if not mu:
            raise DomainError("a SpectralOperator needs at least one eigenvalue")
        if not all(math.isfinite(m) and m > 0 for m in mu):
            raise DomainError("eigenvalues must be finite and positive")
        if any(b < a for a, b in zip(mu, mu[1:])):
            raise DomainError("eigenvalues must be in ascending order")
        object.__setattr__(self, "eigenvalues", mu)

    @property
    def count(self):
        return len(self.eigenvalues)

    @property
    def mu(self):
        """Eigenvalues as a float array (a fresh copy)."""
        return np.array(self.eigenvalues)

    def power(self, beta):
        """Diagonal of ``A**beta``."""
        return self.mu**beta

    def truncate(self, count):
        return SpectralOperator(self.eigenvalues[:count], self.label)

    def to_dict(self):
        return {"label": self.label, "eigenvalues": list(self.eigenvalues)}

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(tuple(doc["eigenvalues"]), str(doc.get("label", "")))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed operator document: {exc}") from exc

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretization settings for the Balakrishnan integral.

    ``scheme`` is ``"gauss-legendre-split"`` (default) or ``"tanh-sinh"``.
    ``max_refinements`` caps the number of panel doublings.
    """

    nodes_per_panel: int = 64
    scheme: str = "gauss-legendre-split"
    tolerance: float = 1e-10
    max_refinements: int = 8

    def __post_init__(self):
        if self.nodes_per_panel < 4:
            raise DomainError("nodes_per_panel must be at least 4")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.scheme not in ("gauss-legendre-split", "tanh-sinh"):
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")


def scalar_power(mu, beta):
    """Positive real power ``mu**beta`` of a positive number."""
    if not mu > 0:
        raise DomainError(f"scalar_power needs mu > 0, got {mu!r}")
    return math.exp(beta * math.log(mu))


def _bcast(w, vals):
    return w.reshape(w.shape + (1,) * (np.ndim(vals) - 1))


def _gauss_panels(f, panels, nodes, weights):
    # composite Gauss-Legendre on [0, 1] with uniform panels
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    s = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    vals = f(s)
    return np.sum(_bcast(w, vals) * vals, axis=0)


def _split_gauss_estimator(g, alpha, scale, quad):
    # head λ = c s^(1/α):      λ^(α-1) dλ = c^α (1/α) ds
    # tail λ = c s^(-1/(1-α)): λ^(α-1) dλ = c^α b s^(-b) ds,  b = 1/(1-α)
    nodes, weights = np.polynomial.legendre.leggauss(quad.nodes_per_panel)
    a, b = 1.0 / alpha, 1.0 / (1.0 - alpha)

    def head(s):
        return g(scale * s**a)

    def tail(s):
        u = s ** (-b)
        vals = g(scale * u)
        return _bcast(u, vals) * vals

    def estimate(level):
        panels = 2**level
        h = a * _gauss_panels(head, panels, nodes, weights)
        t = b * _gauss_panels(tail, panels, nodes, weights)
        return scale**alpha * (h + t)

    return estimate


def _tanh_sinh_estimator(g, alpha, scale, quad):
    # λ = c exp(sinh τ): λ^(α-1) dλ = c^α exp(α sinh τ) cosh τ dτ, decaying
    # doubly exponentially at both ends; trapezoid rule in τ
    # the integrand falls like exp(-min(α, 1-α)|sinh τ|); stop near 1e-20
    tau_max = math.asinh(46.0 / min(alpha, 1.0 - alpha))

    def estimate(level):
        count = quad.nodes_per_panel * 2**level
        tau, h = np.linspace(-tau_max, tau_max, count + 1, retstep=True)
        x = np.sinh(tau)
        w = h * np.exp(alpha * x) * np.cosh(tau)
        vals = g(scale * np.exp(x))
        return scale**alpha * np.sum(_bcast(w, vals) * vals, axis=0)

    return estimate


def balakrishnan_integral(g, alpha, scale=1.0, quad=None):
    """Approximate ``(sin απ/π) ∫_0^∞ λ^(α-1) g(λ) dλ``.

    ``g`` maps a 1-D array of λ values to an array whose leading axis runs
    over λ; trailing axes (matrix entries) are integrated independently.
    ``g`` must be bounded near 0 and decay like ``1/λ``. The integral is
    split at ``λ = scale``, which should be the natural size of the
    integrand's features (``μ`` for a scalar, ``μ**(1/n)`` for a mode block).

    Panels are doubled until the largest entrywise relative change between
    successive estimates drops below ``quad.tolerance``.

    Raises
    ------
    ConvergenceError
        When ``quad.max_refinements`` doublings do not reach the tolerance.
    """
    quad = quad or QuadratureSpec()
    if not 0 < alpha < 1:
        raise DomainError(f"the Balakrishnan integral needs 0 < alpha < 1, got {alpha!r}")
    if quad.scheme == "tanh-sinh":
        estimate = _tanh_sinh_estimator(g, alpha, scale, quad)
    else:
        estimate = _split_gauss_estimator(g, alpha, scale, quad)

    factor = math.sin(alpha * math.pi) / math.pi
    prev = factor * estimate(0)
    err = math.inf
    for level in range(1, quad.max_refinements + 1):
        cur = factor * estimate(level)
        ref = np.maximum(np.abs(cur), np.finfo(float).tiny)
        err = float(np.max(np.abs(cur - prev) / ref))
        if err < quad.tolerance:
            return cur
        prev = cur
    raise ConvergenceError(
        f"Balakrishnan quadrature did not reach tolerance {quad.tolerance:g} "
        f"after {quad.max_refinements} refinements (last change {err:.3g})",
        estimate=prev,
        error=err,
    )


def balakrishnan_scalar(mu, alpha, quad=None):
    """``mu**alpha`` from the Balakrishnan integral of ``μ/(λ+μ)``."""
    if not mu > 0:
        raise DomainError(f"balakrishnan_scalar needs mu > 0, got {mu!r}")
    return float(balakrishnan_integral(lambda lam: mu / (lam + mu), alpha, mu, quad))


@dataclass(frozen=True)
class MomentReport:
    alpha: float
    trials: int
    max_ratio: float
    min_ratio: float
    seed: int


def moment_ratio(op, alpha, x):
    """``||A^α x|| / (||x||^(1-α) ||A x||^α)`` for one modal vector ``x``."""
    mu = op.mu
    x = np.asarray(x)
    num = np.linalg.norm(mu**alpha * x)
    den = np.linalg.norm(x) ** (1 - alpha) * np.linalg.norm(mu * x) ** alpha
    return float(num / den)


def moment_inequality_check(op, alpha, trials, seed=0):
    """Largest moment-inequality ratio over random modal vectors.

    For a positive diagonal operator Hölder's inequality bounds the ratio
    by 1, with equality on eigenvectors.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    ratios = [
        moment_ratio(op, alpha, rng.standard_normal(op.count) + 1j * rng.standard_normal(op.count))
        for _ in range(trials)
    ]
    return MomentReport(alpha, trials, max(ratios), min(ratios), seed)
