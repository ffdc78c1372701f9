"""Dirichlet polyharmonic operator ``(-Δ)^m`` on ``(0, L)`` in its sine basis.

The eigenpairs are ``μ_j = (jπ/L)^(2m)`` and
``φ_j(x) = sqrt(2/L) sin(jπx/L)``; on an interval the extra boundary
conditions ``Δ^k u = 0`` of the higher-order problem leave the same basis.
Initial data are projected by composite Simpson quadrature, evolved mode by
mode and synthesized back on a spatial grid.
"""

from dataclasses import dataclass, field
import csv
import io
import json
import math
import warnings

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError
from .evolution import PhaseState, evolve
from .spectral_base import SpectralOperator

__all__ = [
    "DirichletModel",
    "ProjectionWarning",
    "eigenpairs",
    "project",
    "synthesize",
    "l2_norm",
    "PDESolution",
    "solve_pde",
]


class ProjectionWarning(UserWarning):
    """Quadrature resolution looks too coarse for the initial data."""


@dataclass(frozen=True)
class DirichletModel:
    length: float = math.pi
    m: int = 1
    modes: int = 32
    quadrature_points: int = 1025
    tolerance: float = 1e-8

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError("interval length must be positive")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError("polyharmonic order m must be a positive integer")
        if int(self.modes) != self.modes or self.modes < 1:
            raise DomainError("number of modes must be a positive integer")
        if self.quadrature_points < 5:
            raise DomainError("need at least 5 quadrature points")

    @property
    def grid(self):
        return np.linspace(0.0, self.length, self.quadrature_points)

    def eigenvalues(self):
        j = np.arange(1, self.modes + 1)
        return (j * np.pi / self.length) ** (2 * self.m)

    def operator(self):
        return SpectralOperator(
            tuple(self.eigenvalues()), f"dirichlet(L={self.length:g}, m={self.m})"
        )

    def eigenfunction(self, j):
        """``φ_j`` as a vectorized callable."""
        c = math.sqrt(2.0 / self.length)
        k = j * math.pi / self.length
        return lambda x: c * np.sin(k * np.asarray(x, dtype=float))

    def basis(self, x):
        """Samples ``φ_j(x_k)``, shape ``(modes, len(x))``."""
        x = np.asarray(x, dtype=float)
        j = np.arange(1, self.modes + 1)
        return math.sqrt(2.0 / self.length) * np.sin(np.outer(j, x) * np.pi / self.length)

    def to_dict(self):
        return {
            "length": self.length,
            "m": self.m,
            "modes": self.modes,
            "quadrature_points": self.quadrature_points,
            "tolerance": self.tolerance,
        }


def eigenpairs(model):
    """``(SpectralOperator, evaluator)``; ``evaluator(j, x)`` samples ``φ_j``."""
    return model.operator(), lambda j, x: model.eigenfunction(j)(x)


def _samples(model, data):
    x = model.grid
    if callable(data):
        vals = np.broadcast_to(np.asarray(data(x), dtype=float), x.shape)
    else:
        vals = np.asarray(data, dtype=float)
        if vals.shape != x.shape:
            raise DomainError(
                f"sampled data must match the {x.size}-point quadrature grid, got {vals.shape}"
            )
    return vals


def project(model, data, n, return_error=False):
    """Modal coefficients ``<u_i, φ_j>`` of the ``n`` initial functions.

    ``data`` holds ``u_0 .. u_{n-1}`` (callables, arrays sampled on
    ``model.grid``, or ``None`` for zero). The projection error is estimated
    by repeating the quadrature on every other grid point; when it exceeds
    ``model.tolerance`` a :class:`ProjectionWarning` is issued.
    """
    data = list(data)
    if len(data) != n:
        raise DomainError(f"expected {n} initial functions, got {len(data)}")
    x = model.grid
    phi = model.basis(x)
    coeffs = np.zeros((model.modes, n))
    coarse = np.zeros((model.modes, n))
    for i, u in enumerate(data):
        if u is None:
            continue
        vals = _samples(model, u)
        coeffs[:, i] = simpson(phi * vals, x=x, axis=1)
        coarse[:, i] = simpson(phi[:, ::2] * vals[::2], x=x[::2], axis=1)
    err = float(np.max(np.abs(coeffs - coarse))) if coeffs.size else 0.0
    if err > model.tolerance:
        warnings.warn(
            f"projection error estimate {err:.3g} exceeds tolerance {model.tolerance:g}; "
            "increase quadrature_points",
            ProjectionWarning,
            stacklevel=2,
        )
    state = PhaseState(n, model.operator(), coeffs)
    return (state, err) if return_error else state


def synthesize(model, coeffs, x):
    """``Σ_j c_j φ_j(x)`` for coefficient arrays of shape ``(..., modes)``."""
    return np.asarray(coeffs) @ model.basis(x)


def l2_norm(values, x):
    """Simpson approximation of the L2 norm of samples on grid ``x``."""
    return float(np.sqrt(simpson(np.abs(values) ** 2, x=x)))


@dataclass(frozen=True, eq=False)
class PDESolution:
    x: np.ndarray
    times: np.ndarray
    field: np.ndarray
    trajectory: object
    projection_error: float
    model: DirichletModel
    warnings: tuple = field(default_factory=tuple)

    def l2_trace(self):
        """L2 norm of the field at every time."""
        return np.array([l2_norm(u, self.x) for u in self.field])

    def to_csv(self, header=None):
        """Long format ``x, t, u``; ``header`` dict goes into ``#`` comment lines."""
        buf = io.StringIO()
        head = {"model": self.model.to_dict()}
        head.update(header or {})
        for key, value in head.items():
            buf.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "t", "u"])
        for t, row in zip(self.times, self.field):
            for xv, u in zip(self.x, row):
                writer.writerow([repr(float(xv)), repr(float(t)), repr(float(u))])
        return buf.getvalue()

    def to_dict(self):
        return {
            "model": self.model.to_dict(),
            "x": self.x.tolist(),
            "times": self.times.tolist(),
            "field": self.field.tolist(),
            "y_norm": self.trajectory.norms.tolist(),
            "projection_error": self.projection_error,
            "warnings": list(self.warnings),
        }


def solve_pde(model, n, alpha, data, times, x):
    """Solve ``∂_t^n u + (-Δ)^m u = 0`` in its fractional first-order form.

    Projects the initial data, evolves the modal system under
    ``exp(-t Λ^alpha)`` and synthesizes the first component on ``x``.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ProjectionWarning)
        state, err = project(model, data, n, return_error=True)
    notes = tuple(str(w.message) for w in caught)
    for msg in notes:
        warnings.warn(msg, ProjectionWarning, stacklevel=2)
    traj = evolve(state, alpha, times)
    x = np.asarray(x, dtype=float)
    first = traj.coeffs()[:, :, 0]
    u = synthesize(model, first, x)
    if np.iscomplexobj(u):
        u = u.real
    return PDESolution(x, traj.times, u, traj, err, model, notes)
