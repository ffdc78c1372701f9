"""Modal solution of ``du/dt + Λ^alpha u = 0`` on the truncated phase space.

The state holds, for every mode ``j`` of ``A`` and component ``i``, the
coefficient of ``v_i``. Component ``i`` is measured in ``X^((n-i)/n)``, so
the phase-space norm weights mode ``j`` by ``μ_j**((n-i)/n)``.
Each mode evolves independently by the exact block exponential.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import csv
import io
import json

import numpy as np
import scipy.linalg

from .block_operator import DEFECT_COND, fractional_power_closed_form, mode_scaling
from .errors import DomainError
from .spectrum import BOUNDARY, DECAYING, UNSTABLE, classify_generation, max_real_part

__all__ = [
    "PhaseState",
    "Trajectory",
    "y_norm",
    "random_state",
    "mode_propagator",
    "evolve",
    "semigroup_property_check",
    "rk4_reference",
    "fit_growth_rate",
    "DichotomyReport",
    "dichotomy_report",
]


def norm_exponents(n):
    """Exponents ``(n-i)/n``, ``i = 1..n``, of the component norms."""
    return (n - 1 - np.arange(n)) / n


@dataclass(frozen=True, eq=False)
class PhaseState:
    n: int
    op: object
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (self.op.count, self.n):
            raise DomainError(f"coeffs must have shape ({self.op.count}, {self.n}), got {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, n, op):
        return cls(n, op, np.zeros((op.count, n)))

    @property
    def weights(self):
        return norm_exponents(self.n)

    def weight_matrix(self):
        """``μ_j**((n-i)/n)`` for every (mode, component)."""
        return self.op.mu[:, None] ** self.weights[None, :]

    def component_norms(self):
        return _scaled_norm(np.abs(self.weight_matrix() * self.coeffs), axis=0)

    def __add__(self, other):
        return PhaseState(self.n, self.op, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return PhaseState(self.n, self.op, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return PhaseState(self.n, self.op, scalar * self.coeffs)

    __rmul__ = __mul__


def _scaled_norm(a, axis):
    # Euclidean norm along ``axis`` without overflow in the squares; the
    # fixed summation order keeps traces reproducible
    top = np.max(a, axis=axis, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    return np.squeeze(safe, axis) * np.sqrt(np.add.reduce((a / safe) ** 2, axis=axis))


def y_norm(state):
    """Phase-space norm ``sqrt(Σ_i Σ_j μ_j^(2(n-i)/n) |c_ji|^2)``."""
    return float(_scaled_norm(state.component_norms(), axis=0))


def random_state(n, op, seed=0):
    """Complex Gaussian coefficients rescaled to unit phase-space norm."""
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((op.count, n)) + 1j * rng.standard_normal((op.count, n))
    state = PhaseState(n, op, c)
    return state * (1.0 / y_norm(state))


def mode_propagator(n, mu, alpha, times):
    """``exp(-t B)`` for the ``alpha`` power block ``B`` of one mode.

    ``B`` is balanced by :func:`mode_scaling` and diagonalized; when the
    eigenvector matrix is worse conditioned than ``DEFECT_COND`` the
    exponential falls back to scaling and squaring.

    Returns an array of shape ``(len(times), n, n)``.
    """
    times = np.asarray(times, dtype=float)
    d = mode_scaling(n, mu)
    b = fractional_power_closed_form(n, mu, alpha).entries
    balanced = b * d[None, :] / d[:, None]
    z, v = np.linalg.eig(balanced)
    if np.linalg.cond(v) <= DEFECT_COND:
        vinv = np.linalg.inv(v)
        e = np.exp(-times[:, None] * z[None, :])
        p = np.einsum("ik,tk,kj->tij", v, e, vinv)
    else:
        p = np.array([scipy.linalg.expm(-t * balanced) for t in times])
    return p * d[None, :, None] / d[None, None, :]


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: tuple
    norms: np.ndarray
    component_norms: np.ndarray
    alpha: float = None

    def coeffs(self):
        """Stacked coefficients, shape ``(len(times), J, n)``."""
        return np.stack([s.coeffs for s in self.states])

    def to_csv(self, header=None):
        """CSV with columns ``t, y_norm, norm_1 .. norm_n``.

        ``header`` (a dict) is written as ``# key: json`` comment lines.
        """
        buf = io.StringIO()
        for key, value in (header or {}).items():
            buf.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        n = self.component_norms.shape[1]
        writer.writerow(["t", "y_norm"] + [f"norm_{i + 1}" for i in range(n)])
        for t, y, comps in zip(self.times, self.norms, self.component_norms):
            writer.writerow([repr(float(t)), repr(float(y))] + [repr(float(c)) for c in comps])
        return buf.getvalue()

    def to_dict(self, include_coeffs=False):
        doc = {
            "alpha": self.alpha,
            "times": [float(t) for t in self.times],
            "y_norm": [float(y) for y in self.norms],
            "component_norms": self.component_norms.tolist(),
        }
        if include_coeffs:
            c = self.coeffs()
            doc["coeffs_re"] = c.real.tolist()
            doc["coeffs_im"] = c.imag.tolist()
        return doc


def _check_times(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("times must be a nonempty 1-D sequence")
    if times[0] != 0 or np.any(np.diff(times) < 0):
        raise DomainError("times must start at 0 and be ascending")
    return times


def evolve(initial, alpha, times, threads=1):
    """Evolve ``initial`` under ``exp(-t Λ^alpha)`` at the given times.

    Parameters
    ----------
    initial : PhaseState
    alpha : float
        Power in ``[0, 1]``.
    times : sequence of float
        Ascending, starting at 0.
    threads : int
        Worker threads over modes (0 = let the executor decide). The
        output does not depend on this value.
    """
    times = _check_times(times)
    n, op = initial.n, initial.op

    def one(j):
        p = mode_propagator(n, op.eigenvalues[j], alpha, times)
        return p @ initial.coeffs[j]

    modes = range(op.count)
    if threads == 1:
        per_mode = [one(j) for j in modes]
    else:
        with ThreadPoolExecutor(max_workers=threads or None) as pool:
            per_mode = list(pool.map(one, modes))
    coeffs = np.stack(per_mode, axis=1)  # (T, J, n)
    coeffs[0] = initial.coeffs
    states = tuple(PhaseState(n, op, c) for c in coeffs)
    comps = np.array([s.component_norms() for s in states])
    norms = _scaled_norm(comps, axis=1)
    return Trajectory(times, states, norms, comps, alpha)


def semigroup_property_check(initial, alpha, t, s):
    """``||u(t+s) - S(s) u(t)||_Y``, which vanishes for an exact semigroup."""
    if t < 0 or s < 0:
        raise DomainError("t and s must be nonnegative")
    direct = evolve(initial, alpha, [0.0, t + s]).states[-1]
    mid = evolve(initial, alpha, [0.0, t]).states[-1]
    twostep = evolve(mid, alpha, [0.0, s]).states[-1]
    return y_norm(direct - twostep)


def rk4_reference(matrix, x0, t, max_step_norm=0.1):
    """Fixed-step RK4 for ``x' = -M x`` up to time ``t``.

    The step count is chosen so that ``h * ||M||_2 <= max_step_norm``.
    Used only as an independent check of the exponentials.
    """
    m = np.asarray(matrix, dtype=complex)
    x = np.array(x0, dtype=complex)
    scale = np.linalg.norm(m, 2)
    steps = max(1, int(np.ceil(t * scale / max_step_norm)))
    h = t / steps

    def f(y):
        return -m @ y

    for _ in range(steps):
        k1 = f(x)
        k2 = f(x + 0.5 * h * k1)
        k3 = f(x + 0.5 * h * k2)
        k4 = f(x + h * k3)
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return x


def fit_growth_rate(times, norms, tail=0.5):
    """Least-squares slope of ``log norm`` over the last ``tail`` fraction of times."""
    return _fit_log_slope(times, np.log(np.asarray(norms, dtype=float)), tail)


def _fit_log_slope(times, log_norms, tail=0.5):
    times = np.asarray(times, dtype=float)
    keep = times >= times[-1] * (1 - tail)
    return float(np.polyfit(times[keep], np.asarray(log_norms)[keep], 1)[0])


@dataclass(frozen=True)
class DichotomyReport:
    classification: str
    growth_rate_estimate: float
    predicted_classification: str
    predicted_rate: float
    band: float
    seed: int

    @property
    def agrees(self):
        return self.classification == self.predicted_classification


def dichotomy_report(op, n, alpha, horizon, samples=801, seed=0, band_factor=5.0):
    """Classify decay or growth from a simulated trajectory.

    A random unit-norm state is evolved over ``[0, horizon]`` and the slope
    of ``log ||u(t)||_Y`` is fitted on the second half. The state is
    renormalized after every sample step and the log-norm accumulated, so
    long horizons never overflow. Slopes within
    ``band_factor / horizon`` of zero count as ``"boundary"`` (bounded, no
    exponential trend). The predicted classification and rate
    (``max Re σ(-Λ^alpha)``) are reported alongside.
    """
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    state = random_state(n, op, seed)
    times = np.linspace(0.0, horizon, samples)
    step = [mode_propagator(n, mu, alpha, [times[1]])[0] for mu in op.eigenvalues]
    coeffs = state.coeffs.copy()
    log_norms = np.zeros(samples)
    for k in range(1, samples):
        coeffs = np.stack([p @ c for p, c in zip(step, coeffs)])
        size = y_norm(PhaseState(n, op, coeffs))
        log_norms[k] = log_norms[k - 1] + np.log(size)
        coeffs /= size
    rate = _fit_log_slope(times, log_norms)
    band = band_factor / horizon
    if rate > band:
        label = UNSTABLE
    elif rate < -band:
        label = DECAYING
    else:
        label = BOUNDARY
    return DichotomyReport(
        label, rate, classify_generation(n, alpha), max_real_part(n, alpha, op), band, seed
    )
