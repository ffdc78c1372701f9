"""Invariant suite behind ``fracblocks validate``.

Each check returns its largest residual over the configured grid together
with the tolerance it is held to.
"""

from dataclasses import asdict, dataclass
import math

import numpy as np

from .block_operator import (
    assemble_lambda,
    balakrishnan_block,
    fractional_power_closed_form,
    fractional_power_eig_oracle,
    is_toeplitz,
    power_semigroup_check,
    resolvent_closed_form,
)
from .chebyshev import eval_U
from .evolution import dichotomy_report, random_state, semigroup_property_check
from .laplacian import DirichletModel, l2_norm, solve_pde, synthesize
from .reduction import (
    char_coeffs,
    det_identity_check,
    exterior_trace,
    faddeev_leverrier,
    trace_identity_check,
)
from .spectral_base import (
    QuadratureSpec,
    SpectralOperator,
    balakrishnan_scalar,
    moment_inequality_check,
)
from .spectrum import (
    classify_generation,
    eigenvalues_formula,
    numeric_spectrum_check,
    sectoriality_threshold,
)

DEFAULT_GRID = {
    "orders": [2, 3, 4, 5, 6],
    "alphas": [0.1, 0.25, 0.5, 0.75, 0.9],
    "mus": [0.5, 1.0, 2.0, 17.5, 1e4],
}


@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool


def _rel(a, b):
    return float(np.max(np.abs(a - b) / np.abs(b)))


def _chebyshev(rng):
    worst = 0.0
    x = rng.uniform(-2, 2, 100) + 1j * rng.uniform(-2, 2, 100)
    theta = rng.uniform(0, np.pi, 200)
    for k in range(51):
        u = eval_U(k, x)
        worst = max(worst, float(np.max(np.abs(eval_U(k, -x) - (-1) ** k * u) / (1 + np.abs(u)))))
        worst = max(worst, float(np.max(np.abs(eval_U(k, np.cos(theta)) * np.sin(theta)
                                               - np.sin((k + 1) * theta)))))
        worst = max(worst, abs(eval_U(k, 1.0) - (k + 1)), abs(eval_U(k, -1.0) - (-1) ** k * (k + 1)))
    return worst


def run_suite(grid=None, seed=0, quad=None, tolerance=None):
    """Run every invariant check; returns a list of :class:`CheckResult`.

    ``tolerance`` (if given) replaces every per-check tolerance.
    """
    g = dict(DEFAULT_GRID)
    g.update(grid or {})
    quad = quad or QuadratureSpec()
    rng = np.random.default_rng(seed)
    orders, alphas, mus = g["orders"], g["alphas"], g["mus"]
    results = []

    def record(name, residual, tol):
        tol = tol if tolerance is None else tolerance
        results.append(CheckResult(name, float(residual), float(tol), bool(residual <= tol)))

    record("chebyshev_identities", _chebyshev(rng), 1e-10)

    worst = 0.0
    for mu in mus:
        for a in alphas:
            worst = max(worst, abs(balakrishnan_scalar(mu, a, quad) / mu**a - 1))
    record("balakrishnan_scalar", worst, 1e-6)

    dirichlet = DirichletModel(modes=64).operator()
    worst = max(moment_inequality_check(dirichlet, a, 200, seed).max_ratio for a in (0.25, 0.5, 0.75))
    record("moment_inequality_excess", max(worst - 1.0, 0.0), 1e-12)

    eig_w = quad_w = end_w = toep_w = semi_w = res_w = 0.0
    for n in orders:
        for mu in mus:
            for a in alphas:
                c = fractional_power_closed_form(n, mu, a).entries
                if not is_toeplitz(c):
                    toep_w = max(toep_w, 1.0)
                eig_w = max(eig_w, _rel(fractional_power_eig_oracle(assemble_lambda(n, mu), a).entries, c))
                quad_w = max(quad_w, _rel(balakrishnan_block(n, mu, a, quad).entries, c))
            end_w = max(
                end_w,
                float(np.max(np.abs(fractional_power_closed_form(n, mu, 0).entries - np.eye(n)))),
                float(np.max(np.abs(fractional_power_closed_form(n, mu, 1).entries
                                    - assemble_lambda(n, mu).entries))),
            )
            for _ in range(4):
                a, b = sorted(rng.uniform(0, 1, 2))
                a, b = a, b - a
                ref = np.linalg.norm(fractional_power_closed_form(n, mu, a + b).entries, 2)
                semi_w = max(semi_w, power_semigroup_check(n, mu, a, b) / ref)
            lam_block = assemble_lambda(n, mu).entries
            for lam in list(np.linspace(0, 10 * mu ** (1 / n), 10)) + [mu ** (1 / n) * (0.5 + 1j)]:
                r = resolvent_closed_form(n, mu, lam).entries
                res_w = max(res_w, float(np.max(np.abs((lam * np.eye(n) + lam_block) @ r - np.eye(n)))))
    record("closed_form_vs_eigendecomposition", eig_w, 1e-9)
    record("closed_form_vs_balakrishnan", quad_w, 1e-5)
    record("endpoint_limits", end_w, 1e-11)
    record("toeplitz_structure", toep_w, 0.0)
    record("power_law", semi_w, 1e-9)
    record("resolvent_residual", res_w, 1e-12)

    op = SpectralOperator(tuple(sorted(mus)))
    spec_w = max(numeric_spectrum_check(n, a, op, relative=True) for n in orders for a in alphas)
    record("spectrum_formula_relative", spec_w, 1e-8)
    mod_w = 0.0
    for n in orders:
        for a in alphas:
            for e in eigenvalues_formula(n, a, op, "lambda_alpha").entries:
                mod_w = max(mod_w, abs(e.modulus / op.eigenvalues[e.j - 1] ** (a / n) - 1))
    record("modulus_law", mod_w, 1e-12)

    flips = 0
    for n in (3, 4, 5):
        th = sectoriality_threshold(n)
        flips += classify_generation(n, th - 0.01) != "decaying-analytic"
        flips += classify_generation(n, th + 0.01) != "unstable"
    record("threshold_flip_failures", flips, 0)

    tr_w = det_w = cp_w = 0.0
    for n in orders:
        for mu in mus:
            for a in alphas + [1.0]:
                tr_w = max(tr_w, trace_identity_check(n, a, mu) / (1 + mu ** (a / n)))
                d = det_identity_check(n, a, mu)
                det_w = max(det_w, d.residual / mu**a, d.cofactor_residual / mu**a)
                cc = char_coeffs(n, a, mu)
                fl = faddeev_leverrier(fractional_power_closed_form(n, mu, a).entries)
                cp_w = max(cp_w, float(np.max(np.abs(cc.coefficients - fl)
                                              / np.maximum(np.abs(fl), 1.0))))
    record("trace_identity", tr_w, 1e-10)
    record("det_identity", det_w, 1e-10)
    record("char_poly_vs_faddeev_leverrier", cp_w, 1e-9)

    ext_w = 0.0
    for _ in range(20):
        dim = int(rng.integers(3, 9))
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        ev = np.linalg.eigvals(m)
        for k in range(1, dim + 1):
            brute = np.poly(ev)[k] * (-1) ** k
            ext_w = max(ext_w, abs(exterior_trace(m, k) - brute) / max(abs(brute), 1.0))
    record("exterior_trace", ext_w, 1e-9)

    small = DirichletModel(modes=6).operator()
    sg_w = 0.0
    for n in (2, 3, 4):
        for a in (0.0, 0.3, 0.7, 1.0):
            st = random_state(n, small, seed)
            sg_w = max(sg_w, semigroup_property_check(st, a, 0.7, 0.4))
    record("evolution_semigroup", sg_w, 1e-10)

    disagree = 0
    for n in (3, 4, 5):
        th = sectoriality_threshold(n)
        for a in (th - 0.01, th + 0.01):
            disagree += not dichotomy_report(small, n, a, 2000.0, seed=seed).agrees
    record("dichotomy_disagreements", disagree, 0)

    model = DirichletModel(modes=4)
    x = np.linspace(0, math.pi, 513)
    t = np.linspace(0, 5, 11)
    sol = solve_pde(model, 2, 1.0, [model.eigenfunction(1), None], t, x)
    exact = np.cos(t)[:, None] * model.eigenfunction(1)(x)[None, :]
    record("pde_wave_mode_l2", max(l2_norm(u - v, x) for u, v in zip(sol.field, exact)), 1e-9)

    model = DirichletModel(modes=64)
    c = rng.standard_normal(64)
    record("parseval", abs(l2_norm(synthesize(model, c, x), x) - np.linalg.norm(c)), 1e-8)
    return results


def report(results):
    return {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
