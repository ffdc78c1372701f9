import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import simpson

from fracblocks.errors import DomainError
from fracblocks.evolution import mode_propagator
from fracblocks.laplacian import (
    DirichletModel,
    ProjectionWarning,
    eigenpairs,
    l2_norm,
    project,
    solve_pde,
    synthesize,
)


def test_eigenvalue_examples():
    j = np.arange(1, 9)
    np.testing.assert_allclose(DirichletModel(modes=8).eigenvalues(), j**2, rtol=1e-14)
    np.testing.assert_allclose(DirichletModel(m=2, modes=8).eigenvalues(), j**4, rtol=1e-14)
    np.testing.assert_allclose(DirichletModel(length=2.0, modes=3).eigenvalues(),
                               (j[:3] * np.pi / 2) ** 2, rtol=1e-14)


def test_orthonormality():
    model = DirichletModel(modes=12, quadrature_points=2049)
    x = model.grid
    phi = model.basis(x)
    gram = simpson(phi[:, None, :] * phi[None, :, :], x=x, axis=-1)
    np.testing.assert_allclose(gram, np.eye(12), atol=1e-10)


def test_eigenpairs_evaluator():
    op, phi = eigenpairs(DirichletModel(modes=3))
    assert op.eigenvalues == (1.0, 4.0, 9.0)
    assert phi(2, math.pi / 4) == pytest.approx(math.sqrt(2 / math.pi))


def test_project_single_mode():
    model = DirichletModel(modes=8)
    st = project(model, [model.eigenfunction(3), None], 2)
    expected = np.zeros((8, 2))
    expected[2, 0] = 1.0
    np.testing.assert_allclose(st.coeffs, expected, atol=1e-10)


def test_project_parabola():
    model = DirichletModel(modes=9, quadrature_points=4097)
    st = project(model, [lambda x: x * (math.pi - x)], 1)
    j = np.arange(1, 10)
    # sine-series coefficients 8/(π j^3) (odd j) refer to sin(jx); φ_j carries sqrt(2/π)
    expected = np.where(j % 2 == 1, 8 / (math.pi * j**3), 0.0) * math.sqrt(math.pi / 2)
    np.testing.assert_allclose(st.coeffs[:, 0].real, expected, atol=1e-10)


def test_project_zero_and_validation():
    model = DirichletModel(modes=4)
    assert np.all(project(model, [None, None, None], 3).coeffs == 0)
    with pytest.raises(DomainError):
        project(model, [None], 2)
    with pytest.raises(DomainError):
        project(model, [np.zeros(7)], 1)


def test_coarse_grid_warns():
    model = DirichletModel(modes=4, quadrature_points=9, tolerance=1e-12)
    with pytest.warns(ProjectionWarning):
        project(model, [lambda x: np.exp(x)], 1)


def test_wave_mode():
    model = DirichletModel(modes=4)
    x = np.linspace(0, math.pi, 257)
    t = np.linspace(0, 7, 15)
    sol = solve_pde(model, 2, 1.0, [model.eigenfunction(1), None], t, x)
    exact = np.cos(t)[:, None] * model.eigenfunction(1)(x)[None, :]
    assert np.max(np.abs(sol.field - exact)) <= 1e-10


def test_third_order_half_power_mode():
    model = DirichletModel(modes=3)
    x = np.linspace(0, math.pi, 129)
    t = np.linspace(0, 2, 5)
    sol = solve_pde(model, 3, 0.5, [model.eigenfunction(1), None, None], t, x)
    first = mode_propagator(3, 1.0, 0.5, t)[:, 0, 0].real
    exact = first[:, None] * model.eigenfunction(1)(x)[None, :]
    np.testing.assert_allclose(sol.field, exact, atol=1e-10)
    # single-mode data stay single-mode, up to projection leakage
    assert np.max(np.abs(sol.trajectory.coeffs()[:, 1:, :])) <= 1e-14


def test_zero_data_zero_field():
    model = DirichletModel(modes=5)
    sol = solve_pde(model, 3, 0.4, [None] * 3, [0.0, 1.0], np.linspace(0, math.pi, 9))
    assert np.all(sol.field == 0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), modes=st.integers(1, 64))
def test_parseval(seed, modes):
    model = DirichletModel(modes=modes)
    x = np.linspace(0, math.pi, 1025)
    c = np.random.default_rng(seed).standard_normal(modes)
    assert abs(l2_norm(synthesize(model, c, x), x) - np.linalg.norm(c)) <= 1e-8


@pytest.mark.parametrize("alpha, growing", [(0.5, False), (1.0, True)])
def test_l2_trend_matches_dichotomy(alpha, growing):
    model = DirichletModel(modes=8)
    x = np.linspace(0, math.pi, 257)
    data = [lambda x: x * (math.pi - x), None, None]
    sol = solve_pde(model, 3, alpha, data, np.linspace(0, 10, 11), x)
    trace = sol.l2_trace()
    assert (trace[-1] > trace[0]) == growing


def test_model_validation_and_csv():
    with pytest.raises(DomainError):
        DirichletModel(m=0)
    with pytest.raises(DomainError):
        DirichletModel(length=-1)
    model = DirichletModel(modes=2)
    sol = solve_pde(model, 2, 1.0, [model.eigenfunction(1), None], [0.0, 1.0], [0.0, 1.0])
    lines = sol.to_csv().splitlines()
    assert lines[0].startswith("# model: ")
    assert lines[1] == "x,t,u"
    assert len(lines) == 2 + 4
