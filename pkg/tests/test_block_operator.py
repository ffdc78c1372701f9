import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracblocks.block_operator import (
    ModeBlock,
    assemble_lambda,
    balakrishnan_block,
    fractional_power_closed_form,
    fractional_power_eig_oracle,
    inverse_closed_form,
    is_toeplitz,
    mode_scaling,
    power_semigroup_check,
    principal_power,
    resolvent_closed_form,
)
from fracblocks.errors import BranchCutError, DiagonalizationError, DomainError, SingularResolventError
from fracblocks.spectral_base import QuadratureSpec


def rotation(theta):
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def test_assemble_examples():
    np.testing.assert_array_equal(assemble_lambda(3, 5).entries.real,
                                  [[0, -1, 0], [0, 0, -1], [5, 0, 0]])
    np.testing.assert_array_equal(assemble_lambda(2, 1).entries.real, [[0, -1], [1, 0]])


def test_inverse_examples():
    np.testing.assert_array_equal(inverse_closed_form(3, 2).entries.real,
                                  [[0, 0, 0.5], [-1, 0, 0], [0, -1, 0]])
    np.testing.assert_array_equal(inverse_closed_form(2, 1).entries.real, [[0, 1], [-1, 0]])


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("mu", [0.5, 3.0, 1e4])
def test_inverse_is_inverse(n, mu):
    prod = assemble_lambda(n, mu) @ inverse_closed_form(n, mu)
    np.testing.assert_allclose(prod, np.eye(n), atol=1e-15)


def test_domain_errors():
    with pytest.raises(DomainError):
        assemble_lambda(1, 1.0)
    with pytest.raises(DomainError):
        assemble_lambda(3, 0.0)
    with pytest.raises(DomainError):
        fractional_power_closed_form(3, 1.0, 1.5)


def test_resolvent_examples():
    np.testing.assert_allclose(resolvent_closed_form(2, 1, 1).entries,
                               0.5 * np.array([[1, 1], [-1, 1]]), atol=1e-15)
    np.testing.assert_allclose(resolvent_closed_form(3, 2, 0).entries,
                               inverse_closed_form(3, 2).entries, atol=1e-15)
    lam = 0.7 + 0.2j
    r = resolvent_closed_form(4, 3.2, lam).entries
    shifted = lam * np.eye(4) + assemble_lambda(4, 3.2).entries
    assert np.linalg.norm(shifted @ r - np.eye(4), 2) <= 1e-13
    np.testing.assert_allclose(r, np.linalg.inv(shifted), rtol=1e-13)


def test_resolvent_singular():
    # lam^3 = -8 at lam = -2 for n = 3, mu = 8
    with pytest.raises(SingularResolventError):
        resolvent_closed_form(3, 8.0, -2.0)


def test_resolvent_large_lambda_finite():
    r = resolvent_closed_form(5, 1e4, 1e80).entries
    assert np.all(np.isfinite(r))
    assert r[0, 0] == pytest.approx(1e-80, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.0, 0.2, 0.5, 0.9, 1.0])
@pytest.mark.parametrize("mu", [1.0, 4.0, 17.5])
def test_two_by_two_rotation_form(alpha, mu):
    c, s = math.cos(alpha * math.pi / 2), math.sin(alpha * math.pi / 2)
    expected = [[c * mu ** (alpha / 2), -s * mu ** ((alpha - 1) / 2)],
                [s * mu ** ((alpha + 1) / 2), c * mu ** (alpha / 2)]]
    np.testing.assert_allclose(fractional_power_closed_form(2, mu, alpha).entries, expected,
                               rtol=1e-14, atol=1e-15)


def test_half_power_of_rotation():
    np.testing.assert_allclose(fractional_power_closed_form(2, 1, 0.5).entries,
                               rotation(math.pi / 4), atol=1e-15)
    np.testing.assert_allclose(principal_power(assemble_lambda(2, 1).entries, 0.5),
                               rotation(math.pi / 4), atol=1e-14)


@pytest.mark.parametrize("n", range(2, 9))
def test_endpoints_exact(n):
    for mu in (0.5, 17.5, 1e4):
        assert np.array_equal(fractional_power_closed_form(n, mu, 0).entries, np.eye(n))
        assert np.array_equal(fractional_power_closed_form(n, mu, 1).entries,
                              assemble_lambda(n, mu).entries)


def test_oracle_on_identity():
    np.testing.assert_allclose(principal_power(np.eye(4), 0.37), np.eye(4), atol=1e-15)


def test_branch_cut_and_defective():
    with pytest.raises(BranchCutError):
        principal_power(np.diag([1.0, -2.0]), 0.5)
    with pytest.raises(BranchCutError):
        principal_power(np.diag([1.0, 0.0]), 0.5)
    with pytest.raises(DiagonalizationError):
        principal_power(np.array([[2.0, 1.0], [0.0, 2.0]]), 0.5)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 8), mu=st.floats(1e-2, 1e5), alpha=st.floats(0, 1))
def test_closed_form_matches_oracle(n, mu, alpha):
    closed = fractional_power_closed_form(n, mu, alpha)
    assert is_toeplitz(closed.entries)
    oracle = fractional_power_eig_oracle(assemble_lambda(n, mu), alpha).entries
    # compare in balanced coordinates, where every entry is O(mu^(alpha/n))
    d = mode_scaling(n, mu)
    diff = (oracle - closed.entries) * d[None, :] / d[:, None]
    assert np.max(np.abs(diff)) <= 1e-11 * mu ** (alpha / n)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 8), mu=st.floats(1e-2, 1e5), alpha=st.floats(0, 1))
def test_balanced_form_is_scaled_unit_block(n, mu, alpha):
    d = mode_scaling(n, mu)
    b = fractional_power_closed_form(n, mu, alpha).entries
    unit = fractional_power_closed_form(n, 1.0, alpha).entries
    np.testing.assert_allclose(b * d[None, :] / d[:, None], mu ** (alpha / n) * unit,
                               rtol=1e-12, atol=1e-14 * mu ** (alpha / n))


def test_quadrature_examples():
    np.testing.assert_allclose(balakrishnan_block(2, 1, 0.5).entries, rotation(math.pi / 4), atol=1e-6)
    np.testing.assert_allclose(balakrishnan_block(3, 17.5, 0.3).entries,
                               fractional_power_closed_form(3, 17.5, 0.3).entries, atol=1e-6)
    tanh = balakrishnan_block(4, 2.0, 0.6, QuadratureSpec(scheme="tanh-sinh")).entries
    np.testing.assert_allclose(tanh, fractional_power_closed_form(4, 2.0, 0.6).entries, rtol=1e-8)


def test_quadrature_open_interval():
    with pytest.raises(DomainError):
        balakrishnan_block(3, 1.0, 0.0)


def test_semigroup_examples():
    assert power_semigroup_check(2, 1, 0.5, 0.5) <= 1e-12
    ref = np.linalg.norm(fractional_power_closed_form(5, 100, 0.75).entries, 2)
    assert power_semigroup_check(5, 100, 0.3, 0.45) <= 1e-9 * ref
    assert power_semigroup_check(4, 3.0, 0.0, 0.7) <= 1e-15
    with pytest.raises(DomainError):
        power_semigroup_check(3, 1.0, 0.6, 0.6)


def test_is_toeplitz():
    assert is_toeplitz(np.array([[1, 2], [3, 1]]))
    assert not is_toeplitz(np.array([[1, 2], [3, 4]]))


def test_block_serialization_round_trip():
    b = fractional_power_closed_form(3, 2.0, 0.4)
    again = ModeBlock.from_json(b.to_json())
    assert again.n == 3 and again.mu == 2.0
    assert np.array_equal(again.entries, b.entries)
    assert not b.entries.flags.writeable


def test_pretty_snaps_only_when_printing():
    b = fractional_power_closed_form(3, 1.0, 1.0)
    text = b.pretty()
    assert "e-1" not in text
    assert text.splitlines()[0] == "[0, -1, 0]"


def test_corner_entry_near_unit_power():
    # 40-digit eigendecomposition reference for n = 5, mu = 1, alpha = 0.99999
    b = fractional_power_closed_form(5, 1.0, 0.99999).entries
    assert b[4, 0].real == pytest.approx(0.9999999998420863, rel=1e-15)
    assert b[0, 0].real == pytest.approx(1.0689685764632245e-05, rel=1e-12)
    assert b[2, 0].real == pytest.approx(6.606518509991756e-06, rel=1e-12)
