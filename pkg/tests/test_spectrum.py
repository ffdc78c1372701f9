import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracblocks.block_operator import assemble_lambda
from fracblocks.errors import DomainError
from fracblocks.spectral_base import SpectralOperator
from fracblocks.spectrum import (
    BOUNDARY,
    DECAYING,
    UNSTABLE,
    classify_generation,
    eigenvalues_formula,
    match_multisets,
    max_real_part,
    numeric_spectrum_check,
    resolvent_bound_scan,
    sector_half_angle,
    sectoriality_threshold,
    semilines,
)


def squares(J):
    return SpectralOperator(tuple(float(j * j) for j in range(1, J + 1)))


@pytest.mark.parametrize("n, expected", [(3, 0.75), (4, 2 / 3), (5, 0.625)])
def test_thresholds(n, expected):
    assert sectoriality_threshold(n) == expected


def test_classification_examples():
    assert classify_generation(3, 0.74) == DECAYING
    assert classify_generation(3, 0.76) == UNSTABLE
    assert classify_generation(4, Fraction(2, 3)) == BOUNDARY
    for n in range(3, 9):
        assert classify_generation(n, 1) == UNSTABLE
    assert classify_generation(2, 1) == BOUNDARY
    assert classify_generation(2, 0.99) == DECAYING


def test_numeric_spectrum_examples():
    assert numeric_spectrum_check(3, 0.5, SpectralOperator((1.0, 4.0, 9.0))) <= 1e-10
    assert numeric_spectrum_check(5, 1, squares(6)) <= 1e-12
    for a in (0.1, 0.5, 0.9):
        assert numeric_spectrum_check(2, a, SpectralOperator((1.0,))) <= 1e-12


def test_rotation_spectrum_values():
    rep = eigenvalues_formula(2, 0.4, SpectralOperator((1.0,)), "lambda_alpha")
    got = sorted(rep.values(), key=lambda z: z.imag)
    np.testing.assert_allclose(got, [np.exp(-0.2j * np.pi), np.exp(0.2j * np.pi)], atol=1e-15)


def test_limit_rays_of_minus_lambda():
    rep = eigenvalues_formula(4, 1, SpectralOperator((1.0,)), "minus_lambda")
    assert set(rep.angles_over_pi()) == {Fraction(1, 4), Fraction(3, 4), Fraction(5, 4), Fraction(7, 4)}
    # the rays are the roots of z^n = (-1)^(n+1) mu, negated
    dense = -np.linalg.eigvals(assemble_lambda(4, 1.0).entries)
    assert match_multisets(dense, rep.values()) <= 1e-14


@settings(max_examples=80, deadline=None)
@given(n=st.integers(2, 9), alpha=st.floats(0.01, 1), mu=st.floats(1e-2, 1e4))
def test_modulus_and_conjugate_symmetry(n, alpha, mu):
    rep = eigenvalues_formula(n, alpha, SpectralOperator((mu,)), "lambda_alpha")
    vals = rep.values()
    assert len(vals) == n
    np.testing.assert_allclose(np.abs(vals), mu ** (alpha / n), rtol=1e-12)
    assert match_multisets(np.conj(vals), vals) <= 1e-12 * mu ** (alpha / n)


@settings(max_examples=80, deadline=None)
@given(n=st.integers(2, 9), alpha=st.floats(0.01, 1), mu=st.floats(1e-2, 1e4))
def test_spectral_mapping(n, alpha, mu):
    op = SpectralOperator((mu,))
    base = eigenvalues_formula(n, 1, op, "lambda").values()
    mapped = np.exp(alpha * np.log(np.asarray(base)))
    powered = eigenvalues_formula(n, alpha, op, "lambda_alpha").values()
    assert match_multisets(mapped, powered) <= 1e-12 * mu ** (alpha / n)


@pytest.mark.parametrize("n", range(3, 8))
def test_instability_witness_grows(n):
    rates = [max_real_part(n, 1, squares(J)) for J in (8, 16, 32)]
    assert rates[-1] == pytest.approx(32 ** (2 / n) * math.cos(math.pi / n), rel=1e-12)
    assert rates[0] < rates[1] < rates[2]


def test_resolvent_scan_examples():
    scan = resolvent_bound_scan(2, SpectralOperator((1.0,)), [0.0], weighted=False)
    assert scan.sup_bound == pytest.approx(1.0, rel=1e-14)
    grid = np.concatenate([[0.0], np.logspace(-3, 3, 400)])
    a = resolvent_bound_scan(3, squares(50), grid)
    b = resolvent_bound_scan(3, squares(100), grid)
    assert np.isfinite(a.sup_bound)
    assert abs(b.sup_bound - a.sup_bound) <= 0.01 * a.sup_bound


def test_sector_half_angle():
    assert sector_half_angle(1) == pytest.approx(math.pi / 6)
    with pytest.raises(DomainError):
        sector_half_angle(0.5)


def test_semilines_and_csv():
    rep = eigenvalues_formula(3, Fraction(3, 4), squares(4))
    rays = semilines(rep)
    assert sorted(r["angle_over_pi"] for r in rays) == [Fraction(1, 2), 1, Fraction(3, 2)]
    assert all(r["r_min"] == pytest.approx(1.0) and r["r_max"] == pytest.approx(16 ** 0.25) for r in rays)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "j,k,conjugate,re,im,modulus,angle"
    assert len(lines) == 1 + 12


def test_bad_inputs():
    with pytest.raises(DomainError):
        eigenvalues_formula(3, 0.5, squares(2), "bogus")
    with pytest.raises(DomainError):
        classify_generation(3, 0)
    with pytest.raises(DomainError):
        match_multisets([1, 2], [1])
