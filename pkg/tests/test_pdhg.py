"""Tests for the TV denoising inner solver."""

import numpy as np
import pytest

from ahb_inverse.regularizers import pdhg_denoise, pdhg_solve, tv_denoise_objective


def test_constant_input_is_fixed_point():
    """Test that constant images are returned unchanged."""
    b = np.full((5, 4), 3.25)
    np.testing.assert_allclose(pdhg_denoise(b, 1.0, 50), b, atol=1e-12)


def test_small_kappa_keeps_data():
    """Test that a tiny kappa lets the fidelity term dominate."""
    rng = np.random.default_rng(0)
    b = rng.standard_normal((6, 6))
    x = pdhg_denoise(b, 1e-8, 100)
    assert np.max(np.abs(x - b)) <= 1e-4


def test_invalid_arguments():
    """Test kappa and iteration validation."""
    b = np.zeros((3, 3))
    with pytest.raises(ValueError):
        pdhg_denoise(b, 0.0, 10)
    with pytest.raises(ValueError):
        pdhg_denoise(b, 1.0, 0)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_long_reference_solve(seed):
    """Test the objective against a ten times longer reference solve on 3x3 images."""
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((3, 3))

    x = pdhg_denoise(b, 1.0, 1000)
    reference = pdhg_denoise(b, 1.0, 10000)
    gap = tv_denoise_objective(x, b, 1.0) - tv_denoise_objective(reference, b, 1.0)
    assert abs(gap) <= 1e-6


def test_objective_settles():
    """Test that the objective is nonincreasing over the last iterations."""
    rng = np.random.default_rng(3)
    b = rng.standard_normal((5, 5))
    values = [
        tv_denoise_objective(pdhg_denoise(b, 1.0, iters), b, 1.0) for iters in range(2000, 2011)
    ]
    for before, after in zip(values, values[1:]):
        assert after <= before + 1e-8 * abs(before)


def test_transposition_symmetry():
    """Test that transposing the input transposes the output."""
    rng = np.random.default_rng(4)
    b = rng.standard_normal((4, 7))
    x = pdhg_denoise(b, 2.0, 200)
    x_t = pdhg_denoise(b.T, 2.0, 200)
    np.testing.assert_allclose(x_t, x.T, atol=1e-12)


def test_tv_weight_zero_limit():
    """Test that a vanishing TV weight returns the data."""
    rng = np.random.default_rng(6)
    b = rng.standard_normal((4, 4))
    x = pdhg_denoise(b, 1.0, 200, tv_weight=1e-12)
    np.testing.assert_allclose(x, b, atol=1e-9)


@pytest.mark.slow
def test_reference_oracle_full():
    """Ten random 3x3 images at 1e4 against 1e5 iterations."""
    rng = np.random.default_rng(10)
    for _ in range(10):
        b = rng.standard_normal((3, 3))
        x = pdhg_denoise(b, 1.0, 10_000)
        reference = pdhg_denoise(b, 1.0, 100_000)
        gap = tv_denoise_objective(x, b, 1.0) - tv_denoise_objective(reference, b, 1.0)
        assert abs(gap) <= 1e-6


def test_dual_field_is_feasible():
    """Test that the returned dual field stays in the disc of radius tv_weight."""
    rng = np.random.default_rng(7)
    b = 10.0 * rng.standard_normal((5, 5))
    _, p = pdhg_solve(b, 1.0, 50, tv_weight=0.3)
    assert np.all(p.magnitude() <= 0.3 + 1e-12)
