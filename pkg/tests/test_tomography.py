"""Tests for the ray tracer and the tomography problem."""

import math

import numpy as np
import pytest

from ahb_inverse.core import ConfigurationError, adjoint_consistency
from ahb_inverse.problems import build_tomo, chord_length, ray_pixel_lengths
from ahb_inverse.problems.tomography import parallel_rays, system_matrix


def test_axis_aligned_ray():
    """Test a horizontal ray through the middle of row 3."""
    idx, lengths = ray_pixel_lengths((-10.0, 0.5), (1.0, 0.0), 8, 8)
    np.testing.assert_array_equal(np.sort(idx), np.arange(24, 32))
    np.testing.assert_allclose(lengths, 1.0)


def test_vertical_ray():
    """Test a downward ray through column 5."""
    idx, lengths = ray_pixel_lengths((1.5, 10.0), (0.0, -1.0), 8, 8)
    np.testing.assert_array_equal(np.sort(idx), 5 + 8 * np.arange(8))
    np.testing.assert_allclose(lengths, 1.0)


def test_diagonal_ray():
    """Test the main diagonal of a square image."""
    idx, lengths = ray_pixel_lengths((-5.0, 5.0), (1.0, -1.0), 4, 4)
    np.testing.assert_array_equal(np.sort(idx), [0, 5, 10, 15])
    np.testing.assert_allclose(lengths, math.sqrt(2))


def test_missing_ray():
    """Test a ray that passes outside the image."""
    idx, lengths = ray_pixel_lengths((-10.0, 6.0), (1.0, 0.0), 8, 8)
    assert idx.size == 0
    assert lengths.size == 0
    assert chord_length((-10.0, 6.0), (1.0, 0.0), 8, 8) == 0.0


def test_lengths_partition_the_chord():
    """Test that pixel lengths sum to the chord length for random rays."""
    rng = np.random.default_rng(0)
    for _ in range(200):
        rows, cols = rng.integers(2, 12, size=2)
        origin = rng.uniform(-20, 20, size=2)
        angle = rng.uniform(0, 2 * math.pi)
        direction = (math.cos(angle), math.sin(angle))
        idx, lengths = ray_pixel_lengths(origin, direction, rows, cols)
        assert np.all(lengths > 0)
        assert np.all((idx >= 0) & (idx < rows * cols))
        assert lengths.sum() == pytest.approx(chord_length(origin, direction, rows, cols), abs=1e-9)


def test_projection_of_ones():
    """Test that projecting the all-ones image gives the chord lengths."""
    rows, cols, n_angles, n_rays = 10, 12, 5, 17
    matrix = system_matrix(rows, cols, n_angles, n_rays, "parallel")
    chords = [chord_length(o, d, rows, cols) for o, d in parallel_rays(rows, cols, n_angles, n_rays)]
    np.testing.assert_allclose(matrix @ np.ones(rows * cols), chords, atol=1e-9)


def test_parallel_projection_conserves_area():
    """Test that each parallel projection integrates the image area."""
    rows, cols, n_rays = 8, 8, 400
    diag = math.hypot(rows, cols)
    matrix = system_matrix(rows, cols, 3, n_rays, "parallel")
    sinogram = (matrix @ np.ones(rows * cols)).reshape(3, n_rays)
    for projection in sinogram:
        assert projection.sum() * diag / n_rays == pytest.approx(rows * cols, rel=1e-2)


def test_tomography_problem():
    """Test the shapes, the adjoint and the phantom data."""
    setup = build_tomo(rows=16, cols=16, n_angles=6, n_rays=23)
    prob = setup.problem
    assert prob.shape == (6 * 23, 256)
    assert prob.image_shape == (16, 16)
    assert setup.truth.shape == (16, 16)
    assert setup.exact_data.shape == (6 * 23,)
    assert setup.exact_data.values.min() >= 0
    assert adjoint_consistency(prob, prob.param_zeros(), trials=50, tolerance=1e-10).passed


def test_fan_geometry():
    """Test that the fan beam hits the image and stays within the chord bound."""
    rows = cols = 16
    matrix = system_matrix(rows, cols, 4, 31, "fan")
    assert matrix.shape == (4 * 31, rows * cols)
    row_sums = matrix @ np.ones(rows * cols)
    assert np.all(row_sums <= math.hypot(rows, cols) + 1e-9)
    assert np.count_nonzero(row_sums) > 0.5 * row_sums.size

    setup = build_tomo(rows=rows, cols=cols, n_angles=4, n_rays=31, geometry="fan")
    assert adjoint_consistency(setup.problem, setup.problem.param_zeros(), trials=20).passed


def test_invalid_geometry():
    """Test the configuration errors."""
    with pytest.raises(ConfigurationError):
        system_matrix(8, 8, 2, 3, "cone")
    with pytest.raises(ConfigurationError):
        build_tomo(rows=4, cols=8)
