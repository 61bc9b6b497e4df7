"""Tests for the discrete gradient, TV and the regularization functionals."""

import numpy as np
import pytest

from ahb_inverse.core import GridVector
from ahb_inverse.regularizers import (
    GradientField,
    QuadraticReg,
    TVQuadraticReg,
    discrete_divergence,
    discrete_gradient,
    tv_value,
)


def test_gradient_of_constant_is_zero():
    """Test that constants have zero gradient."""
    g = discrete_gradient(np.full((3, 5), 2.5))
    assert not np.any(g.u)
    assert not np.any(g.v)


def test_gradient_small_example():
    """Test the periodic forward differences on a 2x2 image."""
    g = discrete_gradient(np.array([[0.0, 1.0], [2.0, 3.0]]))
    np.testing.assert_array_equal(g.u, [[2.0, 2.0], [-2.0, -2.0]])
    np.testing.assert_array_equal(g.v, [[1.0, -1.0], [1.0, -1.0]])


def test_gradient_rejects_non_images():
    """Test that only 2-D arrays are accepted."""
    with pytest.raises(ValueError):
        discrete_gradient(np.zeros(4))


def test_divergence_is_negative_adjoint():
    """Test <grad x, p> + <x, div p> = 0 on random inputs."""
    rng = np.random.default_rng(0)
    for _ in range(100):
        shape = tuple(rng.integers(1, 7, size=2))
        x = rng.standard_normal(shape)
        p = GradientField(rng.standard_normal(shape), rng.standard_normal(shape))
        lhs = discrete_gradient(x).inner(p)
        rhs = float(np.sum(x * discrete_divergence(p)))
        assert abs(lhs + rhs) <= 1e-12 * (1 + abs(lhs))


def test_divergence_edge_cases():
    """Test zero fields and gradients of constants."""
    assert not np.any(discrete_divergence(GradientField.zeros((3, 4))))
    assert not np.any(discrete_divergence(discrete_gradient(np.ones((4, 3)))))
    with pytest.raises(ValueError):
        discrete_divergence(GradientField(np.zeros((2, 2)), np.zeros((3, 2))))


def test_tv_value():
    """Test constants, a 1x2 example and homogeneity."""
    assert tv_value(np.full((4, 4), 7.0)) == 0.0

    a = 1.5
    # the single row wraps onto itself, the column differences are +a and -a
    assert tv_value(np.array([[0.0, a]])) == pytest.approx(abs(a) + abs(-a))

    rng = np.random.default_rng(1)
    x = rng.standard_normal((5, 6))
    assert tv_value(-3.0 * x) == pytest.approx(3.0 * tv_value(x))
    assert tv_value(x) > 0


def test_quadratic_regularizer():
    """Test that the quadratic conjugate gradient is the identity."""
    reg = QuadraticReg()
    xi = GridVector([1.0, -2.0, 3.0], [0.5, 1.0, 2.0])
    x = reg.conj_grad(xi)
    np.testing.assert_array_equal(x.values, xi.values)
    assert x is not xi
    assert reg.value(xi) == pytest.approx(0.5 * (0.5 + 4.0 + 18.0))
    assert reg.sigma == 0.5
    assert reg.is_quadratic


def test_tv_regularizer_parameters():
    """Test sigma and input validation."""
    reg = TVQuadraticReg(4.0, 3, 3)
    assert reg.sigma == pytest.approx(1 / 8)
    assert not reg.is_quadratic
    with pytest.raises(ValueError):
        TVQuadraticReg(0.0, 3, 3)
    with pytest.raises(ValueError):
        reg.value(GridVector(np.zeros(8)))


def test_tv_prox_optimality():
    """Test that conj_grad minimizes R(x) - <xi, x> against random nearby points."""
    rng = np.random.default_rng(2)
    reg = TVQuadraticReg(1.0, 4, 4, pdhg_iters=3000)
    xi = GridVector(rng.standard_normal((4, 4)))
    x = reg.conj_grad(xi)

    best = reg.value(x) - xi.inner(x)
    for _ in range(100):
        z = x + x.like(0.1 * rng.standard_normal((4, 4)))
        assert best <= reg.value(z) - xi.inner(z) + 1e-6


def test_tv_conj_grad_lipschitz():
    """Test ||grad R*(xi1) - grad R*(xi2)|| <= ||xi1 - xi2|| / (2 sigma)."""
    rng = np.random.default_rng(3)
    reg = TVQuadraticReg(2.0, 5, 5, pdhg_iters=2000)
    for _ in range(5):
        xi1 = GridVector(rng.standard_normal((5, 5)))
        xi2 = xi1 + xi1.like(0.3 * rng.standard_normal((5, 5)))
        diff = (reg.fresh().conj_grad(xi1) - reg.fresh().conj_grad(xi2)).norm()
        assert diff <= (xi1 - xi2).norm() / (2 * reg.sigma) + 1e-5


def test_tv_warm_start_reset():
    """Test that the warm start is per instance and cleared by reset."""
    rng = np.random.default_rng(4)
    reg = TVQuadraticReg(1.0, 4, 4, pdhg_iters=5)
    xi = GridVector(rng.standard_normal((4, 4)))

    cold = reg.conj_grad(xi)
    warm = reg.conj_grad(xi)
    assert not np.array_equal(cold.values, warm.values)

    clone = reg.fresh()
    np.testing.assert_array_equal(clone.conj_grad(xi).values, cold.values)

    reg.reset()
    np.testing.assert_array_equal(reg.conj_grad(xi).values, cold.values)


def test_tv_cell_area_scaling():
    """Test that the pixel TV enters the value weighted by the cell area."""
    rng = np.random.default_rng(5)
    h = 0.1
    x = GridVector(rng.standard_normal((4, 4)), h**2)
    reg = TVQuadraticReg(1.0, 4, 4, cell_area=h**2)
    expected = x.inner(x) / 2 + h**2 * tv_value(x.values)
    assert reg.value(x) == pytest.approx(expected)


def test_tv_conj_grad_ignores_cell_area():
    """Test that the conjugate gradient is the unweighted denoising on any grid."""
    rng = np.random.default_rng(6)
    xi_values = rng.standard_normal((5, 5))
    plain = TVQuadraticReg(10.0, 5, 5, pdhg_iters=200)
    weighted = TVQuadraticReg(10.0, 5, 5, pdhg_iters=200, cell_area=1 / 36)
    x_plain = plain.conj_grad(GridVector(xi_values))
    x_weighted = weighted.conj_grad(GridVector(xi_values, 1 / 36))
    np.testing.assert_allclose(x_weighted.values, x_plain.values, atol=1e-12)


def test_tv_prox_optimality_weighted_grid():
    """Test prox optimality under the cell-area weighted pairing."""
    rng = np.random.default_rng(7)
    area = 1 / 25
    reg = TVQuadraticReg(2.0, 4, 4, pdhg_iters=3000, cell_area=area)
    xi = GridVector(rng.standard_normal((4, 4)), area)
    x = reg.conj_grad(xi)

    best = reg.value(x) - xi.inner(x)
    for _ in range(100):
        z = x + x.like(0.1 * rng.standard_normal((4, 4)))
        assert best <= reg.value(z) - xi.inner(z) + 1e-7
