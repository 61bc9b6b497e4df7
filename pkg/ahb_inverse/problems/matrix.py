"""Linear forward problem backed by an explicit (dense or sparse) matrix."""

from typing import Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import svds

from ..core.interfaces import LinearProblem
from ..core.spaces import GridVector

Matrix = Union[np.ndarray, sp.spmatrix]


class MatrixProblem(LinearProblem):
    """F(x) = M x between weighted grid spaces.

    ``param_weights`` and ``data_weights`` define the inner products of X and
    Y; the adjoint is ``W_X^{-1} M^T W_Y``, which is exact for those inner
    products.
    """

    def __init__(
        self,
        matrix: Matrix,
        param_weights: np.ndarray,
        data_weights: np.ndarray,
        name: str = "matrix",
        param_shape: Optional[Tuple[int, ...]] = None,
        image_shape: Optional[Tuple[int, int]] = None,
        relative_error: bool = True,
    ):
        rows, cols = matrix.shape
        self.matrix = sp.csr_matrix(matrix) if sp.issparse(matrix) else np.asarray(matrix, float)
        self.param_shape = param_shape or (cols,)
        self.data_shape = (rows,)
        self._param_zero = GridVector(np.zeros(self.param_shape), param_weights)
        self._data_zero = GridVector(np.zeros(self.data_shape), data_weights)
        if int(np.prod(self.param_shape)) != cols:
            raise ValueError(f"param_shape {self.param_shape} does not match {cols} columns")

        self.name = name
        self.image_shape = image_shape
        self.relative_error = relative_error
        self.norm_bound = self.operator_norm()

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def param_zeros(self) -> GridVector:
        return self._param_zero.zeros_like()

    def data_zeros(self) -> GridVector:
        return self._data_zero.zeros_like()

    def lin_apply(self, x: GridVector, h: GridVector) -> GridVector:
        return self._data_zero.like(self.matrix @ h.values.ravel())

    def lin_adjoint(self, x: GridVector, w: GridVector) -> GridVector:
        weighted = self.matrix.T @ (self._data_zero.weights * w.values)
        return self._param_zero.like(weighted.ravel() / self._param_zero.weights.ravel())

    def operator_norm(self) -> float:
        """||M|| between the weighted spaces, i.e. the 2-norm of W_Y^{1/2} M W_X^{-1/2}."""
        left = np.sqrt(self._data_zero.weights.ravel())
        right = 1.0 / np.sqrt(self._param_zero.weights.ravel())
        if sp.issparse(self.matrix):
            scaled = sp.diags(left) @ self.matrix @ sp.diags(right)
            if min(scaled.shape) < 2:
                return float(np.linalg.norm(scaled.toarray(), 2))
            v0 = np.random.default_rng(0).standard_normal(min(scaled.shape))
            return float(svds(scaled, k=1, v0=v0, return_singular_vectors=False)[0])
        scaled = left[:, None] * self.matrix * right[None, :]
        return float(np.linalg.norm(scaled, 2))
