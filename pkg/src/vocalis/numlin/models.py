"""
Models for the linear algebra kernels.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sps

from vocalis.common.errors import ValidationError

SparseMatrix = sps.csr_matrix


def as_sparse(matrix, dtype=None) -> sps.csr_matrix:
    """Convert to a square CSR matrix with duplicate entries summed."""
    out = sps.csr_matrix(matrix, dtype=dtype)
    if out.shape[0] != out.shape[1]:
        raise ValidationError(f"Matrix must be square, got shape {out.shape}")
    out.sum_duplicates()
    return out


@dataclass(frozen=True, eq=False)
class EigenPair:
    """Eigenvalue lam (1/s) of lam^2 M + lam C + K with its right eigenvector."""

    lam: complex
    vector: np.ndarray
    residual: float

    @property
    def frequency(self) -> float:
        """Resonance frequency Im(lam) / 2 pi in Hz."""
        return float(self.lam.imag / (2.0 * np.pi))


def scatter_local(cells: np.ndarray, local: np.ndarray, n: int) -> sps.csr_matrix:
    """Sum per-cell local matrices of shape (m, p, p) into a global n x n matrix."""
    p = cells.shape[1]
    rows = np.repeat(cells, p, axis=1).ravel()
    cols = np.tile(cells, (1, p)).ravel()
    return sps.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()
