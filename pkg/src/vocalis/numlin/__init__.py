"""
Sparse linear algebra and quadratic eigenvalue kernels shared by the eigen solvers.
"""

from vocalis.numlin.models import EigenPair, SparseMatrix, as_sparse, scatter_local
from vocalis.numlin.solvers import factorize, lu_solve, qep_residual, qep_solve

__all__ = ["EigenPair", "SparseMatrix", "as_sparse", "scatter_local", "factorize", "lu_solve", "qep_residual", "qep_solve"]
