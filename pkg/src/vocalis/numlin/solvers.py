"""
ABOUTME: Sparse LU solves and the quadratic eigenvalue solver (lam^2 M + lam C + K) v = 0.
ABOUTME: The QEP is linearized to a companion pencil and solved by shift-invert around a complex shift.
"""

from typing import List, Optional

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sps
import scipy.sparse.linalg as spla
from loguru import logger

from vocalis.common.errors import ConvergenceError, SingularMatrixError, ValidationError
from vocalis.numlin.models import EigenPair, as_sparse

EIGEN_TOL = 1e-8
DENSE_LIMIT = 300
DIAGNOSE_LIMIT = 2000


def _locate_zero_pivot(matrix: sps.spmatrix) -> Optional[int]:
    """Index of the first vanishing pivot of a partially pivoted dense LU, if affordable."""
    if matrix.shape[0] > DIAGNOSE_LIMIT:
        return None
    dense = matrix.toarray()
    _, _, upper = sla.lu(dense)
    diag = np.abs(np.diag(upper))
    scale = max(np.abs(dense).max(), np.finfo(float).tiny)
    small = np.flatnonzero(diag <= dense.shape[0] * np.finfo(float).eps * scale)
    return int(small[0]) if small.size else None


def factorize(matrix, dtype=None) -> spla.SuperLU:
    """SuperLU factorization, raising SingularMatrixError on a zero pivot."""
    csc = sps.csc_matrix(as_sparse(matrix, dtype=dtype))
    try:
        return spla.splu(csc)
    except RuntimeError as e:
        raise SingularMatrixError(f"Singular matrix: {e}", pivot=_locate_zero_pivot(csc)) from e


def lu_solve(matrix, rhs) -> np.ndarray:
    """Solve ``matrix @ x = rhs`` by sparse LU."""
    rhs = np.asarray(rhs)
    n = matrix.shape[0]
    if rhs.shape != (n,):
        raise ValidationError(f"Right-hand side has shape {rhs.shape}, expected ({n},)")
    complex_input = np.iscomplexobj(rhs) or np.iscomplexobj(as_sparse(matrix).data)
    dtype = np.complex128 if complex_input else np.float64
    lu = factorize(matrix, dtype=dtype)
    x = lu.solve(rhs.astype(dtype))
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError("Singular matrix: non-finite solution", pivot=_locate_zero_pivot(sps.csc_matrix(matrix)))
    return x


def _pencil(mass, damping, stiffness):
    """First companion form A z = lam B z with z = [v; lam v]."""
    n = mass.shape[0]
    eye = sps.identity(n, format="csr")
    a = sps.bmat([[None, eye], [-stiffness, -damping]], format="csc")
    b = sps.bmat([[eye, None], [None, mass]], format="csc")
    return a, b


def _quadratic(lam: complex, mass, damping, stiffness):
    return (lam * lam) * mass + lam * damping + stiffness


def qep_residual(lam: complex, vector: np.ndarray, mass, damping, stiffness) -> float:
    """Backward-error style relative residual of an eigenpair."""
    r = _quadratic(lam, mass, damping, stiffness) @ vector
    scale = abs(lam) ** 2 * spla.norm(mass, 1) + abs(lam) * spla.norm(damping, 1) + spla.norm(stiffness, 1)
    denom = scale * np.linalg.norm(vector)
    return float(np.linalg.norm(r) / denom) if denom > 0 else float(np.linalg.norm(r))


def _polish(lam: complex, vector: np.ndarray, mass, damping, stiffness, max_steps: int):
    """Nonlinear inverse iteration (Newton on the eigenvalue) until the residual meets EIGEN_TOL."""
    residual = qep_residual(lam, vector, mass, damping, stiffness)
    for _ in range(max_steps):
        if residual <= EIGEN_TOL:
            break
        try:
            lu = factorize(_quadratic(lam, mass, damping, stiffness), dtype=np.complex128)
        except SingularMatrixError:
            # exactly on an eigenvalue
            break
        u = lu.solve(((2.0 * lam) * mass + damping) @ vector)
        denom = np.vdot(vector, u)
        if denom == 0 or not np.all(np.isfinite(u)):
            break
        lam = lam - np.vdot(vector, vector) / denom
        vector = u / np.linalg.norm(u)
        residual = qep_residual(lam, vector, mass, damping, stiffness)
    return lam, vector, residual


def qep_solve(mass, damping, stiffness, k: int, shift: complex, max_refine: int = 8) -> List[EigenPair]:
    """The ``k`` eigenpairs of lam^2 M + lam C + K nearest ``shift``, sorted by distance."""
    mass = as_sparse(mass, dtype=np.complex128)
    damping = as_sparse(damping, dtype=np.complex128)
    stiffness = as_sparse(stiffness, dtype=np.complex128)
    n = mass.shape[0]
    if damping.shape != (n, n) or stiffness.shape != (n, n):
        raise ValidationError("M, C and K must share one square shape")
    if k < 1:
        raise ValidationError(f"Need k >= 1 eigenpairs, got {k}")
    if k > 2 * n:
        raise ValidationError(f"Requested {k} eigenpairs but the pencil has only {2 * n}")

    a, b = _pencil(mass, damping, stiffness)
    size = 2 * n

    if size <= DENSE_LIMIT or k >= size - 1:
        logger.debug(f"QEP dense solve, n={n}")
        values, vectors = sla.eig(a.toarray(), b.toarray())
        finite = np.flatnonzero(np.isfinite(values))
        order = finite[np.argsort(np.abs(values[finite] - shift), kind="stable")][:k]
        lams, zs = values[order], vectors[:, order]
    else:
        logger.debug(f"QEP shift-invert solve, n={n}, k={k}, shift={shift}")
        lu = factorize(a - shift * b, dtype=np.complex128)
        operator = spla.LinearOperator((size, size), matvec=lambda z: lu.solve(b @ z), dtype=np.complex128)
        # fixed start vector keeps repeated runs bit-identical
        v0 = np.ones(size, dtype=np.complex128)
        try:
            theta, zs = spla.eigs(operator, k=k, which="LM", v0=v0, maxiter=max(1000, 20 * size))
        except spla.ArpackNoConvergence as e:
            raise ConvergenceError("Shift-invert Arnoldi did not converge", residual=float("inf")) from e
        lams = shift + 1.0 / theta
        order = np.argsort(np.abs(lams - shift), kind="stable")
        lams, zs = lams[order], zs[:, order]

    pairs = []
    for lam, z in zip(lams, zs.T):
        vector = z[:n]
        norm = np.linalg.norm(vector)
        if norm == 0:
            vector, norm = z[n:], np.linalg.norm(z[n:])
        vector = vector / norm
        lam, vector, residual = _polish(complex(lam), vector, mass, damping, stiffness, max_refine)
        if residual > EIGEN_TOL:
            raise ConvergenceError(f"Eigenpair near {lam:.6g} missed the residual tolerance", residual=residual)
        pairs.append(EigenPair(complex(lam), vector, residual))

    pairs.sort(key=lambda p: abs(p.lam - shift))
    return pairs
