import logging
from dataclasses import dataclass

import numpy as np

from ..__config__ import JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE, RESIDUAL_TOLERANCE
from ..types import NumericalError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0


def _off_diagonal(A: np.ndarray) -> float:
    if A.shape[0] < 2:
        return 0.0
    return float(np.max(np.abs(A - np.diag(np.diag(A)))))


def _rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    col_p, col_q = A[:, p].copy(), A[:, q].copy()
    A[:, p] = c * col_p - s * col_q
    A[:, q] = s * col_p + c * col_q
    row_p, row_q = A[p, :].copy(), A[q, :].copy()
    A[p, :] = c * row_p - s * row_q
    A[q, :] = s * row_p + c * row_q
    A[p, q] = A[q, p] = 0.0
    vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
    V[:, p] = c * vec_p - s * vec_q
    V[:, q] = s * vec_p + c * vec_q


def eigen_symmetric(
    M, tolerance: float = JACOBI_TOLERANCE, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> EigenDecomposition:
    """Eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run over all pairs (p, q), p < q, until every off-diagonal entry is below
    `tolerance`. Eigenvalues come back ascending; equal eigenvalues keep the order of
    the diagonal they converged on.

    Args:
        M: Square symmetric real matrix.
        tolerance (float, optional): Off-diagonal threshold. Defaults to 1e-10.
        max_sweeps (int, optional): Defaults to 100.

    Returns:
        EigenDecomposition: values, vectors (columns) and the number of sweeps used.

    Raises:
        PreconditionError: If M is not square or not symmetric within tolerance.
        NumericalError: If the sweeps run out, or the residual or orthonormality
            checks fail.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"Expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n and np.max(np.abs(A - A.T)) > tolerance:
        raise PreconditionError("Matrix is not symmetric")
    original = A.copy()
    A = (A + A.T) / 2.0
    V = np.eye(n)
    sweeps = 0
    while _off_diagonal(A) >= tolerance:
        if sweeps == max_sweeps:
            raise NumericalError(
                f"Jacobi did not converge in {max_sweeps} sweeps, "
                f"max off-diagonal {_off_diagonal(A):.3e}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] != 0.0:
                    _rotate(A, V, p, q)
        sweeps += 1
    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    values, V = values[order], V[:, order]
    if n:
        residual = float(np.max(np.abs(original @ V - V * values)))
        scale = max(1.0, float(np.max(np.abs(original))))
        if residual > RESIDUAL_TOLERANCE * scale:
            raise NumericalError(f"Eigen residual {residual:.3e} above {RESIDUAL_TOLERANCE}")
        if float(np.max(np.abs(V.T @ V - np.eye(n)))) > RESIDUAL_TOLERANCE:
            raise NumericalError("Eigenvectors are not orthonormal")
    logger.debug("Jacobi converged after %s sweeps on a %sx%s matrix", sweeps, n, n)
    return EigenDecomposition(values, V, sweeps)
