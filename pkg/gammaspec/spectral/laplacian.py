import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

import numpy as np

from ..__config__ import JACOBI_TOLERANCE, RESIDUAL_TOLERANCE, ZERO_EIGENVALUE_THRESHOLD
from ..algebra import SemiringMap
from ..topology import Spectrum, spec_comap, spectrum
from ..triadic import GammaAutomorphism, automorphism_action
from ..types import ConsistencyError, PreconditionError
from .eigen import eigen_symmetric
from .graph import ComparabilityGraph, specialization_graph

logger = logging.getLogger(__name__)

CONNECTIVITY_STATUS = Literal["connected", "disconnected", "trivially connected", "empty"]


@dataclass(frozen=True, eq=False)
class LaplacianMatrices:
    """Exact integer A, D and L = D - A of a graph."""

    labels: Tuple[str, ...]
    adjacency: np.ndarray
    degree: np.ndarray
    laplacian: np.ndarray

    @property
    def size(self) -> int:
        return len(self.labels)


def laplacian(G: ComparabilityGraph) -> LaplacianMatrices:
    A = G.adjacency.astype(np.int64)
    D = np.diag(A.sum(axis=1))
    L = D - A
    for m in (A, D, L):
        m.setflags(write=False)
    return LaplacianMatrices(G.labels, A, D, L)


@dataclass(frozen=True, eq=False)
class LaplacianAnalysis:
    """Laplacian matrices together with their eigenpairs and the graph components."""

    matrices: LaplacianMatrices
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    components: Tuple[Tuple[int, ...], ...]
    zero_threshold: float = ZERO_EIGENVALUE_THRESHOLD

    @property
    def size(self) -> int:
        return self.matrices.size

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.matrices.labels

    @property
    def fiedler_value(self) -> Optional[float]:
        """λ₂, or None with fewer than two vertices."""
        return float(self.eigenvalues[1]) if self.size >= 2 else None

    @property
    def zero_multiplicity(self) -> int:
        return int(np.sum(np.abs(self.eigenvalues) <= self.zero_threshold))


def analyze(
    G: ComparabilityGraph,
    tolerance: float = JACOBI_TOLERANCE,
    zero_threshold: float = ZERO_EIGENVALUE_THRESHOLD,
) -> LaplacianAnalysis:
    """Laplacian, eigenpairs and union-find components of `G`.

    Raises:
        ConsistencyError: If L is not symmetric with zero row sums, or the number of zero
            eigenvalues differs from the number of components.
    """
    M = laplacian(G)
    L = M.laplacian
    if not np.array_equal(L, L.T) or np.any(L.sum(axis=1) != 0):
        raise ConsistencyError("Laplacian is not symmetric with zero row sums")
    eig = eigen_symmetric(L, tolerance)
    analysis = LaplacianAnalysis(M, eig.values, eig.vectors, tuple(G.components()), zero_threshold)
    if analysis.size and analysis.zero_multiplicity != len(analysis.components):
        raise ConsistencyError(
            f"{analysis.zero_multiplicity} zero eigenvalues but {len(analysis.components)} components",
            witness=tuple(eig.values),
        )
    logger.debug("Laplacian on %s vertices, eigenvalues %s", analysis.size, eig.values)
    return analysis


def analyze_spectrum(X: Spectrum, hasse: bool = False, tolerance: float = JACOBI_TOLERANCE) -> LaplacianAnalysis:
    return analyze(specialization_graph(X, hasse), tolerance)


@dataclass(frozen=True)
class ConnectivityVerdict:
    status: CONNECTIVITY_STATUS
    spectral: Optional[bool]
    combinatorial: Optional[bool]
    fiedler_value: Optional[float]


def connectivity_verdict(analysis: LaplacianAnalysis) -> ConnectivityVerdict:
    """Connectedness from λ₂ > threshold and, independently, from union-find.

    Raises:
        ConsistencyError: If the two verdicts disagree.
    """
    n = analysis.size
    if n == 0:
        return ConnectivityVerdict("empty", None, None, None)
    if n == 1:
        return ConnectivityVerdict("trivially connected", True, True, None)
    fiedler = analysis.fiedler_value
    spectral = fiedler > analysis.zero_threshold
    combinatorial = len(analysis.components) == 1
    if spectral != combinatorial:
        raise ConsistencyError(
            f"λ₂ = {fiedler:.3e} but the graph has {len(analysis.components)} components",
            witness=fiedler,
        )
    return ConnectivityVerdict("connected" if spectral else "disconnected", spectral, combinatorial, fiedler)


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    components: Tuple[Tuple[int, ...], ...]
    permutation: Tuple[int, ...]
    block_matrix: np.ndarray
    blocks: Tuple[np.ndarray, ...]
    block_eigenvalues: np.ndarray


def block_decomposition(analysis: LaplacianAnalysis) -> BlockDecomposition:
    """Reorder vertices component by component and split L into diagonal blocks.

    Raises:
        ConsistencyError: If an entry outside the blocks is nonzero, or the block spectra
            do not add up to the spectrum of L.
    """
    L = analysis.matrices.laplacian
    permutation = tuple(v for component in analysis.components for v in component)
    block_matrix = L[np.ix_(permutation, permutation)] if permutation else L.copy()
    blocks = []
    mask = np.zeros(L.shape, dtype=bool)
    start = 0
    for component in analysis.components:
        stop = start + len(component)
        blocks.append(block_matrix[start:stop, start:stop])
        mask[start:stop, start:stop] = True
        start = stop
    if np.any(block_matrix[~mask] != 0):
        raise ConsistencyError("Laplacian has entries between components")
    values = [v for block in blocks for v in eigen_symmetric(block).values]
    block_eigenvalues = np.sort(np.array(values, dtype=float))
    if block_eigenvalues.shape != analysis.eigenvalues.shape or np.any(
        np.abs(block_eigenvalues - analysis.eigenvalues) > RESIDUAL_TOLERANCE
    ):
        raise ConsistencyError("Block spectra differ from the spectrum of L", witness=block_eigenvalues)
    return BlockDecomposition(
        tuple(analysis.components), permutation, block_matrix, tuple(blocks), block_eigenvalues
    )


def _same_spectrum(L: np.ndarray, M: np.ndarray) -> bool:
    a, b = eigen_symmetric(L).values, eigen_symmetric(M).values
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= RESIDUAL_TOLERANCE))


def check_permutation_invariance(sigma: GammaAutomorphism, X: Optional[Spectrum] = None) -> bool:
    """The spectrum action of σ is a graph automorphism: L[σ*i, σ*j] = L[i, j].

    Raises:
        ConsistencyError: If L or its eigenvalues change under the point permutation.
    """
    X = X if X is not None else spectrum(sigma.algebra)
    action = automorphism_action(sigma, X)
    L = laplacian(specialization_graph(X)).laplacian
    p = np.array(action.permutation, dtype=np.int64)
    permuted = L[np.ix_(p, p)] if p.size else L
    P = action.matrix()
    if not np.array_equal(permuted, L) or not np.array_equal(P.T @ L @ P, L):
        raise ConsistencyError("Laplacian is not invariant under the automorphism", witness=sigma.images)
    if not _same_spectrum(permuted, L):
        raise ConsistencyError("Eigenvalues change under the automorphism", witness=sigma.images)
    return True


def check_isomorphism_invariance(iso: SemiringMap) -> bool:
    """An isomorphism T -> S induces an isomorphism of specialization graphs.

    Raises:
        PreconditionError: If `iso` is not a bijective homomorphism.
        ConsistencyError: If the Laplacians do not match under the induced point bijection.
    """
    if not (iso.is_bijective() and iso.is_homomorphism()):
        raise PreconditionError(f"Not an isomorphism: {iso.describe()}")
    X_T, X_S = spectrum(iso.source), spectrum(iso.target)
    comap = spec_comap(iso, X_T, X_S)
    if sorted(comap.points) != list(range(X_T.size)):
        raise ConsistencyError("Comap of an isomorphism is not a bijection of points")
    L_T = laplacian(specialization_graph(X_T)).laplacian
    L_S = laplacian(specialization_graph(X_S)).laplacian
    p = np.array(comap.points, dtype=np.int64)
    pulled = L_T[np.ix_(p, p)] if p.size else L_T
    if not np.array_equal(pulled, L_S) or not _same_spectrum(L_T, L_S):
        raise ConsistencyError("Laplacians differ across the isomorphism")
    return True


def eigenvalue_list(analysis: LaplacianAnalysis) -> List[float]:
    return [float(v) for v in analysis.eigenvalues]
