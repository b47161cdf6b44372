import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..__config__ import KMEANS_MAX_ITERATIONS
from ..types import ConsistencyError, PreconditionError
from .laplacian import LaplacianAnalysis

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    """k-means on the row-normalized k smallest eigenvectors.

    Clusters are numbered in the order of their smallest vertex.
    """

    k: int
    embedding: np.ndarray
    assignment: Tuple[int, ...]
    centroids: np.ndarray
    iterations: int
    objective_history: Tuple[float, ...]

    @property
    def objective(self) -> float:
        return self.objective_history[-1] if self.objective_history else 0.0

    def clusters(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(v for v, c in enumerate(self.assignment) if c == label) for label in range(self.k)
        )


def kmeans_objective(points: np.ndarray, centroids: np.ndarray, assignment: np.ndarray) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    if points.shape[0] == 0:
        return 0.0
    return float(np.sum((points - centroids[assignment]) ** 2))


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2)


def _farthest_first(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    chosen = [int(rng.integers(points.shape[0]))]
    while len(chosen) < k:
        nearest = _squared_distances(points, points[chosen]).min(axis=1)
        chosen.append(int(np.argmax(nearest)))
    return points[chosen].copy()


def spectral_cluster(
    analysis: LaplacianAnalysis,
    k: int,
    seed: int = 0,
    max_iterations: int = KMEANS_MAX_ITERATIONS,
) -> ClusteringResult:
    """Cluster spectrum points from the k smallest Laplacian eigenvectors.

    Rows of the eigenvector block are scaled to unit length (zero rows stay zero), the
    first centroid is a seeded random row and the rest are picked farthest-first, then
    Lloyd iterations run until the assignment is stable. Nearest-centroid ties go to
    the lowest index.

    Args:
        analysis (LaplacianAnalysis): Eigenpairs of the Laplacian.
        k (int): Number of clusters, 1 <= k <= number of points.
        seed (int, optional): Seed for the first centroid. Defaults to 0.
        max_iterations (int, optional): Defaults to 100.

    Raises:
        PreconditionError: If k is out of range.
        ConsistencyError: If the graph has exactly k components and the clusters differ
            from them.
    """
    n = analysis.size
    if not 1 <= k <= n:
        raise PreconditionError(f"k must lie in [1, {n}], got {k}")
    U = np.array(analysis.eigenvectors[:, :k], dtype=float)
    norms = np.linalg.norm(U, axis=1)
    nonzero = norms > 0
    U[nonzero] = U[nonzero] / norms[nonzero, None]
    centroids = _farthest_first(U, k, np.random.default_rng(seed))
    assignment = np.argmin(_squared_distances(U, centroids), axis=1)
    history = [kmeans_objective(U, centroids, assignment)]
    iterations = 0
    while iterations < max_iterations:
        iterations += 1
        for c in range(k):
            members = assignment == c
            if np.any(members):
                centroids[c] = U[members].mean(axis=0)
        updated = np.argmin(_squared_distances(U, centroids), axis=1)
        history.append(kmeans_objective(U, centroids, updated))
        if np.array_equal(updated, assignment):
            break
        assignment = updated

    relabel = {}
    for c in assignment:
        relabel.setdefault(int(c), len(relabel))
    order = sorted(relabel, key=relabel.get) + [c for c in range(k) if c not in relabel]
    labels = tuple(relabel[int(c)] for c in assignment)
    centroids = centroids[order]
    result = ClusteringResult(k, U, labels, centroids, iterations, tuple(history))

    if len(analysis.components) == k:
        found = {frozenset(c) for c in result.clusters()}
        expected = {frozenset(c) for c in analysis.components}
        if found != expected:
            raise ConsistencyError(
                f"{k} components but k-means found a different partition: {result.clusters()}",
                witness=result.clusters(),
            )
    logger.debug("k-means converged in %s iterations, objective %s", iterations, result.objective)
    return result
