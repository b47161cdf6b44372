# flake8: noqa: F401

from ..utils import UnionFind
from .clustering import ClusteringResult, kmeans_objective, spectral_cluster
from .eigen import EigenDecomposition, eigen_symmetric
from .export import clean_value, format_value, to_csv, to_json
from .graph import ComparabilityGraph, graph_to_dot, specialization_graph
from .laplacian import (
    BlockDecomposition,
    ConnectivityVerdict,
    LaplacianAnalysis,
    LaplacianMatrices,
    analyze,
    analyze_spectrum,
    block_decomposition,
    check_isomorphism_invariance,
    check_permutation_invariance,
    connectivity_verdict,
    eigenvalue_list,
    laplacian,
)
