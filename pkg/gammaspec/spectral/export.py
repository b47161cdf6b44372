import io
from typing import Any, Dict, Optional

import numpy as np

from ..__config__ import REPORT_SCHEMA, ZERO_EIGENVALUE_THRESHOLD
from .clustering import ClusteringResult
from .laplacian import LaplacianAnalysis, connectivity_verdict


def format_value(value: float) -> str:
    """Fixed rendering for eigenvalues: 12 significant digits, numerical zeros as 0."""
    value = float(value)
    if abs(value) <= ZERO_EIGENVALUE_THRESHOLD:
        value = 0.0
    return format(value, ".12g")


def clean_value(value: float) -> float:
    return float(format_value(value))


def to_csv(analysis: LaplacianAnalysis) -> str:
    """One row: the eigenvalues in ascending order."""
    buffer = io.StringIO()
    buffer.write(",".join(format_value(v) for v in analysis.eigenvalues))
    buffer.write("\n")
    return buffer.getvalue()


def to_json(analysis: LaplacianAnalysis, clustering: Optional[ClusteringResult] = None) -> Dict[str, Any]:
    """Analysis bundle with a fixed field order."""
    verdict = connectivity_verdict(analysis)
    document: Dict[str, Any] = {
        "schema": REPORT_SCHEMA,
        "vertices": list(analysis.labels),
        "adjacency": analysis.matrices.adjacency.tolist(),
        "degree": np.diag(analysis.matrices.degree).tolist(),
        "laplacian": analysis.matrices.laplacian.tolist(),
        "eigenvalues": [clean_value(v) for v in analysis.eigenvalues],
        "fiedler_value": None if verdict.fiedler_value is None else clean_value(verdict.fiedler_value),
        "connectivity": verdict.status,
        "components": [list(c) for c in analysis.components],
    }
    if clustering is not None:
        document["clusters"] = {
            "k": clustering.k,
            "assignment": list(clustering.assignment),
            "iterations": clustering.iterations,
            "objective": clean_value(clustering.objective),
        }
    return document
