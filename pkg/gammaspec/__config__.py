"""This file contains all package constants."""

import os
from typing import Optional

__version__ = "0.1.0"

CAP_ENV_VAR = "GAMMASPEC_CAP"

DEFAULT_ENUMERATION_CAP = 16
HARD_ENUMERATION_CAP = 20
AXIOM_CHECK_CAP = 64
AUTOMORPHISM_CAP = 8
MAX_COVER_GENERATORS = 4
MAX_TOPOLOGY_FAMILY = 3

JACOBI_TOLERANCE = 1e-10
JACOBI_MAX_SWEEPS = 100
ZERO_EIGENVALUE_THRESHOLD = 1e-8
RESIDUAL_TOLERANCE = 1e-9
KMEANS_MAX_ITERATIONS = 100

REPORT_SCHEMA = 1


def enumeration_cap(cap: Optional[int] = None) -> int:
    """Resolve the exhaustive enumeration cap.

    The explicit argument wins, then the `GAMMASPEC_CAP` environment variable,
    then `DEFAULT_ENUMERATION_CAP`.

    Args:
        cap (int, optional): Explicit override. Defaults to None.

    Returns:
        int: The carrier size above which exhaustive enumeration is refused.
    """
    if cap is None:
        raw = os.environ.get(CAP_ENV_VAR)
        if raw is None or not raw.strip():
            return DEFAULT_ENUMERATION_CAP
        try:
            cap = int(raw)
        except ValueError as error:
            raise ValueError(f"{CAP_ENV_VAR} must be an integer, got '{raw}'") from error
    if not 1 <= cap <= HARD_ENUMERATION_CAP:
        raise ValueError(f"Enumeration cap must lie in 1..{HARD_ENUMERATION_CAP}, got {cap}")
    return cap
