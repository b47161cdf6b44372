# flake8: noqa: F401

from .cover import (
    Comap,
    CoverCheck,
    PowerDecomposition,
    check_power_identity,
    check_standard_cover,
    evaluate_decomposition,
    find_power_decomposition,
    spec_comap,
    union_of_opens,
)
from .spectrum import (
    PointSet,
    Spectrum,
    TopologyReport,
    closed_sets,
    closure,
    comparability_edges,
    hasse_edges,
    is_t0,
    is_upward_closed,
    principal_open,
    spectrum,
    to_dot,
    vanishing_set,
    verify_topology_axioms,
)
