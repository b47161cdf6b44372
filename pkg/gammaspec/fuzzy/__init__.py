# flake8: noqa: F401

from .fuzzy import (
    FuzzySubset,
    alpha_cut,
    breakpoint_grid,
    cut_bridge,
    is_fuzzy_gamma_ideal,
    sup_distance,
    verify_stability,
)
