# flake8: noqa: F401

from .automorphisms import (
    GammaAutomorphism,
    SpectrumAction,
    automorphism_action,
    automorphism_sheaf_action,
    enumerate_gamma_automorphisms,
    is_group,
)
from .bracket import (
    FilippovReport,
    bracket_table,
    is_bracket_symmetric,
    section_algebra,
    triadic_bracket,
    verify_filippov,
    verify_restriction_compat,
    verify_stalk_bracket,
)
