# flake8: noqa: F401

from .localization import LocalizedSemiring, format_localization, localize, universal_extend
from .sheaf import (
    SectionFamily,
    StructureSheaf,
    as_sheaf,
    check_gluing_uniqueness,
    compatible_families,
    eta,
    find_incompatibility,
    glue_sections,
    restriction_map,
    sheaf_map,
    stalk_at,
    stalk_element,
    verify_anti_equivalence,
    verify_global_sections,
    verify_restriction_composition,
    verify_sheaf_map_naturality,
)
