# flake8: noqa: F401

from .constructors import (
    boolean_power,
    make_boolean,
    make_chain,
    make_group_lattice,
    make_modular,
    product,
    random_distributive_lattice,
    relabel,
    truncated_naturals,
    zero_semiring,
)
from .homomorphism import (
    SemiringMap,
    identity_map,
    is_homomorphism,
    preserves_bracket,
    product_factors,
    projection,
)
from .serialization import semiring_from_dict, semiring_to_dict
