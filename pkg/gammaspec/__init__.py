# flake8: noqa: F401

from .__config__ import __version__
from .algebra import (
    SemiringMap,
    boolean_power,
    make_boolean,
    make_chain,
    make_group_lattice,
    product,
    semiring_from_dict,
)
from .ideals import IdealSubset, enumerate_ideals, enumerate_primes, radical
from .semiring import (
    FiniteGroup,
    FiniteSemiring,
    TernaryGammaSemiring,
    ternary_product,
    validate_gamma_structure,
    validate_semiring,
)
from .sheaf import LocalizedSemiring, StructureSheaf, localize
from .spectral import analyze_spectrum, spectral_cluster
from .topology import Spectrum, spectrum
from .types import (
    CapacityError,
    ConsistencyError,
    GammaSpecError,
    NumericalError,
    PreconditionError,
    StructureError,
)
