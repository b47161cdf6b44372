"""Fixture semirings shared by the test modules."""

from typing import Dict

from gammaspec.algebra import boolean_power, make_chain, make_group_lattice, make_modular, product
from gammaspec.semiring import FiniteGroup, TernaryGammaSemiring


def chain(n: int) -> TernaryGammaSemiring:
    return TernaryGammaSemiring.trivial(make_chain(n))


def boolean_square() -> TernaryGammaSemiring:
    return TernaryGammaSemiring.trivial(boolean_power(2))


def chain3_times_boolean() -> TernaryGammaSemiring:
    return TernaryGammaSemiring.trivial(product(make_chain(3), make_chain(2)))


def modular3_with_sign() -> TernaryGammaSemiring:
    """Z/3 with Γ = Z/2 sent to {1, 2}."""
    return TernaryGammaSemiring(make_modular(3), FiniteGroup.cyclic(2), (1, 2))


def idempotent_fixtures() -> Dict[str, TernaryGammaSemiring]:
    return {
        "chain-2": chain(2),
        "chain-3": chain(3),
        "chain-4": chain(4),
        "chain-5": chain(5),
        "B×B": boolean_square(),
        "chain-3×B": chain3_times_boolean(),
        "group lattice Z/2": make_group_lattice(2),
    }


def all_fixtures() -> Dict[str, TernaryGammaSemiring]:
    fixtures = idempotent_fixtures()
    fixtures["Z/3 with Γ=Z/2"] = modular3_with_sign()
    return fixtures


# element indices of B×B, named after their components
BB_00, BB_01, BB_10, BB_11 = 0, 1, 2, 3
# element indices of the 3-chain 0 < e < 1
ZERO, E, ONE = 0, 1, 2
