import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..__config__ import AUTOMORPHISM_CAP
from ..algebra import SemiringMap, preserves_bracket
from ..ideals import IdealSubset, is_prime
from ..semiring import Algebra, TernaryGammaSemiring, as_gamma_semiring
from ..sheaf import StructureSheaf, universal_extend
from ..topology import Spectrum
from ..types import CapacityError, ConsistencyError, ElementId, StructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaAutomorphism:
    """A permutation of the carrier preserving +, ·, 0, 1 and fixing every u_γ."""

    algebra: TernaryGammaSemiring
    images: Tuple[ElementId, ...]

    def __post_init__(self):
        object.__setattr__(self, "algebra", as_gamma_semiring(self.algebra))
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if not self.as_map().is_bijective() or not self.as_map().is_homomorphism():
            raise StructureError(f"Not a Γ-automorphism: {self.images}")

    def __call__(self, x: ElementId) -> ElementId:
        return self.images[x]

    def as_map(self) -> SemiringMap:
        return SemiringMap(self.algebra, self.algebra, self.images)

    def compose(self, other: "GammaAutomorphism") -> "GammaAutomorphism":
        """`self ∘ other`."""
        return GammaAutomorphism(self.algebra, tuple(self.images[y] for y in other.images))

    def inverse(self) -> "GammaAutomorphism":
        return GammaAutomorphism(self.algebra, self.as_map().inverse().images)

    @property
    def is_identity(self) -> bool:
        return self.images == tuple(range(len(self.images)))


def _preserves_tables(T: TernaryGammaSemiring, images: np.ndarray) -> bool:
    S = T.semiring
    for table in (S.add_array, S.mul_array):
        if not np.array_equal(images[table], table[images[:, None], images[None, :]]):
            return False
    return True


def is_group(autos: Sequence[GammaAutomorphism]) -> bool:
    """Closed under composition and inverses, and contains the identity."""
    members = {a.images for a in autos}
    if not any(a.is_identity for a in autos):
        return False
    return all(a.compose(b).images in members for a in autos for b in autos) and all(
        a.inverse().images in members for a in autos
    )


def enumerate_gamma_automorphisms(T: Algebra, cap: int = AUTOMORPHISM_CAP) -> List[GammaAutomorphism]:
    """Every Γ-automorphism, by permuting the elements other than 0, 1 and the u_γ.

    Raises:
        CapacityError: If the carrier is larger than `cap`.
        ConsistencyError: If the automorphisms found do not form a group.
    """
    T = as_gamma_semiring(T)
    if T.size > cap:
        raise CapacityError(f"Automorphism search refused: carrier size {T.size} exceeds {cap}")
    fixed = sorted({T.zero, T.one, *T.units})
    free = [x for x in T.elements() if x not in fixed]
    found = []
    for arrangement in itertools.permutations(free):
        images = np.arange(T.size)
        if free:
            images[free] = arrangement
        if _preserves_tables(T, images):
            found.append(GammaAutomorphism(T, tuple(images)))
    if not is_group(found):
        raise ConsistencyError("Γ-automorphisms are not closed under composition", witness=found)
    logger.debug("Found %s Γ-automorphisms", len(found))
    return found


@dataclass(frozen=True)
class SpectrumAction:
    """The homeomorphism P -> σ⁻¹(P), as a permutation of spectrum point indices."""

    automorphism: GammaAutomorphism
    permutation: Tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.permutation[i]

    def matrix(self) -> np.ndarray:
        """Permutation matrix sending e_i to e_{σ*(i)}."""
        n = len(self.permutation)
        P = np.zeros((n, n), dtype=np.int64)
        P[list(self.permutation), list(range(n))] = 1
        return P


def automorphism_action(sigma: GammaAutomorphism, X: Spectrum) -> SpectrumAction:
    """Act on the spectrum by P -> σ⁻¹(P).

    Raises:
        ConsistencyError: If an image is not prime, the containment order is not preserved,
            or σ fails to preserve a bracket.
    """
    T = X.algebra
    inverse = sigma.inverse()
    permutation = []
    for P in X.points:
        image = IdealSubset.of(T, (inverse(x) for x in P.members()))
        if not is_prime(T, image):
            raise ConsistencyError(f"σ⁻¹({P.label(T)}) is not prime", witness=P)
        permutation.append(X.index(image))
    C = X.containment
    p = np.array(permutation, dtype=np.int64)
    if p.size and not np.array_equal(C[p[:, None], p[None, :]], C):
        raise ConsistencyError("Automorphism does not preserve the specialization order")
    failing = preserves_bracket(sigma.as_map())
    if failing is not None:
        raise ConsistencyError("Automorphism does not preserve the bracket", witness=failing)
    return SpectrumAction(sigma, tuple(permutation))


def automorphism_sheaf_action(
    sigma: GammaAutomorphism, f: ElementId, sheaf: Optional[StructureSheaf] = None
) -> SemiringMap:
    """σ#: T_f -> T_{σ(f)}, the extension of ι_{σ(f)}∘σ.

    Raises:
        ConsistencyError: If the induced map is not bijective or breaks a bracket.
    """
    sheaf = sheaf if sheaf is not None else StructureSheaf(sigma.algebra)
    induced = universal_extend(
        sigma.as_map().then(sheaf.canonical_map(sigma(f))), f, sheaf.localization(f)
    )
    if not induced.is_bijective():
        raise ConsistencyError(f"σ# on T_{sigma.algebra.names[f]} is not bijective", witness=f)
    failing = preserves_bracket(induced)
    if failing is not None:
        raise ConsistencyError(f"σ# on T_{sigma.algebra.names[f]} breaks a bracket", witness=failing)
    return induced
