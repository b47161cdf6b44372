import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..__config__ import enumeration_cap
from ..semiring import Algebra, as_gamma_semiring, as_semiring, powers, ternary_product
from ..types import CapacityError, ConsistencyError, ElementId, PreconditionError
from ..utils import mask_members, to_mask

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IdealSubset:
    """A subset of a carrier as a bitset. Ordering is by bitset value, the canonical order.

    The class holds any subset; `is_gamma_ideal` decides whether it is an ideal.
    """

    mask: int
    size: int

    @classmethod
    def of(cls, S: Algebra, elements: Iterable[ElementId]) -> "IdealSubset":
        S = as_semiring(S)
        return cls(to_mask(elements), S.size)

    @classmethod
    def named(cls, S: Algebra, names: Iterable[str]) -> "IdealSubset":
        S = as_semiring(S)
        return cls.of(S, (S.index(n) for n in names))

    @classmethod
    def full(cls, S: Algebra) -> "IdealSubset":
        S = as_semiring(S)
        return cls((1 << S.size) - 1, S.size)

    @classmethod
    def empty(cls, S: Algebra) -> "IdealSubset":
        return cls(0, as_semiring(S).size)

    def __contains__(self, x: ElementId) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def members(self) -> Tuple[ElementId, ...]:
        return mask_members(self.mask)

    def issubset(self, other: "IdealSubset") -> bool:
        return self.mask & ~other.mask == 0

    def union(self, other: "IdealSubset") -> "IdealSubset":
        return IdealSubset(self.mask | other.mask, self.size)

    def intersection(self, other: "IdealSubset") -> "IdealSubset":
        return IdealSubset(self.mask & other.mask, self.size)

    def complement(self) -> Tuple[ElementId, ...]:
        return tuple(x for x in range(self.size) if x not in self)

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << self.size) - 1

    def label(self, S: Algebra) -> str:
        S = as_semiring(S)
        return "{" + ",".join(S.names[x] for x in self.members()) + "}"


def _as_subset(S, subset) -> IdealSubset:
    if isinstance(subset, IdealSubset):
        return subset
    return IdealSubset.of(S, subset)


def is_gamma_ideal(T: Algebra, I) -> bool:
    """Whether `I` contains 0, is closed under + and absorbs products with any element.

    Because every u_γ is a unit, absorbing ternary products is the same as absorbing
    binary ones, so the plain ideal test decides the Γ-ideal property.
    """
    S = as_semiring(T)
    I = _as_subset(S, I)
    if S.zero not in I:
        return False
    members = I.members()
    for a in members:
        for b in members:
            if S.add[a][b] not in I:
                return False
        for t in S.elements():
            if S.mul[t][a] not in I:
                return False
    return True


def generated_ideal(T: Algebra, E) -> IdealSubset:
    """The least ideal containing `E`, computed as a closure fixed point."""
    S = as_semiring(T)
    current = set(_as_subset(S, E).members()) | {S.zero}
    while True:
        grown = set(current)
        for a in current:
            grown.update(S.add[a][b] for b in current)
            grown.update(S.mul[t][a] for t in S.elements())
        if grown == current:
            return IdealSubset.of(S, current)
        current = grown


def ideal_sum(T: Algebra, *ideals: IdealSubset) -> IdealSubset:
    S = as_semiring(T)
    mask = 0
    for I in ideals:
        mask |= I.mask
    return generated_ideal(S, IdealSubset(mask, S.size))


def ideal_intersection(T: Algebra, *ideals: IdealSubset) -> IdealSubset:
    S = as_semiring(T)
    mask = (1 << S.size) - 1
    for I in ideals:
        mask &= I.mask
    return IdealSubset(mask, S.size)


def radical(T: Algebra, I) -> IdealSubset:
    """Elements some power of which lies in `I`.

    Raises:
        PreconditionError: If `I` is not an ideal.
    """
    S = as_semiring(T)
    I = _as_subset(S, I)
    if not is_gamma_ideal(S, I):
        raise PreconditionError(f"radical needs an ideal, got {I.label(S)}")
    return IdealSubset.of(S, (x for x in S.elements() if any(p in I for p in powers(S, x))))


def is_ternary_prime(T: Algebra, P) -> bool:
    """Primality in the ternary form: `{a b c}_γ ∈ P` forces one of a, b, c into P."""
    G = as_gamma_semiring(T)
    P = _as_subset(G.semiring, P)
    if P.is_full or not is_gamma_ideal(G, P):
        return False
    outside = P.complement()
    for g in G.gamma.elements():
        for a in outside:
            for b in outside:
                for c in outside:
                    if ternary_product(G, a, b, c, g) in P:
                        return False
    return True


def is_binary_prime(T: Algebra, P) -> bool:
    """Whether `P` is a proper ideal with `xy ∈ P => x ∈ P or y ∈ P`."""
    S = as_semiring(T)
    P = _as_subset(S, P)
    if P.is_full or not is_gamma_ideal(S, P):
        return False
    outside = P.complement()
    return all(S.mul[x][y] not in P for x in outside for y in outside)


def is_prime(T: Algebra, P) -> bool:
    """Binary primality, cross-checked against the ternary form.

    The two must agree since every u_γ is a unit.
    """
    S = as_semiring(T)
    P = _as_subset(S, P)
    binary = is_binary_prime(S, P)
    ternary = is_ternary_prime(T, P)
    if binary != ternary:
        raise ConsistencyError(
            f"Binary and ternary primality disagree on {P.label(S)}", witness=P
        )
    return binary


def _check_cap(S, cap: Optional[int]) -> None:
    limit = enumeration_cap(cap)
    if S.size > limit:
        raise CapacityError(
            f"Exhaustive ideal enumeration refused: carrier size {S.size} exceeds cap {limit}. "
            "Work with generated ideals (generated_ideal, radical) instead."
        )


def enumerate_ideals(T: Algebra, cap: Optional[int] = None) -> List[IdealSubset]:
    """Every ideal of the carrier, ascending by bitset value.

    All subsets containing 0 are scanned at once as a numpy vector of bitsets; each
    closure condition drops the failing candidates before the next one is tested.
    """
    S = as_semiring(T)
    _check_cap(S, cap)
    n = S.size
    masks = np.arange(1 << n, dtype=np.int64)
    masks = masks[(masks >> S.zero) & 1 == 1]
    for a in S.elements():
        for b in S.elements():
            if masks.size == 0:
                break
            has_ab = ((masks >> a) & 1) & ((masks >> b) & 1)
            closed_add = (masks >> S.add[a][b]) & 1
            closed_mul = (masks >> S.mul[b][a]) & 1
            # a in I and b in I => a+b in I ; a in I => b·a in I
            keep = ((has_ab == 0) | (closed_add == 1)) & ((((masks >> a) & 1) == 0) | (closed_mul == 1))
            masks = masks[keep]
    ideals = [IdealSubset(int(m), n) for m in np.sort(masks)]
    logger.debug("Enumerated %s ideals on a carrier of size %s", len(ideals), n)
    return ideals


def enumerate_primes(T: Algebra, cap: Optional[int] = None) -> List[IdealSubset]:
    """Every prime ideal, ascending by bitset value."""
    return [I for I in enumerate_ideals(T, cap) if is_prime(T, I)]


@dataclass(frozen=True)
class RadicalLemmaResult:
    holds: bool
    radical: IdealSubset
    intersection: IdealSubset
    witness: Optional[ElementId] = None


def verify_radical_lemma(
    T: Algebra, I, primes: Optional[Sequence[IdealSubset]] = None, cap: Optional[int] = None
) -> RadicalLemmaResult:
    """Compare `radical(I)` with the intersection of the primes containing `I`.

    The intersection over an empty family is the full carrier.
    """
    S = as_semiring(T)
    I = _as_subset(S, I)
    if primes is None:
        primes = enumerate_primes(T, cap)
    rad = radical(T, I)
    inter = ideal_intersection(S, *(P for P in primes if I.issubset(P)))
    if rad == inter:
        return RadicalLemmaResult(True, rad, inter)
    witness = next(x for x in S.elements() if (x in rad) != (x in inter))
    logger.debug("Radical lemma fails for %s at %s", I.label(S), S.names[witness])
    return RadicalLemmaResult(False, rad, inter, witness)
