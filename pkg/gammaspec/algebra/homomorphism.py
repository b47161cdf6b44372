import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from ..semiring import Algebra, FiniteSemiring, TernaryGammaSemiring, as_gamma_semiring, ternary_product
from ..types import ElementId, StructureError

logger = logging.getLogger(__name__)


def _same_gamma(T: TernaryGammaSemiring, S: TernaryGammaSemiring) -> bool:
    return T.gamma.table == S.gamma.table and T.gamma.identity == S.gamma.identity


def is_homomorphism(images: Sequence[ElementId], source: Algebra, target: Algebra) -> bool:
    """Whether `x -> images[x]` preserves +, ·, 0, 1 and every unit u_γ.

    Args:
        images (Sequence[int]): Image of every source element, by index.
        source (TernaryGammaSemiring): Domain.
        target (TernaryGammaSemiring): Codomain, over the same Γ.

    Returns:
        bool: True for a homomorphism of ternary Γ-semirings.
    """
    T, S = as_gamma_semiring(source), as_gamma_semiring(target)
    if len(images) != T.size or any(not 0 <= y < S.size for y in images):
        return False
    if not _same_gamma(T, S):
        return False
    A, B = T.semiring, S.semiring
    if images[A.zero] != B.zero or images[A.one] != B.one:
        return False
    if any(images[T.units[g]] != S.units[g] for g in T.gamma.elements()):
        return False
    for a in A.elements():
        for b in A.elements():
            if images[A.add[a][b]] != B.add[images[a]][images[b]]:
                return False
            if images[A.mul[a][b]] != B.mul[images[a]][images[b]]:
                return False
    return True


@dataclass(frozen=True)
class SemiringMap:
    """A map between the carriers of two ternary Γ-semirings, stored as an image table."""

    source: TernaryGammaSemiring
    target: TernaryGammaSemiring
    images: Tuple[ElementId, ...]

    def __post_init__(self):
        object.__setattr__(self, "source", as_gamma_semiring(self.source))
        object.__setattr__(self, "target", as_gamma_semiring(self.target))
        images = tuple(int(y) for y in self.images)
        if len(images) != self.source.size:
            raise StructureError(
                f"Map has {len(images)} images but the source has {self.source.size} elements"
            )
        if any(not 0 <= y < self.target.size for y in images):
            raise StructureError(f"Map images {images} leave the target carrier")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_names(cls, source: Algebra, target: Algebra, mapping: Dict[str, str]) -> "SemiringMap":
        T, S = as_gamma_semiring(source), as_gamma_semiring(target)
        missing = [n for n in T.names if n not in mapping]
        if missing:
            raise StructureError(f"Map is not total: no image for {missing}")
        return cls(T, S, tuple(S.semiring.index(mapping[n]) for n in T.names))

    def __call__(self, x: ElementId) -> ElementId:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.images, self.source, self.target)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.images)) == self.source.size

    def then(self, other: "SemiringMap") -> "SemiringMap":
        """The composite `other ∘ self`."""
        if other.source.semiring != self.target.semiring:
            raise ValueError("Maps are not composable: target and source differ")
        return SemiringMap(self.source, other.target, tuple(other(y) for y in self.images))

    def inverse(self) -> "SemiringMap":
        if not self.is_bijective():
            raise ValueError("Only a bijective map has an inverse")
        back = [0] * self.source.size
        for x, y in enumerate(self.images):
            back[y] = x
        return SemiringMap(self.target, self.source, tuple(back))

    def preimage(self, members) -> Tuple[ElementId, ...]:
        members = set(members)
        return tuple(x for x in self.source.elements() if self.images[x] in members)

    def describe(self) -> str:
        src, dst = self.source.names, self.target.names
        return ", ".join(f"{src[x]}->{dst[y]}" for x, y in enumerate(self.images))


def identity_map(T: Algebra) -> SemiringMap:
    T = as_gamma_semiring(T)
    return SemiringMap(T, T, tuple(T.elements()))


def projection(product_algebra: Algebra, factor: Algebra, index: int) -> SemiringMap:
    """Projection of a product built by `product` onto one factor, matched by element names."""
    P, F = as_gamma_semiring(product_algebra), as_gamma_semiring(factor)
    images = []
    for name in P.names:
        parts = name[1:-1].split(",")
        if not name.startswith("(") or index >= len(parts):
            raise StructureError(f"'{name}' is not a product element with component {index}")
        images.append(F.semiring.index(parts[index]))
    return SemiringMap(P, F, tuple(images))


def preserves_bracket(phi: SemiringMap) -> Optional[Tuple[ElementId, ...]]:
    """Check `φ({a b c}_γ) = {φa φb φc}_γ` for every triple and γ.

    Returns:
        Optional[tuple]: None when every bracket is preserved, else the first failing
        `(a, b, c, γ)`.
    """
    T, S = phi.source, phi.target
    for g in T.gamma.elements():
        for a in T.elements():
            for b in T.elements():
                for c in T.elements():
                    left = phi(ternary_product(T, a, b, c, g))
                    right = ternary_product(S, phi(a), phi(b), phi(c), g)
                    if left != right:
                        logger.debug("Bracket not preserved at %s", (a, b, c, g))
                        return (a, b, c, g)
    return None


def _components(names: Sequence[str]) -> Optional[Tuple[Tuple[str, ...], ...]]:
    if not names or not all(n.startswith("(") and n.endswith(")") for n in names):
        return None
    parts = tuple(tuple(n[1:-1].split(",")) for n in names)
    arity = len(parts[0])
    if arity < 2 or any(len(p) != arity for p in parts):
        return None
    return parts


def product_factors(T: Algebra) -> Tuple[TernaryGammaSemiring, ...]:
    """Recover the factors of a product built by `product` from its element names.

    Each factor carries the same Γ, with u_γ the matching component of the product's u_γ.
    Returns an empty tuple when the names are not flat tuples, the carrier is not the full
    cartesian product, or the tables are not componentwise.
    """
    T = as_gamma_semiring(T)
    S = T.semiring
    parts = _components(S.names)
    if parts is None:
        return ()
    values = [list(dict.fromkeys(p[i] for p in parts)) for i in range(len(parts[0]))]
    if len(set(parts)) != S.size or S.size != math.prod(len(v) for v in values):
        return ()
    factors = []
    for i, names in enumerate(values):
        position = {name: k for k, name in enumerate(names)}
        representative = {p[i]: x for x, p in reversed(list(enumerate(parts)))}
        tables = {}
        for op, table in (("add", S.add), ("mul", S.mul)):
            tables[op] = [
                [position[parts[table[representative[a]][representative[b]]][i]] for b in names]
                for a in names
            ]
            for x, y in itertools.product(S.elements(), repeat=2):
                expected = tables[op][position[parts[x][i]]][position[parts[y][i]]]
                if position[parts[table[x][y]][i]] != expected:
                    return ()
        semiring = FiniteSemiring(
            tuple(names),
            tables["add"],
            tables["mul"],
            position[parts[S.zero][i]],
            position[parts[S.one][i]],
        )
        units = tuple(position[parts[u][i]] for u in T.units)
        factors.append(TernaryGammaSemiring(semiring, T.gamma, units))
    logger.debug("Recovered %s product factors of sizes %s", len(factors), [f.size for f in factors])
    return tuple(factors)
