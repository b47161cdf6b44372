import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..__config__ import MAX_COVER_GENERATORS
from ..algebra import SemiringMap, preserves_bracket
from ..ideals import IdealSubset, is_prime
from ..semiring import Algebra, TernaryGammaSemiring, as_gamma_semiring, inverse, power, powers
from ..topology import (
    Spectrum,
    check_standard_cover,
    find_power_decomposition,
    principal_open,
    spec_comap,
    spectrum,
)
from ..types import ConsistencyError, ElementId, PreconditionError, Verdict
from ..utils import LimitedAttributeSetter
from .localization import LocalizedSemiring, universal_extend

logger = logging.getLogger(__name__)


class StructureSheaf(LimitedAttributeSetter):
    """The structure sheaf on the basis of principal opens: D(f) -> T_f.

    Every localization, canonical map and restriction is built once and kept.

    Args:
        algebra (TernaryGammaSemiring): The base semiring.
        cap (int, optional): Enumeration cap used for the spectrum.
    """

    algebra: TernaryGammaSemiring
    cap: Optional[int]
    _localizations: Dict[ElementId, LocalizedSemiring]
    _restrictions: Dict[Tuple[ElementId, ElementId], SemiringMap]

    def __init__(self, algebra: Algebra, cap: Optional[int] = None):
        self.algebra = as_gamma_semiring(algebra)
        self.cap = cap
        self._localizations = {}
        self._restrictions = {}
        self._lock()

    @cached_property
    def spectrum(self) -> Spectrum:
        return spectrum(self.algebra, self.cap)

    def localization(self, f: ElementId) -> LocalizedSemiring:
        if f not in self._localizations:
            self._localizations[f] = LocalizedSemiring(self.algebra, f)
        return self._localizations[f]

    def canonical_map(self, f: ElementId) -> SemiringMap:
        return self.localization(f).canonical_map()

    def contains_open(self, f: ElementId, g: ElementId) -> bool:
        """Whether D(g) ⊆ D(f)."""
        X = self.spectrum
        return principal_open(X, g).issubset(principal_open(X, f))

    def restriction(self, f: ElementId, g: ElementId) -> SemiringMap:
        """ρ_{f,g}: T_f -> T_g, the extension of ι_g along T -> T_f.

        Raises:
            PreconditionError: If D(g) is not contained in D(f).
            ConsistencyError: If ι_g(f) is not a unit of T_g.
        """
        key = (f, g)
        if key in self._restrictions:
            return self._restrictions[key]
        names = self.algebra.names
        if not self.contains_open(f, g):
            raise PreconditionError(f"D({names[g]}) is not contained in D({names[f]})")
        L_g = self.localization(g)
        if inverse(L_g.algebra, L_g.canonical[f]) is None:
            raise ConsistencyError(
                f"D({names[g]}) ⊆ D({names[f]}) but {names[f]} is not invertible in T_{names[g]}",
                witness=(f, g),
            )
        rho = universal_extend(L_g.canonical_map(), f, self.localization(f))
        self._restrictions[key] = rho
        return rho

    def restrict(self, f: ElementId, g: ElementId, section: int) -> int:
        return self.restriction(f, g)(section)


def as_sheaf(T: Union[StructureSheaf, Algebra]) -> StructureSheaf:
    return T if isinstance(T, StructureSheaf) else StructureSheaf(T)


def restriction_map(T: Union[StructureSheaf, Algebra], f: ElementId, g: ElementId) -> SemiringMap:
    return as_sheaf(T).restriction(f, g)


def verify_restriction_composition(sheaf: Union[StructureSheaf, Algebra]) -> Verdict:
    """ρ_{g,h}∘ρ_{f,g} = ρ_{f,h} whenever D(h) ⊆ D(g) ⊆ D(f)."""
    sheaf = as_sheaf(sheaf)
    T = sheaf.algebra
    for f, g, h in itertools.product(T.elements(), repeat=3):
        if not (sheaf.contains_open(f, g) and sheaf.contains_open(g, h)):
            continue
        composite = sheaf.restriction(f, g).then(sheaf.restriction(g, h))
        if composite.images != sheaf.restriction(f, h).images:
            return Verdict(False, (f, g, h), "restrictions do not compose")
    return Verdict(True)


@dataclass(frozen=True)
class SectionFamily:
    """Sections sections[i] of T_{cover[i]} meant to glue to a section over D(f)."""

    f: ElementId
    cover: Tuple[ElementId, ...]
    sections: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cover", tuple(self.cover))
        object.__setattr__(self, "sections", tuple(self.sections))
        if len(self.cover) != len(self.sections):
            raise ValueError(
                f"A section family needs one section per cover element, got "
                f"{len(self.sections)} for {len(self.cover)}"
            )

    @classmethod
    def parse(cls, sheaf: StructureSheaf, f: str, cover: Sequence[str], sections: Sequence[str]):
        """Build a family from element names and `a/s` section strings."""
        T = sheaf.algebra.semiring
        fs = tuple(T.index(name) for name in cover)
        return cls(
            T.index(f),
            fs,
            tuple(sheaf.localization(g).parse(text) for g, text in zip(fs, sections)),
        )


def _check_cover(sheaf: StructureSheaf, f: ElementId, fs: Sequence[ElementId]) -> None:
    T = sheaf.algebra
    verdict = check_standard_cover(sheaf.spectrum, f, fs)
    if not verdict.exact:
        raise PreconditionError(
            f"{[T.names[g] for g in fs]} is not a standard cover of D({T.names[f]})"
        )


def find_incompatibility(sheaf: StructureSheaf, family: SectionFamily) -> Optional[Tuple[int, int]]:
    """First overlap (i, j) on which the sections of the family disagree, if any."""
    S = sheaf.algebra.semiring
    fs, sections = family.cover, family.sections
    for i, j in itertools.combinations(range(len(fs)), 2):
        h = S.mul[fs[i]][fs[j]]
        if sheaf.restrict(fs[i], h, sections[i]) != sheaf.restrict(fs[j], h, sections[j]):
            return (i, j)
    return None


def _common_denominator(sheaf: StructureSheaf, family: SectionFamily) -> Tuple[int, List[ElementId]]:
    """Numerators b_i and one exponent M with sections[i] = b_i/f_i^M and b_i·f_j^M = b_j·f_i^M.

    The last equation holds in T itself, not only after localization.
    """
    S = sheaf.algebra.semiring
    fs = family.cover
    reps = [sheaf.localization(g).representative(s) for g, s in zip(fs, family.sections)]
    exponents = [sheaf.localization(g).exponent_of(s) for g, (_, s) in zip(fs, reps)]
    M = max([1] + exponents)
    numerators = [
        S.mul[a][power(S, g, M - k)] if M > k else a for g, (a, _), k in zip(fs, reps, exponents)
    ]
    shift = 0
    for i, j in itertools.combinations(range(len(fs)), 2):
        h = S.mul[fs[i]][fs[j]]
        left = S.mul[numerators[i]][power(S, fs[j], M)]
        right = S.mul[numerators[j]][power(S, fs[i], M)]
        candidates = [S.one] + list(powers(S, h))
        m = next((m for m, u in enumerate(candidates) if S.mul[u][left] == S.mul[u][right]), None)
        if m is None:
            raise ConsistencyError(
                f"Compatible sections on overlap ({i}, {j}) have no common numerator", witness=(i, j)
            )
        shift = max(shift, m)
    if shift:
        numerators = [S.mul[b][power(S, g, shift)] for g, b in zip(fs, numerators)]
    return M + shift, numerators


def glue_sections(sheaf: Union[StructureSheaf, Algebra], family: SectionFamily) -> int:
    """Glue a compatible family on a standard cover of D(f) into one class of T_f.

    The sections are brought to a common denominator b_i/f_i^M with the numerators
    agreeing across overlaps, then f^N = Σ a_i·f_i^M is solved and the glued section is
    (Σ a_i·b_i)/f^N. Its restrictions are checked against the input.

    Raises:
        PreconditionError: If the cover is not a standard cover or the family is not
            compatible. The message names the overlap (i, j).
        ConsistencyError: If the glued section does not restrict to every input section.
    """
    sheaf = as_sheaf(sheaf)
    T = sheaf.algebra
    S = T.semiring
    f, fs = family.f, family.cover
    _check_cover(sheaf, f, fs)
    clash = find_incompatibility(sheaf, family)
    if clash is not None:
        i, j = clash
        raise PreconditionError(
            f"Sections disagree on the overlap D({T.names[fs[i]]}·{T.names[fs[j]]}) of cover "
            f"elements ({i}, {j})"
        )
    L_f = sheaf.localization(f)
    if not fs:
        return L_f.fraction(S.zero, S.one)
    M, numerators = _common_denominator(sheaf, family)
    generators = [power(S, g, M) for g in fs]
    decomposition = find_power_decomposition(
        S, f, generators, max_generators=max(MAX_COVER_GENERATORS, len(fs))
    )
    if decomposition is None:
        raise ConsistencyError(f"Powers of the cover no longer cover D({T.names[f]})")
    numerator = S.sum(S.mul[a][b] for a, b in zip(decomposition.coefficients, numerators))
    glued = L_f.fraction_power(numerator, decomposition.exponent)
    for i, (g, s) in enumerate(zip(fs, family.sections)):
        if sheaf.restrict(f, g, glued) != s:
            raise ConsistencyError(
                f"Glued section {L_f.names[glued]} does not restrict to section {i}", witness=i
            )
    logger.debug("Glued %s sections over D(%s) into %s", len(fs), T.names[f], L_f.names[glued])
    return glued


def check_gluing_uniqueness(
    sheaf: Union[StructureSheaf, Algebra], f: ElementId, fs: Sequence[ElementId]
) -> bool:
    """Distinct sections over D(f) differ on some member of the cover.

    Raises:
        ConsistencyError: With the pair of classes no restriction separates.
    """
    sheaf = as_sheaf(sheaf)
    _check_cover(sheaf, f, fs)
    L_f = sheaf.localization(f)
    seen: Dict[Tuple[int, ...], int] = {}
    for c in range(L_f.size):
        signature = tuple(sheaf.restrict(f, g, c) for g in fs)
        if signature in seen:
            raise ConsistencyError(
                f"Sections {L_f.names[seen[signature]]} and {L_f.names[c]} have equal restrictions",
                witness=(seen[signature], c),
            )
        seen[signature] = c
    return True


def _basis_order(sheaf: StructureSheaf) -> List[ElementId]:
    X = sheaf.spectrum
    T = sheaf.algebra
    return sorted(T.elements(), key=lambda f: (-len(principal_open(X, f)), f))


def compatible_families(sheaf: StructureSheaf) -> List[Tuple[int, ...]]:
    """Every compatible choice of sections over all principal opens, indexed by element.

    Families are found by backtracking over the opens in order of decreasing size, so
    the section on D(1) is chosen first.
    """
    T = sheaf.algebra
    S = T.semiring
    order = _basis_order(sheaf)
    families = []
    chosen: Dict[ElementId, int] = {}

    def compatible(f: ElementId, s: int) -> bool:
        for g, t in chosen.items():
            h = S.mul[f][g]
            if sheaf.restrict(f, h, s) != sheaf.restrict(g, h, t):
                return False
        return True

    def extend(depth: int):
        if depth == len(order):
            families.append(tuple(chosen[f] for f in T.elements()))
            return
        f = order[depth]
        for s in range(sheaf.localization(f).size):
            if compatible(f, s):
                chosen[f] = s
                extend(depth + 1)
                del chosen[f]

    extend(0)
    return families


def eta(sheaf: StructureSheaf, a: ElementId) -> Tuple[int, ...]:
    """a -> (ι_f(a))_f, the global section a defines."""
    return tuple(sheaf.localization(f).canonical[a] for f in sheaf.algebra.elements())


def verify_global_sections(sheaf: Union[StructureSheaf, Algebra]) -> Verdict:
    """The map a -> (ι_f(a))_f is a bijection onto compatible families preserving +, · and u_γ."""
    sheaf = as_sheaf(sheaf)
    T = sheaf.algebra
    S = T.semiring
    families = compatible_families(sheaf)
    images = [eta(sheaf, a) for a in T.elements()]
    if len(set(images)) != T.size:
        return Verdict(False, images, "η is not injective")
    if set(images) != set(families):
        missing = sorted(set(families) - set(images))
        return Verdict(False, missing[0] if missing else None, "η is not onto the compatible families")

    def componentwise(op: str, x: Tuple[int, ...], y: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(
            getattr(sheaf.localization(f).algebra.semiring, op)[x[f]][y[f]] for f in T.elements()
        )

    for a, b in itertools.product(T.elements(), repeat=2):
        if images[S.add[a][b]] != componentwise("add", images[a], images[b]):
            return Verdict(False, (a, b), "η does not preserve +")
        if images[S.mul[a][b]] != componentwise("mul", images[a], images[b]):
            return Verdict(False, (a, b), "η does not preserve ·")
    for g in T.gamma.elements():
        unit_family = tuple(sheaf.localization(f).algebra.units[g] for f in T.elements())
        if images[T.units[g]] != unit_family:
            return Verdict(False, g, "η does not preserve u_γ")
    logger.debug("Global sections: %s compatible families", len(families))
    return Verdict(True, detail=f"{len(families)} compatible families")


def stalk_element(T: Algebra, P: IdealSubset) -> ElementId:
    """The product of every element outside P; inverting it inverts all of T∖P."""
    S = as_gamma_semiring(T).semiring
    return S.product(P.complement())


def stalk_at(T: Algebra, P: IdealSubset, sheaf: Optional[StructureSheaf] = None) -> LocalizedSemiring:
    """The stalk at a prime P, realized as the localization at the product of T∖P.

    Raises:
        PreconditionError: If P is not prime.
    """
    G = as_gamma_semiring(T)
    if not is_prime(G, P):
        raise PreconditionError(f"The stalk needs a prime ideal, got {P.label(G)}")
    h = stalk_element(G, P)
    L = sheaf.localization(h) if sheaf is not None else LocalizedSemiring(G, h)
    for x in P.complement():
        if inverse(L.algebra, L.canonical[x]) is None:
            raise ConsistencyError(
                f"{G.names[x]} lies outside {P.label(G)} but is not invertible in the stalk", witness=x
            )
    return L


def sheaf_map(
    phi: SemiringMap,
    f: ElementId,
    source: Optional[StructureSheaf] = None,
    target: Optional[StructureSheaf] = None,
) -> SemiringMap:
    """φ#_f: T_f -> S_{φ(f)}, the extension of ι_{φ(f)}∘φ."""
    source = source if source is not None else StructureSheaf(phi.source)
    target = target if target is not None else StructureSheaf(phi.target)
    return universal_extend(phi.then(target.canonical_map(phi(f))), f, source.localization(f))


def verify_sheaf_map_naturality(
    phi: SemiringMap,
    source: Optional[StructureSheaf] = None,
    target: Optional[StructureSheaf] = None,
) -> Verdict:
    """φ#_g∘ρ_{f,g} = ρ_{φf,φg}∘φ#_f whenever D(g) ⊆ D(f)."""
    source = source if source is not None else StructureSheaf(phi.source)
    target = target if target is not None else StructureSheaf(phi.target)
    T = source.algebra
    maps = {f: sheaf_map(phi, f, source, target) for f in T.elements()}
    for f, g in itertools.product(T.elements(), repeat=2):
        if not source.contains_open(f, g):
            continue
        if not target.contains_open(phi(f), phi(g)):
            return Verdict(False, (f, g), "φ does not send the inclusion of opens along")
        left = source.restriction(f, g).then(maps[g])
        right = maps[f].then(target.restriction(phi(f), phi(g)))
        if left.images != right.images:
            return Verdict(False, (f, g), "sheaf maps do not commute with restriction")
    return Verdict(True)


def verify_anti_equivalence(
    phi: SemiringMap,
    source: Optional[StructureSheaf] = None,
    target: Optional[StructureSheaf] = None,
) -> Verdict:
    """Rebuild φ from its comap and sheaf maps and compare with φ.

    The comap is checked continuous, the sheaf maps natural and the induced map on global
    sections equal to φ under η. φ must also preserve every bracket.
    """
    if not phi.is_homomorphism():
        raise PreconditionError(f"Not a homomorphism: {phi.describe()}")
    source = source if source is not None else StructureSheaf(phi.source)
    target = target if target is not None else StructureSheaf(phi.target)
    spec_comap(phi, source.spectrum, target.spectrum)
    naturality = verify_sheaf_map_naturality(phi, source, target)
    if not naturality:
        return naturality
    T = source.algebra
    maps = {f: sheaf_map(phi, f, source, target) for f in T.elements()}
    for a in T.elements():
        pushed = maps[T.one](source.localization(T.one).canonical[a])
        if pushed != target.localization(phi.target.one).canonical[phi(a)]:
            return Verdict(False, a, "induced map on global sections differs from φ")
        for f in T.elements():
            image = maps[f](source.localization(f).canonical[a])
            if image != target.localization(phi(f)).canonical[phi(a)]:
                return Verdict(False, (a, f), "sheaf map disagrees with φ on ι(a)")
    failing = preserves_bracket(phi)
    if failing is not None:
        return Verdict(False, failing, "φ does not preserve the bracket")
    return Verdict(True)
