import itertools
import logging
from dataclasses import dataclass
from typing import Literal, Optional, Tuple, Union

import numpy as np

from ..algebra import preserves_bracket
from ..ideals import IdealSubset
from ..semiring import Algebra, TernaryGammaSemiring, as_gamma_semiring, is_idempotent, ternary_product
from ..sheaf import LocalizedSemiring, StructureSheaf, stalk_at
from ..types import ElementId, Verdict

logger = logging.getLogger(__name__)

SectionAlgebra = Union[Algebra, LocalizedSemiring]
FILIPPOV_STATUS = Literal["pass", "fail", "hypothesis not met"]


def section_algebra(A: SectionAlgebra) -> TernaryGammaSemiring:
    """The ternary Γ-semiring of sections: the base, a localization or a stalk."""
    if isinstance(A, LocalizedSemiring):
        return A.algebra
    return as_gamma_semiring(A)


def triadic_bracket(A: SectionAlgebra, s1: ElementId, s2: ElementId, s3: ElementId, gamma: ElementId) -> ElementId:
    """`{s1 s2 s3}_γ = s1·s2·s3·u_γ`, with u_γ taken through the canonical map."""
    return ternary_product(section_algebra(A), s1, s2, s3, gamma)


def bracket_table(A: SectionAlgebra, gamma: ElementId) -> np.ndarray:
    """All brackets at once: entry [a, b, c] is {a b c}_γ."""
    T = section_algebra(A)
    M = T.semiring.mul_array
    return M[M[M[:, :, None], np.arange(T.size)[None, None, :]], T.units[gamma]]


def is_bracket_symmetric(A: SectionAlgebra) -> bool:
    T = section_algebra(A)
    for g in T.gamma.elements():
        B = bracket_table(T, g)
        if any(not np.array_equal(B, B.transpose(p)) for p in itertools.permutations(range(3))):
            return False
    return True


@dataclass(frozen=True)
class FilippovReport:
    status: FILIPPOV_STATUS
    witness: Optional[Tuple[ElementId, ...]] = None

    def __bool__(self) -> bool:
        return self.status != "fail"


def _filippov_violation(add: np.ndarray, B: np.ndarray) -> Optional[Tuple[int, ...]]:
    n = B.shape[0]
    i = np.arange(n)
    x1 = i[:, None, None, None, None]
    x2 = i[None, :, None, None, None]
    y1 = i[None, None, :, None, None]
    y2 = i[None, None, None, :, None]
    y3 = i[None, None, None, None, :]
    left = B[x1, x2, B[None, None, :, :, :]]
    first = B[B[:, :, :, None, None], y2, y3]
    second = B[y1, B[:, :, None, :, None], y3]
    third = B[y1, y2, B[:, :, None, None, :]]
    right = add[add[first, second], third]
    hits = np.argwhere(left != right)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def verify_filippov(A: SectionAlgebra, gamma: Optional[ElementId] = None) -> FilippovReport:
    """Check the idempotent Filippov identity for the bracket on every 5-tuple.

    [x1,x2,[y1,y2,y3]] = [[x1,x2,y1],y2,y3] + [y1,[x1,x2,y2],y3] + [y1,y2,[x1,x2,y3]]

    Args:
        A: Base semiring, localization or stalk.
        gamma (int, optional): Only this γ; every γ when omitted.

    Returns:
        FilippovReport: `hypothesis not met` when addition is not idempotent, else pass
        or fail with the first failing `(x1, x2, y1, y2, y3, γ)`.
    """
    T = section_algebra(A)
    if not is_idempotent(T):
        return FilippovReport("hypothesis not met")
    gammas = T.gamma.elements() if gamma is None else [gamma]
    for g in gammas:
        hit = _filippov_violation(T.semiring.add_array, bracket_table(T, g))
        if hit is not None:
            logger.warning("Filippov identity fails at %s for γ=%s", hit, T.gamma.names[g])
            return FilippovReport("fail", hit + (g,))
    return FilippovReport("pass")


def verify_restriction_compat(
    sheaf: StructureSheaf, f: ElementId, g: ElementId, gamma: Optional[ElementId] = None
) -> bool:
    """Bracket-then-restrict equals restrict-then-bracket along ρ_{f,g}, on every triple."""
    rho = np.array(sheaf.restriction(f, g).images)
    L_f, L_g = sheaf.localization(f), sheaf.localization(g)
    gammas = sheaf.algebra.gamma.elements() if gamma is None else [gamma]
    for h in gammas:
        restricted = rho[bracket_table(L_f, h)]
        bracketed = bracket_table(L_g, h)[rho[:, None, None], rho[None, :, None], rho[None, None, :]]
        if not np.array_equal(restricted, bracketed):
            return False
    return True


def verify_stalk_bracket(T: Algebra, P: IdealSubset, sheaf: Optional[StructureSheaf] = None) -> Verdict:
    """The canonical map into the stalk at P preserves every bracket."""
    stalk = stalk_at(T, P, sheaf)
    failing = preserves_bracket(stalk.canonical_map())
    if failing is not None:
        return Verdict(False, failing, "canonical map to the stalk breaks a bracket")
    return Verdict(True)
