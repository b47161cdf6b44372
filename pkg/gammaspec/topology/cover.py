import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..__config__ import MAX_COVER_GENERATORS
from ..algebra import SemiringMap
from ..ideals import IdealSubset, generated_ideal, is_prime, radical
from ..semiring import Algebra, as_semiring, power, powers
from ..types import CapacityError, ConsistencyError, ElementId
from .spectrum import PointSet, Spectrum, principal_open, spectrum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverCheck:
    """Outcome of a standard-cover test.

    `covered` is the verdict both sides agree on: D(f) lies in the union of the D(f_i),
    equivalently f lies in the radical of the ideal the f_i generate. `exact` additionally
    records whether the union equals D(f).
    """

    covered: bool
    exact: bool

    def __bool__(self) -> bool:
        return self.covered


def union_of_opens(X: Spectrum, fs: Sequence[ElementId]) -> PointSet:
    union = PointSet(0, X.size, "open")
    for g in fs:
        union = union.union(principal_open(X, g))
    return union


def check_standard_cover(X: Spectrum, f: ElementId, fs: Sequence[ElementId]) -> CoverCheck:
    """Evaluate a standard cover both on opens and through radical membership.

    Raises:
        ConsistencyError: If the open-set side and the radical side disagree.
    """
    T = X.algebra
    D_f = principal_open(X, f)
    union = union_of_opens(X, fs)
    by_opens = D_f.issubset(union)
    by_radical = f in radical(T, generated_ideal(T, IdealSubset.of(T, fs)))
    if by_opens != by_radical:
        raise ConsistencyError(
            f"Cover of D({T.names[f]}) by {[T.names[g] for g in fs]}: opens say {by_opens}, "
            f"radical membership says {by_radical}",
            witness=(f, tuple(fs)),
        )
    return CoverCheck(by_opens, by_opens and union.issubset(D_f))


@dataclass(frozen=True)
class PowerDecomposition:
    """`f^exponent = Σ coefficients[i]·f_i`."""

    exponent: int
    coefficients: Tuple[ElementId, ...]


def find_power_decomposition(
    T: Algebra,
    f: ElementId,
    fs: Sequence[ElementId],
    max_generators: int = MAX_COVER_GENERATORS,
) -> Optional[PowerDecomposition]:
    """Search `f^N = a_1·f_1 + ... + a_n·f_n`.

    N runs along the distinct powers of f and, for each N, coefficient tuples are tried in
    lexicographic order, so the first hit is returned.

    Args:
        T: The semiring.
        f (int): Covered element.
        fs (Sequence[int]): Cover generators.
        max_generators (int, optional): Largest accepted len(fs). Defaults to 4.

    Returns:
        Optional[PowerDecomposition]: None when f is not in the radical of ⟨fs⟩.

    Raises:
        CapacityError: If fs is longer than max_generators.
        ConsistencyError: If f is in the radical but no decomposition exists.
    """
    S = as_semiring(T)
    fs = tuple(fs)
    if len(fs) > max_generators:
        raise CapacityError(
            f"Coefficient search over {len(fs)} generators refused (limit {max_generators})"
        )
    if f not in radical(S, generated_ideal(S, IdealSubset.of(S, fs))):
        return None
    for N, target in enumerate(powers(S, f), start=1):
        for coefficients in itertools.product(S.elements(), repeat=len(fs)):
            total = S.sum(S.mul[a][g] for a, g in zip(coefficients, fs))
            if total == target:
                logger.debug("Power decomposition of %s: N=%s, a=%s", S.names[f], N, coefficients)
                return PowerDecomposition(N, coefficients)
    raise ConsistencyError(
        f"{S.names[f]} lies in the radical of the cover ideal but no power decomposes",
        witness=(f, fs),
    )


def evaluate_decomposition(T: Algebra, fs: Sequence[ElementId], decomposition: PowerDecomposition) -> ElementId:
    S = as_semiring(T)
    return S.sum(S.mul[a][g] for a, g in zip(decomposition.coefficients, fs))


@dataclass(frozen=True)
class Comap:
    """The point map Spec(S) -> Spec(T) of a homomorphism T -> S, by spectrum indices."""

    source: Spectrum
    target: Spectrum
    points: Tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.points[i]


def spec_comap(
    phi: SemiringMap, X_T: Optional[Spectrum] = None, X_S: Optional[Spectrum] = None
) -> Comap:
    """Pull primes back along `phi` and check continuity on principal opens.

    Raises:
        ValueError: If `phi` is not a homomorphism.
        ConsistencyError: If a preimage is not prime, or the preimage of some D(f) is
            not D(phi(f)).
    """
    if not phi.is_homomorphism():
        raise ValueError(f"spec_comap needs a homomorphism, got {phi.describe()}")
    T, S = phi.source, phi.target
    X_T = X_T if X_T is not None else spectrum(T)
    X_S = X_S if X_S is not None else spectrum(S)
    points = []
    for Q in X_S.points:
        P = IdealSubset.of(T, phi.preimage(Q.members()))
        if not is_prime(T, P):
            raise ConsistencyError(
                f"Preimage of the prime {Q.label(S)} is {P.label(T)}, which is not prime", witness=Q
            )
        points.append(X_T.index(P))
    comap = Comap(X_S, X_T, tuple(points))
    for f in T.elements():
        pulled = {i for i in range(X_S.size) if comap(i) in principal_open(X_T, f)}
        if pulled != set(principal_open(X_S, phi(f)).members()):
            raise ConsistencyError(
                f"Comap is not continuous at D({T.names[f]})", witness=f
            )
    logger.debug("Comap of %s: %s", phi.describe(), comap.points)
    return comap


def check_power_identity(T: Algebra, f: ElementId, fs: Sequence[ElementId], decomposition: PowerDecomposition) -> bool:
    return evaluate_decomposition(T, fs, decomposition) == power(T, f, decomposition.exponent)
