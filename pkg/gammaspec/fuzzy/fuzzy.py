import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..ideals import IdealSubset, is_gamma_ideal
from ..semiring import Algebra, as_gamma_semiring
from ..types import ConsistencyError, PreconditionError, StructureError, Verdict

logger = logging.getLogger(__name__)

Grade = Union[Fraction, int, str]


def _grade(value: Grade) -> Fraction:
    try:
        grade = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as error:
        raise StructureError(f"'{value}' is not a rational grade") from error
    if not 0 <= grade <= 1:
        raise StructureError(f"Grade {grade} lies outside [0, 1]")
    return grade


@dataclass(frozen=True)
class FuzzySubset:
    """A membership grade in [0, 1] for every carrier element, as exact rationals."""

    grades: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "grades", tuple(_grade(g) for g in self.grades))

    @classmethod
    def parse(cls, T: Algebra, mapping: Dict[str, Grade]) -> "FuzzySubset":
        """Grades from `{element name: "p/q"}`. Elements left out get grade 0."""
        S = as_gamma_semiring(T).semiring
        unknown = [name for name in mapping if name not in S.names]
        if unknown:
            raise StructureError(f"Fuzzy subset grades unknown elements {unknown}")
        return cls(tuple(_grade(mapping.get(name, 0)) for name in S.names))

    @classmethod
    def indicator(cls, T: Algebra, I: IdealSubset) -> "FuzzySubset":
        return cls(tuple(Fraction(1 if x in I else 0) for x in as_gamma_semiring(T).elements()))

    @classmethod
    def constant(cls, T: Algebra, value: Grade) -> "FuzzySubset":
        return cls((_grade(value),) * as_gamma_semiring(T).size)

    @property
    def size(self) -> int:
        return len(self.grades)

    def __call__(self, x: int) -> Fraction:
        return self.grades[x]

    def numerators(self) -> Tuple[np.ndarray, int]:
        """Grades as integers over their least common denominator."""
        denominator = math.lcm(*(g.denominator for g in self.grades)) if self.grades else 1
        values = np.array([g.numerator * (denominator // g.denominator) for g in self.grades], dtype=np.int64)
        return values, denominator

    def describe(self, T: Algebra) -> str:
        names = as_gamma_semiring(T).names
        return ", ".join(f"{names[x]}:{g}" for x, g in enumerate(self.grades))


def alpha_cut(mu: FuzzySubset, alpha: Grade) -> IdealSubset:
    """{x : μ(x) >= α}, empty for α > 1 and the whole carrier for α <= 0."""
    alpha = Fraction(alpha)
    full = IdealSubset((1 << mu.size) - 1, mu.size)
    if alpha > 1:
        return IdealSubset(0, mu.size)
    if alpha <= 0:
        return full
    return IdealSubset(sum(1 << x for x, g in enumerate(mu.grades) if g >= alpha), mu.size)


def is_fuzzy_gamma_ideal(T: Algebra, mu: FuzzySubset) -> Verdict:
    """μ(0) = 1, μ(x+y) >= min(μ(x), μ(y)) and μ({x y z}_γ) >= μ(x), checked on every tuple."""
    G = as_gamma_semiring(T)
    S = G.semiring
    if mu.size != S.size:
        raise PreconditionError(f"Fuzzy subset has {mu.size} grades for {S.size} elements")
    if mu(S.zero) != 1:
        return Verdict(False, (S.zero,), "μ(0)=1 violated")
    values, _ = mu.numerators()
    sums = values[S.add_array] < np.minimum(values[:, None], values[None, :])
    if np.any(sums):
        x, y = (int(v) for v in np.argwhere(sums)[0])
        return Verdict(False, (x, y), f"μ({S.names[x]}+{S.names[y]}) >= min violated")
    M = S.mul_array
    xyz = M[M[:, :, None], np.arange(S.size)[None, None, :]]
    for g in G.gamma.elements():
        low = values[M[xyz, G.units[g]]] < values[:, None, None]
        if np.any(low):
            x, y, z = (int(v) for v in np.argwhere(low)[0])
            return Verdict(False, (x, y, z, g), "μ({x y z}_γ) >= μ(x) violated")
    return Verdict(True)


def sup_distance(mu: FuzzySubset, nu: FuzzySubset) -> Fraction:
    if mu.size != nu.size:
        raise PreconditionError("Fuzzy subsets live on carriers of different sizes")
    return max((abs(a - b) for a, b in zip(mu.grades, nu.grades)), default=Fraction(0))


def verify_stability(mu: FuzzySubset, nu: FuzzySubset, alpha: Grade, epsilon: Grade) -> bool:
    """[μ]_{α+ε} ⊆ [ν]_α ⊆ [μ]_{α-ε} when ‖μ - ν‖∞ <= ε.

    Raises:
        PreconditionError: If the sup distance exceeds ε.
        ConsistencyError: If an inclusion fails.
    """
    alpha, epsilon = Fraction(alpha), Fraction(epsilon)
    distance = sup_distance(mu, nu)
    if distance > epsilon:
        raise PreconditionError(f"‖μ - ν‖∞ = {distance} exceeds ε = {epsilon}")
    inner, middle, outer = alpha_cut(mu, alpha + epsilon), alpha_cut(nu, alpha), alpha_cut(mu, alpha - epsilon)
    if not inner.issubset(middle) or not middle.issubset(outer):
        raise ConsistencyError(
            f"α-cut inclusions fail at α = {alpha}, ε = {epsilon}", witness=(inner, middle, outer)
        )
    return True


def breakpoint_grid(mu: FuzzySubset, nu: Optional[FuzzySubset] = None, epsilon: Grade = 0) -> List[Fraction]:
    """Every grade of μ and ν together with its shifts by ±ε, ascending."""
    epsilon = Fraction(epsilon)
    grades = set(mu.grades) | (set(nu.grades) if nu is not None else set())
    return sorted({g + d for g in grades for d in (-epsilon, Fraction(0), epsilon)})


def cut_bridge(T: Algebra, mu: FuzzySubset) -> Verdict:
    """Every nonempty α-cut of a fuzzy Γ-ideal, over the breakpoint grid, is a crisp ideal.

    Raises:
        PreconditionError: If μ is not a fuzzy Γ-ideal.
    """
    verdict = is_fuzzy_gamma_ideal(T, mu)
    if not verdict:
        raise PreconditionError(f"Not a fuzzy Γ-ideal: {verdict.detail}")
    for alpha in breakpoint_grid(mu):
        cut = alpha_cut(mu, alpha)
        if len(cut) and not is_gamma_ideal(T, cut):
            return Verdict(False, alpha, f"α-cut at {alpha} is not an ideal")
    return Verdict(True)
