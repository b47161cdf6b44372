import itertools
import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from ..__config__ import MAX_TOPOLOGY_FAMILY
from ..ideals import (
    IdealSubset,
    enumerate_ideals,
    enumerate_primes,
    generated_ideal,
    ideal_intersection,
    ideal_sum,
)
from ..semiring import Algebra, TernaryGammaSemiring, as_gamma_semiring
from ..types import ConsistencyError, ElementId
from ..utils import LimitedAttributeSetter, mask_members, to_mask

logger = logging.getLogger(__name__)

POINT_SET_KIND = Literal["closed", "open", "general"]


class Spectrum(LimitedAttributeSetter):
    """The prime spectrum of a finite ternary Γ-semiring.

    Points are the prime ideals in canonical (bitset) order; `containment[i, j]` is
    `points[i] ⊆ points[j]`, the specialization order.
    """

    algebra: TernaryGammaSemiring
    points: Tuple[IdealSubset, ...]
    containment: np.ndarray

    def __init__(self, algebra: Algebra, points: Sequence[IdealSubset]):
        self.algebra = as_gamma_semiring(algebra)
        self.points = tuple(sorted(set(points)))
        r = len(self.points)
        containment = np.zeros((r, r), dtype=bool)
        for i, P in enumerate(self.points):
            for j, Q in enumerate(self.points):
                containment[i, j] = P.issubset(Q)
        containment.setflags(write=False)
        self.containment = containment
        self._lock()

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def is_empty(self) -> bool:
        return not self.points

    def labels(self) -> Tuple[str, ...]:
        return tuple(P.label(self.algebra) for P in self.points)

    def index(self, P: IdealSubset) -> int:
        return self.points.index(P)

    def all_points(self) -> "PointSet":
        return PointSet((1 << self.size) - 1, self.size, "general")

    def __repr__(self) -> str:
        return f"Spectrum({', '.join(self.labels())})"


@dataclass(frozen=True)
class PointSet:
    """A set of spectrum points as a bitset over point indices."""

    mask: int
    size: int
    kind: POINT_SET_KIND = "general"

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def members(self) -> Tuple[int, ...]:
        return mask_members(self.mask)

    def same_points(self, other: "PointSet") -> bool:
        return self.mask == other.mask

    def issubset(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask | other.mask, self.size)

    def intersection(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & other.mask, self.size)


def spectrum(T: Algebra, cap: Optional[int] = None) -> Spectrum:
    """Enumerate the primes of `T` and their containment order."""
    X = Spectrum(T, enumerate_primes(T, cap))
    if not X.points:
        logger.info("Spectrum is empty: the semiring has no proper prime ideal")
    else:
        logger.debug("Spectrum with %s points", X.size)
    return X


def vanishing_set(X: Spectrum, I: IdealSubset) -> PointSet:
    """V(I): the primes containing I."""
    return PointSet(to_mask(i for i, P in enumerate(X.points) if I.issubset(P)), X.size, "closed")


def principal_open(X: Spectrum, f: ElementId) -> PointSet:
    """D(f): the primes not containing f."""
    return PointSet(to_mask(i for i, P in enumerate(X.points) if f not in P), X.size, "open")


def closure(X: Spectrum, points: Sequence[int]) -> PointSet:
    """The smallest closed set containing the given points.

    Closed sets are the V(I); the closure of a set of primes is V of their intersection.
    """
    T = X.algebra
    inter = ideal_intersection(T, *(X.points[i] for i in points))
    return vanishing_set(X, generated_ideal(T, inter))


def is_t0(X: Spectrum) -> bool:
    """Distinct points have distinct closures, and the closure of P is {Q : P ⊆ Q}."""
    closures = [closure(X, [i]) for i in range(X.size)]
    for i, cl in enumerate(closures):
        expected = to_mask(j for j in range(X.size) if X.containment[i, j])
        if cl.mask != expected:
            raise ConsistencyError(
                f"Closure of {X.labels()[i]} disagrees with the specialization order", witness=i
            )
    return len({c.mask for c in closures}) == X.size


def closed_sets(X: Spectrum, ideals: Optional[Sequence[IdealSubset]] = None) -> List[PointSet]:
    """All distinct closed sets V(I), ascending by bitset."""
    if ideals is None:
        ideals = enumerate_ideals(X.algebra)
    masks = sorted({vanishing_set(X, I).mask for I in ideals})
    return [PointSet(m, X.size, "closed") for m in masks]


def is_upward_closed(X: Spectrum, points: PointSet) -> bool:
    return all(
        j in points
        for i in points.members()
        for j in range(X.size)
        if X.containment[i, j]
    )


@dataclass(frozen=True)
class TopologyReport:
    holds: bool
    checked: int
    failures: Tuple[str, ...] = ()


def verify_topology_axioms(
    X: Spectrum,
    ideals: Optional[Sequence[IdealSubset]] = None,
    max_family: int = MAX_TOPOLOGY_FAMILY,
) -> TopologyReport:
    """Check the closed-set axioms of the Zariski topology and D(f)∩D(g) = D(fg).

    Unions are checked over pairs of ideals and intersections over families of size
    up to `max_family`. Closed sets are also checked to be upward closed under containment.
    """
    T = X.algebra
    S = T.semiring
    if ideals is None:
        ideals = enumerate_ideals(T)
    failures = []
    checked = 0

    def expect(condition: bool, message: str):
        nonlocal checked
        checked += 1
        if not condition:
            failures.append(message)

    everything = X.all_points()
    expect(vanishing_set(X, IdealSubset.of(S, [S.zero])).same_points(everything), "V(0) != X")
    expect(len(vanishing_set(X, IdealSubset.full(S))) == 0, "V(T) != ∅")

    for I, J in itertools.combinations_with_replacement(ideals, 2):
        left = vanishing_set(X, I).union(vanishing_set(X, J))
        right = vanishing_set(X, ideal_intersection(S, I, J))
        expect(left.same_points(right), f"V({I.label(S)}) ∪ V({J.label(S)}) != V(∩)")

    for size in range(2, max_family + 1):
        for family in itertools.combinations_with_replacement(ideals, size):
            left = everything
            for I in family:
                left = left.intersection(vanishing_set(X, I))
            right = vanishing_set(X, ideal_sum(S, *family))
            expect(
                left.same_points(right),
                "⋂V != V(Σ) for " + ", ".join(I.label(S) for I in family),
            )

    for I in ideals:
        expect(is_upward_closed(X, vanishing_set(X, I)), f"V({I.label(S)}) is not upward closed")

    for f in S.elements():
        for g in S.elements():
            left = principal_open(X, f).intersection(principal_open(X, g))
            right = principal_open(X, S.mul[f][g])
            expect(left.same_points(right), f"D({S.names[f]}) ∩ D({S.names[g]}) != D(fg)")

    logger.debug("Topology axioms: %s instances, %s failures", checked, len(failures))
    return TopologyReport(not failures, checked, tuple(failures))


def hasse_edges(X: Spectrum) -> List[Tuple[int, int]]:
    """Covering pairs (i, j): points[i] ⊊ points[j] with nothing strictly between."""
    C = X.containment
    edges = []
    for i in range(X.size):
        for j in range(X.size):
            if i == j or not C[i, j]:
                continue
            if not any(k not in (i, j) and C[i, k] and C[k, j] for k in range(X.size)):
                edges.append((i, j))
    return edges


def comparability_edges(X: Spectrum) -> List[Tuple[int, int]]:
    C = X.containment
    return [(i, j) for i in range(X.size) for j in range(i + 1, X.size) if C[i, j] or C[j, i]]


def to_dot(X: Spectrum, mode: Literal["hasse", "comparability"] = "hasse") -> str:
    """Render the specialization order as a DOT graph with prime sets as vertex labels.

    `hasse` draws directed covering edges from smaller to larger primes; `comparability`
    draws an undirected edge between every comparable pair.
    """
    if mode not in ("hasse", "comparability"):
        raise ValueError(f"Unknown DOT mode '{mode}', expected 'hasse' or 'comparability'")
    directed = mode == "hasse"
    arrow = "->" if directed else "--"
    lines = ["digraph spectrum {" if directed else "graph spectrum {"]
    for i, label in enumerate(X.labels()):
        lines.append(f'  P{i} [label="{label}"];')
    edges = hasse_edges(X) if directed else comparability_edges(X)
    for i, j in edges:
        lines.append(f"  P{i} {arrow} P{j};")
    lines.append("}")
    return "\n".join(lines)
