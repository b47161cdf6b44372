import logging
from typing import List, Optional, Tuple

from ..algebra import SemiringMap
from ..semiring import (
    Algebra,
    FiniteSemiring,
    TernaryGammaSemiring,
    as_gamma_semiring,
    inverse,
    power,
    powers,
    validate_semiring,
)
from ..types import ConsistencyError, ElementId, PreconditionError
from ..utils import LimitedAttributeSetter, UnionFind, format_table

logger = logging.getLogger(__name__)

Pair = Tuple[ElementId, ElementId]


class LocalizedSemiring(LimitedAttributeSetter):
    """The localization T_f: pairs (a, s) with s in {1, f, f^2, ...} modulo

    (a, s) ~ (b, t)  iff  u·a·t = u·b·s for some u in {1, f, f^2, ...}.

    Classes are ordered by their smallest pair, pairs being ordered by denominator
    position and then numerator. A class is named after that pair, as `a/s`.

    Args:
        base (TernaryGammaSemiring): The semiring being localized.
        f (int): The inverted element.
    """

    base: TernaryGammaSemiring
    element: ElementId
    denominators: Tuple[ElementId, ...]
    exponents: Tuple[int, ...]
    pairs: Tuple[Pair, ...]
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    algebra: TernaryGammaSemiring
    canonical: Tuple[ElementId, ...]

    def __init__(self, base: Algebra, f: ElementId):
        self.base = as_gamma_semiring(base)
        S = self.base.semiring
        self.element = f
        denominators = [S.one]
        exponents = [0]
        for n, p in enumerate(powers(S, f), start=1):
            if p not in denominators:
                denominators.append(p)
                exponents.append(n)
        self.denominators = tuple(denominators)
        self.exponents = tuple(exponents)
        self.pairs = tuple((a, s) for s in self.denominators for a in S.elements())
        self._build_classes()
        self._build_tables()
        self._lock()
        logger.debug(
            "Localized %s-element semiring at %s: %s classes",
            S.size,
            S.names[f],
            len(self.classes),
        )

    def _pair_index(self, a: ElementId, s: ElementId) -> int:
        return self.denominators.index(s) * self.base.size + a

    def related(self, p: Pair, q: Pair) -> bool:
        S = self.base.semiring
        (a, s), (b, t) = p, q
        return any(
            S.mul[S.mul[u][a]][t] == S.mul[S.mul[u][b]][s] for u in self.denominators
        )

    def _build_classes(self):
        finder = UnionFind(len(self.pairs))
        for i, p in enumerate(self.pairs):
            for j in range(i + 1, len(self.pairs)):
                if self.related(p, self.pairs[j]):
                    finder.union(i, j)
        self.classes = tuple(finder.components())
        class_of = [0] * len(self.pairs)
        for c, members in enumerate(self.classes):
            for i in members:
                class_of[i] = c
        self.class_of = tuple(class_of)

    def _class(self, a: ElementId, s: ElementId) -> int:
        return self.class_of[self._pair_index(a, s)]

    def _build_tables(self):
        S = self.base.semiring
        k = len(self.classes)
        add: List[List[Optional[int]]] = [[None] * k for _ in range(k)]
        mul: List[List[Optional[int]]] = [[None] * k for _ in range(k)]
        # (a/s) + (b/t) = (at + bs)/(st) and (a/s)(b/t) = (ab)/(st), on every representative
        for i, (a, s) in enumerate(self.pairs):
            for j, (b, t) in enumerate(self.pairs):
                ci, cj = self.class_of[i], self.class_of[j]
                st = S.mul[s][t]
                total = self._class(S.add[S.mul[a][t]][S.mul[b][s]], st)
                prod = self._class(S.mul[a][b], st)
                for table, value, op in ((add, total, "+"), (mul, prod, "·")):
                    if table[ci][cj] is None:
                        table[ci][cj] = value
                    elif table[ci][cj] != value:
                        raise ConsistencyError(
                            f"Fraction {op} depends on the representatives of classes {ci}, {cj}",
                            witness=(self.pairs[i], self.pairs[j]),
                        )
        names = tuple(f"{S.names[a]}/{S.names[s]}" for a, s in (self.pairs[c[0]] for c in self.classes))
        semiring = FiniteSemiring(
            names, add, mul, self._class(S.zero, S.one), self._class(S.one, S.one)
        )
        report = validate_semiring(semiring)
        if not report.ok:
            raise ConsistencyError(
                f"Localization at {S.names[self.element]} is not a semiring: {report.violations[0]}",
                witness=report.violations[0],
            )
        self.canonical = tuple(self._class(a, S.one) for a in S.elements())
        self.algebra = TernaryGammaSemiring(
            semiring, self.base.gamma, tuple(self.canonical[u] for u in self.base.units)
        )
        f_inverse = self._class(S.one, self.element)
        if semiring.mul[self.canonical[self.element]][f_inverse] != semiring.one:
            raise ConsistencyError(
                f"ι({S.names[self.element]}) is not invertible in the localization", witness=self.element
            )

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.algebra.names

    def fraction(self, a: ElementId, s: ElementId) -> int:
        """The class of a/s.

        Raises:
            PreconditionError: If s is not a power of the inverted element.
        """
        if s not in self.denominators:
            S = self.base.semiring
            raise PreconditionError(
                f"{S.names[s]} is not a power of {S.names[self.element]}"
            )
        return self._class(a, s)

    def fraction_power(self, a: ElementId, n: int) -> int:
        """The class of a/f^n for n >= 0."""
        S = self.base.semiring
        return self._class(a, S.one if n == 0 else power(S, self.element, n))

    def parse(self, text: str) -> int:
        """Class of a fraction written `a/s` with element names, or a bare `a` for a/1."""
        S = self.base.semiring
        numerator, _, denominator = text.partition("/")
        s = S.index(denominator.strip()) if denominator else S.one
        return self.fraction(S.index(numerator.strip()), s)

    def representative(self, c: int) -> Pair:
        return self.pairs[self.classes[c][0]]

    def members(self, c: int) -> Tuple[Pair, ...]:
        return tuple(self.pairs[i] for i in self.classes[c])

    def exponent_of(self, s: ElementId) -> int:
        return self.exponents[self.denominators.index(s)]

    def canonical_map(self) -> SemiringMap:
        """ι_f: T -> T_f, a -> a/1."""
        return SemiringMap(self.base, self.algebra, self.canonical)

    def __repr__(self) -> str:
        return f"LocalizedSemiring(at={self.base.names[self.element]}, classes={list(self.names)})"


def localize(T: Algebra, f: ElementId) -> LocalizedSemiring:
    return LocalizedSemiring(T, f)


def universal_extend(
    phi: SemiringMap, f: ElementId, localization: Optional[LocalizedSemiring] = None
) -> SemiringMap:
    """The unique homomorphism T_f -> R extending φ: T -> R, a/f^n -> φ(a)·φ(f)^(-n).

    Args:
        phi (SemiringMap): Homomorphism out of the base semiring.
        f (int): Element already inverted in `localization`.
        localization (LocalizedSemiring, optional): T_f; built when omitted.

    Raises:
        PreconditionError: If φ(f) is not a unit of R.
        ConsistencyError: If the extension is not well defined, not a homomorphism,
            or T_f is not generated by fractions ι(a)·ι(f)^(-n).
    """
    L = localization if localization is not None else LocalizedSemiring(phi.source, f)
    if L.base.semiring != phi.source.semiring or L.element != f:
        raise ValueError("Localization and homomorphism do not share the base element")
    R = phi.target.semiring
    phi_f_inverse = inverse(R, phi(f))
    if phi_f_inverse is None:
        raise PreconditionError(
            f"φ({L.base.names[f]}) = {R.names[phi(f)]} is not a unit of the target"
        )
    images: List[Optional[int]] = [None] * L.size
    for c in range(L.size):
        for a, s in L.members(c):
            n = L.exponent_of(s)
            value = phi(a) if n == 0 else R.mul[phi(a)][power(R, phi_f_inverse, n)]
            if images[c] is None:
                images[c] = value
            elif images[c] != value:
                raise ConsistencyError(
                    f"Extension is not well defined on class {L.names[c]}", witness=(a, s)
                )
    extension = SemiringMap(L.algebra, phi.target, tuple(images))
    if not extension.is_homomorphism():
        raise ConsistencyError(f"Extension of {phi.describe()} is not a homomorphism")
    # every class is ι(a)·(1/f^n), so any extension is forced on it
    Lsr = L.algebra.semiring
    for c in range(L.size):
        a, s = L.representative(c)
        if Lsr.mul[L.canonical[a]][L.fraction(L.base.one, s)] != c:
            raise ConsistencyError(f"Class {L.names[c]} is not ι(a)/f^n", witness=c)
    if any(extension(L.canonical[a]) != phi(a) for a in L.base.elements()):
        raise ConsistencyError("Extension does not restrict to φ along ι")
    return extension


def format_localization(L: LocalizedSemiring) -> str:
    """Textual dump of the classes, with their member pairs, and of both tables."""
    S = L.base.semiring
    lines = [f"T_{S.names[L.element]}: {L.size} classes"]
    for c in range(L.size):
        members = ", ".join(f"({S.names[a]},{S.names[s]})" for a, s in L.members(c))
        lines.append(f"  {L.names[c]}: {members}")
    lines.append("ι: " + ", ".join(f"{S.names[a]}->{L.names[c]}" for a, c in enumerate(L.canonical)))
    lines.append("+")
    lines.append(format_table(L.names, L.algebra.semiring.add))
    lines.append("·")
    lines.append(format_table(L.names, L.algebra.semiring.mul))
    return "\n".join(lines)
