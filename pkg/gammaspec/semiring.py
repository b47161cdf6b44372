import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from .__config__ import AXIOM_CHECK_CAP
from .types import CapacityError, ElementId, PreconditionError, StructureError, Table

logger = logging.getLogger(__name__)


def _freeze_table(table: Sequence[Sequence[int]], size: int, label: str) -> Table:
    if len(table) != size:
        raise StructureError(f"{label} table has {len(table)} rows, expected {size}")
    frozen = []
    for i, row in enumerate(table):
        if len(row) != size:
            raise StructureError(f"{label} table row {i} has {len(row)} entries, expected {size}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < size:
                raise StructureError(f"{label} table row {i} holds out-of-range entry {v!r}")
        frozen.append(tuple(int(v) for v in row))
    return tuple(frozen)


def _check_names(names: Sequence[str]) -> Tuple[str, ...]:
    names = tuple(str(n) for n in names)
    if not names:
        raise StructureError("A carrier must have at least one element")
    if len(set(names)) != len(names):
        raise StructureError(f"Element names must be unique, got {names}")
    return names


def _check_index(value: int, size: int, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or not 0 <= value < size:
        raise StructureError(f"{label} index {value!r} is out of range for a carrier of size {size}")
    return int(value)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.axiom} at ({', '.join(self.witness)})"


@dataclass(frozen=True)
class ValidationReport:
    """All axiom instances that fail. An empty report means the structure is valid."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> FrozenSet[str]:
        return frozenset(v.axiom for v in self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


@dataclass(frozen=True)
class FiniteSemiring:
    """A finite commutative semiring given by its operation tables.

    Elements are the dense indices `0..n-1`; `names` is the side-table used for display and I/O.
    Construction only checks the shape of the tables. Use `validate_semiring` for the axioms.
    """

    names: Tuple[str, ...]
    add: Table
    mul: Table
    zero: ElementId
    one: ElementId

    def __post_init__(self):
        names = _check_names(self.names)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "add", _freeze_table(self.add, len(names), "Addition"))
        object.__setattr__(self, "mul", _freeze_table(self.mul, len(names), "Multiplication"))
        object.__setattr__(self, "zero", _check_index(self.zero, len(names), "Zero"))
        object.__setattr__(self, "one", _check_index(self.one, len(names), "One"))

    @property
    def size(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.size)

    def plus(self, a: ElementId, b: ElementId) -> ElementId:
        return self.add[a][b]

    def times(self, a: ElementId, b: ElementId) -> ElementId:
        return self.mul[a][b]

    def sum(self, xs) -> ElementId:
        total = self.zero
        for x in xs:
            total = self.add[total][x]
        return total

    def product(self, xs) -> ElementId:
        total = self.one
        for x in xs:
            total = self.mul[total][x]
        return total

    def index(self, name: str) -> ElementId:
        try:
            return self.names.index(str(name))
        except ValueError as error:
            raise StructureError(f"Unknown element '{name}'") from error

    def name(self, x: ElementId) -> str:
        return self.names[x]

    @cached_property
    def add_array(self) -> np.ndarray:
        arr = np.array(self.add, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr

    @cached_property
    def mul_array(self) -> np.ndarray:
        arr = np.array(self.mul, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table."""

    names: Tuple[str, ...]
    table: Table
    identity: ElementId = 0

    def __post_init__(self):
        names = _check_names(self.names)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", _freeze_table(self.table, len(names), "Cayley"))
        object.__setattr__(self, "identity", _check_index(self.identity, len(names), "Identity"))

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(("e",), ((0,),), 0)

    @classmethod
    def cyclic(cls, order: int) -> "FiniteGroup":
        """The cyclic group Z/order with elements named e, g, g2, ..."""
        if order < 1:
            raise ValueError("A cyclic group needs order >= 1")
        names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, order)]
        table = [[(i + j) % order for j in range(order)] for i in range(order)]
        return cls(tuple(names), table, 0)

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def op(self, g: ElementId, h: ElementId) -> ElementId:
        return self.table[g][h]

    def index(self, name: str) -> ElementId:
        try:
            return self.names.index(str(name))
        except ValueError as error:
            raise StructureError(f"Unknown group element '{name}'") from error

    @cached_property
    def inverses(self) -> Tuple[Optional[ElementId], ...]:
        """Inverse of every element, None where no inverse exists."""
        return tuple(
            next((h for h in self.elements() if self.table[g][h] == self.identity), None)
            for g in self.elements()
        )


@dataclass(frozen=True)
class TernaryGammaSemiring:
    """A commutative semiring with a homomorphism `u` from a finite group Γ into its units.

    `units[γ]` is the element u_γ; the ternary operation is `{a b c}_γ = a·b·c·u_γ`.
    """

    semiring: FiniteSemiring
    gamma: FiniteGroup = field(default_factory=FiniteGroup.trivial)
    units: Tuple[ElementId, ...] = ()

    def __post_init__(self):
        units = tuple(self.units) if self.units else (self.semiring.one,) * self.gamma.order
        if len(units) != self.gamma.order:
            raise StructureError(
                f"Unit map has {len(units)} entries but Γ has {self.gamma.order} elements"
            )
        object.__setattr__(
            self, "units", tuple(_check_index(u, self.semiring.size, "Unit") for u in units)
        )

    @classmethod
    def trivial(cls, semiring: FiniteSemiring) -> "TernaryGammaSemiring":
        return cls(semiring, FiniteGroup.trivial(), (semiring.one,))

    @property
    def size(self) -> int:
        return self.semiring.size

    @property
    def names(self) -> Tuple[str, ...]:
        return self.semiring.names

    @property
    def zero(self) -> ElementId:
        return self.semiring.zero

    @property
    def one(self) -> ElementId:
        return self.semiring.one

    def elements(self) -> range:
        return self.semiring.elements()

    def unit(self, gamma: ElementId) -> ElementId:
        return self.units[gamma]


Algebra = Union[FiniteSemiring, TernaryGammaSemiring]


def as_semiring(algebra: Algebra) -> FiniteSemiring:
    if isinstance(algebra, TernaryGammaSemiring):
        return algebra.semiring
    return algebra


def as_gamma_semiring(algebra: Algebra) -> TernaryGammaSemiring:
    if isinstance(algebra, TernaryGammaSemiring):
        return algebra
    return TernaryGammaSemiring.trivial(algebra)


def _violations(axiom: str, names: Sequence[str], hits: np.ndarray) -> List[Violation]:
    return [Violation(axiom, tuple(names[int(i)] for i in hit)) for hit in hits]


def _monoid_violations(prefix: str, S: FiniteSemiring, op: np.ndarray, unit: int) -> List[Violation]:
    idx = np.arange(S.size)
    found = []
    lhs = op[op[:, :, None], idx[None, None, :]]
    rhs = op[idx[:, None, None], op[None, :, :]]
    found += _violations(f"{prefix} associativity", S.names, np.argwhere(lhs != rhs))
    found += _violations(f"{prefix} commutativity", S.names, np.argwhere(op != op.T))
    bad_identity = np.flatnonzero((op[unit, :] != idx) | (op[:, unit] != idx))
    found += _violations(f"{prefix} identity", S.names, bad_identity[:, None])
    return found


def validate_semiring(S: Algebra, cap: int = AXIOM_CHECK_CAP) -> ValidationReport:
    """Check every commutative semiring axiom exhaustively.

    Args:
        S (FiniteSemiring): Tables to check.
        cap (int, optional): Largest carrier checked. Defaults to `AXIOM_CHECK_CAP`.

    Returns:
        ValidationReport: One violation per failing axiom instance, named by its witnesses.
    """
    S = as_semiring(S)
    if S.size > cap:
        raise CapacityError(f"Axiom check refused: carrier size {S.size} exceeds cap {cap}")
    add, mul = S.add_array, S.mul_array
    idx = np.arange(S.size)

    found = _monoid_violations("addition", S, add, S.zero)
    found += _monoid_violations("multiplication", S, mul, S.one)

    # a(b+c) = ab+ac and (b+c)a = ba+ca
    lhs = mul[idx[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    found += _violations("left distributivity", S.names, np.argwhere(lhs != rhs))
    lhs = mul[add[:, :, None], idx[None, None, :]]
    rhs = add[mul[:, None, :], mul[None, :, :]]
    found += _violations("right distributivity", S.names, np.argwhere(lhs != rhs))

    bad_zero = np.flatnonzero((mul[S.zero, :] != S.zero) | (mul[:, S.zero] != S.zero))
    found += _violations("zero absorption", S.names, bad_zero[:, None])

    logger.debug("Semiring of size %s: %s violations", S.size, len(found))
    return ValidationReport(tuple(found))


def validate_group(G: FiniteGroup) -> ValidationReport:
    """Check the commutative group axioms of a Cayley table."""
    table = np.array(G.table, dtype=np.int64).reshape(G.order, G.order)
    idx = np.arange(G.order)
    found = []
    lhs = table[table[:, :, None], idx[None, None, :]]
    rhs = table[idx[:, None, None], table[None, :, :]]
    found += _violations("group associativity", G.names, np.argwhere(lhs != rhs))
    found += _violations("group commutativity", G.names, np.argwhere(table != table.T))
    bad_identity = np.flatnonzero((table[G.identity, :] != idx) | (table[:, G.identity] != idx))
    found += _violations("group identity", G.names, bad_identity[:, None])
    for g, inv in enumerate(G.inverses):
        if inv is None:
            found.append(Violation("group inverse", (G.names[g],)))
    return ValidationReport(tuple(found))


def inverse(S: Algebra, x: ElementId) -> Optional[ElementId]:
    """Multiplicative inverse of `x`, found by scanning the carrier. None if `x` is not a unit."""
    S = as_semiring(S)
    for y in S.elements():
        if S.mul[x][y] == S.one:
            return y
    return None


def unit_group(S: Algebra) -> FrozenSet[ElementId]:
    S = as_semiring(S)
    return frozenset(x for x in S.elements() if inverse(S, x) is not None)


def validate_gamma_structure(T: TernaryGammaSemiring) -> ValidationReport:
    """Check that `u` is a group homomorphism from Γ into the unit group of the semiring.

    Raises:
        PreconditionError: If the semiring or the group are not valid on their own.
    """
    semiring_report = validate_semiring(T.semiring)
    group_report = validate_group(T.gamma)
    if not semiring_report.ok or not group_report.ok:
        raise PreconditionError(
            "Γ-structure needs a valid semiring and group: "
            + "; ".join(str(v) for v in semiring_report.violations + group_report.violations)
        )
    S, G = T.semiring, T.gamma
    found = []
    for g in G.elements():
        if inverse(S, T.units[g]) is None:
            found.append(Violation("not a unit", (G.names[g], S.names[T.units[g]])))
    if T.units[G.identity] != S.one:
        found.append(Violation("identity not sent to one", (G.names[G.identity],)))
    for g in G.elements():
        for h in G.elements():
            if T.units[G.op(g, h)] != S.times(T.units[g], T.units[h]):
                found.append(Violation("not multiplicative", (G.names[g], G.names[h])))
    return ValidationReport(tuple(found))


def ternary_product(
    T: TernaryGammaSemiring, a: ElementId, b: ElementId, c: ElementId, gamma: ElementId
) -> ElementId:
    """The Γ-parametrised ternary operation `{a b c}_γ = a·b·c·u_γ`."""
    S = T.semiring
    return S.mul[S.mul[S.mul[a][b]][c]][T.units[gamma]]


def is_idempotent(S: Algebra) -> bool:
    S = as_semiring(S)
    return all(S.add[x][x] == x for x in S.elements())


def power(S: Algebra, x: ElementId, n: int) -> ElementId:
    """The n-fold product `x^n` for n >= 1."""
    S = as_semiring(S)
    if n < 1:
        raise PreconditionError(f"Power exponent must be >= 1, got {n}")
    result = x
    for _ in range(n - 1):
        result = S.mul[result][x]
    return result


def powers(S: Algebra, x: ElementId) -> Tuple[ElementId, ...]:
    """The distinct powers `x, x^2, ...` in order, stopping before the sequence repeats.

    Every higher power of `x` equals one of the returned elements.
    """
    S = as_semiring(S)
    seen = []
    current = x
    while current not in seen:
        seen.append(current)
        current = S.mul[current][x]
    return tuple(seen)


def multiplicative_closure(S: Algebra, x: ElementId) -> FrozenSet[ElementId]:
    """The monoid `{1, x, x^2, ...}` generated by `x`."""
    S = as_semiring(S)
    return frozenset((S.one,) + powers(S, x))
