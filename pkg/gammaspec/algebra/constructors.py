"""Constructors for the fixture semirings used throughout the package."""

import itertools
import string
from typing import Optional, Sequence, Tuple

import numpy as np

from ..semiring import FiniteGroup, FiniteSemiring, TernaryGammaSemiring, as_semiring


def _chain_names(n: int) -> Tuple[str, ...]:
    if n == 2:
        return ("0", "1")
    if n == 3:
        return ("0", "e", "1")
    inner = list(string.ascii_lowercase[: n - 2]) if n - 2 <= 26 else [f"c{k}" for k in range(n - 2)]
    return tuple(["0"] + inner + ["1"])


def make_chain(n: int) -> FiniteSemiring:
    """The n-element chain lattice with join as addition and meet as multiplication.

    Elements are named 0 < e < 1 for n = 3 and 0 < a < b < ... < 1 otherwise.
    """
    if n < 2:
        raise ValueError(f"A chain semiring needs at least 2 elements, got {n}")
    add = [[max(i, j) for j in range(n)] for i in range(n)]
    mul = [[min(i, j) for j in range(n)] for i in range(n)]
    return FiniteSemiring(_chain_names(n), add, mul, 0, n - 1)


def make_boolean() -> FiniteSemiring:
    """The Boolean semiring B = {0, 1} with or/and."""
    return make_chain(2)


def product(*factors: FiniteSemiring) -> FiniteSemiring:
    """Cartesian product with componentwise operations.

    The carrier is ordered lexicographically (first factor major) and elements are named
    `(x,y,...)` after their components.
    """
    if not factors:
        raise ValueError("A product needs at least one factor")
    factors = tuple(as_semiring(f) for f in factors)
    carrier = list(itertools.product(*(f.elements() for f in factors)))
    position = {tup: i for i, tup in enumerate(carrier)}
    names = ["(" + ",".join(f.names[c] for f, c in zip(factors, tup)) + ")" for tup in carrier]

    def table(op: str):
        return [
            [
                position[tuple(getattr(f, op)[a][b] for f, a, b in zip(factors, x, y))]
                for y in carrier
            ]
            for x in carrier
        ]

    zero = position[tuple(f.zero for f in factors)]
    one = position[tuple(f.one for f in factors)]
    return FiniteSemiring(tuple(names), table("add"), table("mul"), zero, one)


def boolean_power(k: int) -> FiniteSemiring:
    """B^k, the product of k Boolean semirings."""
    if k < 1:
        raise ValueError(f"Boolean power needs k >= 1, got {k}")
    if k == 1:
        return make_boolean()
    return product(*([make_boolean()] * k))


def truncated_naturals(k: int) -> FiniteSemiring:
    """{0, ..., k} with ordinary + and · truncated at k. Not idempotent for k >= 2."""
    if k < 1:
        raise ValueError(f"Truncation bound must be >= 1, got {k}")
    add = [[min(i + j, k) for j in range(k + 1)] for i in range(k + 1)]
    mul = [[min(i * j, k) for j in range(k + 1)] for i in range(k + 1)]
    return FiniteSemiring(tuple(str(i) for i in range(k + 1)), add, mul, 0, 1)


def make_modular(m: int) -> FiniteSemiring:
    """The ring Z/m viewed as a semiring."""
    if m < 2:
        raise ValueError(f"Modulus must be >= 2, got {m}")
    add = [[(i + j) % m for j in range(m)] for i in range(m)]
    mul = [[(i * j) % m for j in range(m)] for i in range(m)]
    return FiniteSemiring(tuple(str(i) for i in range(m)), add, mul, 0, 1)


def zero_semiring() -> FiniteSemiring:
    """The one-element semiring where 0 = 1."""
    return FiniteSemiring(("0",), ((0,),), ((0,),), 0, 0)


def make_group_lattice(order: int) -> TernaryGammaSemiring:
    """Idempotent semiring {0} ∪ Z/order ∪ {t} with Γ = Z/order acting through its units.

    Distinct nonzero elements add to the top t, group elements multiply in Z/order and t
    absorbs every nonzero factor. The unit group is the cyclic group itself, so `u` is the
    identity of Z/order.
    """
    if order < 1:
        raise ValueError(f"Group order must be >= 1, got {order}")
    group = FiniteGroup.cyclic(order)
    top = order + 1
    size = order + 2
    names = ["0", "1"] + list(group.names[1:]) + ["t"]

    def plus(x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0 or x == y:
            return x
        return top

    def times(x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if x == top or y == top:
            return top
        return (x - 1 + y - 1) % order + 1

    add = [[plus(x, y) for y in range(size)] for x in range(size)]
    mul = [[times(x, y) for y in range(size)] for x in range(size)]
    semiring = FiniteSemiring(tuple(names), add, mul, 0, 1)
    return TernaryGammaSemiring(semiring, group, tuple(range(1, order + 1)))


def relabel(T, permutation: Sequence[int]):
    """An isomorphic copy whose element `x` is moved to index `permutation[x]`.

    Accepts a `FiniteSemiring` or a `TernaryGammaSemiring` and returns the same kind.
    """
    S = as_semiring(T)
    perm = list(permutation)
    if sorted(perm) != list(range(S.size)):
        raise ValueError(f"{perm} is not a permutation of 0..{S.size - 1}")
    back = [0] * S.size
    for old, new in enumerate(perm):
        back[new] = old
    names = tuple(S.names[back[i]] for i in range(S.size))
    add = [[perm[S.add[back[i]][back[j]]] for j in range(S.size)] for i in range(S.size)]
    mul = [[perm[S.mul[back[i]][back[j]]] for j in range(S.size)] for i in range(S.size)]
    copy = FiniteSemiring(names, add, mul, perm[S.zero], perm[S.one])
    if isinstance(T, TernaryGammaSemiring):
        return TernaryGammaSemiring(copy, T.gamma, tuple(perm[u] for u in T.units))
    return copy


def random_distributive_lattice(
    rng: np.random.Generator, max_points: int = 3, density: Optional[float] = None
) -> FiniteSemiring:
    """The lattice of down-sets of a random poset, as a semiring (union, intersection).

    Finite distributive lattices are exactly of this form. The carrier has at most
    `2 ** max_points` elements.
    """
    points = int(rng.integers(1, max_points + 1))
    p = float(rng.random()) if density is None else density
    below = np.zeros((points, points), dtype=bool)
    for i in range(points):
        for j in range(i + 1, points):
            below[i, j] = rng.random() < p
    # transitive closure
    for k in range(points):
        below |= below[:, [k]] & below[[k], :]

    downsets = []
    for bits in itertools.product((False, True), repeat=points):
        chosen = {i for i in range(points) if bits[i]}
        if all(i in chosen for j in chosen for i in range(points) if below[i, j]):
            downsets.append(frozenset(chosen))
    downsets.sort(key=lambda s: (len(s), sorted(s)))
    position = {s: i for i, s in enumerate(downsets)}
    names = tuple("{" + ",".join(str(i) for i in sorted(s)) + "}" for s in downsets)
    add = [[position[a | b] for b in downsets] for a in downsets]
    mul = [[position[a & b] for b in downsets] for a in downsets]
    return FiniteSemiring(names, add, mul, position[frozenset()], position[frozenset(range(points))])
