from typing import Any, Dict, Iterable, List, Sequence, Tuple


class LimitedAttributeSetter:
    """Refuse undeclared attributes, and every assignment once `_lock` was called."""

    def __setattr__(self, __name: str, __value: Any) -> None:
        if self.__dict__.get("_locked", False):
            raise TypeError(f"{type(self).__name__} is read-only")
        if (
            hasattr(self, __name)
            or __name in getattr(type(self), "__annotations__", {})
            or (hasattr(self, "_allow_attrs") and __name in self._allow_attrs)  # type: ignore  # pylint: disable=E1101
        ):
            super().__setattr__(__name, __value)
            return
        raise TypeError(f"There is no such attribute '{__name}'")

    def _lock(self):
        self.__dict__["_locked"] = True


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, size: int):
        self._parent = list(range(size))
        self._size = [1] * size

    def find(self, v: int) -> int:
        while v != self._parent[v]:
            self._parent[v] = self._parent[self._parent[v]]
            v = self._parent[v]
        return v

    def union(self, v: int, w: int) -> bool:
        """Merge the sets of `v` and `w`. Returns False if they were already merged."""
        i, j = self.find(v), self.find(w)
        if i == j:
            return False
        if self._size[i] < self._size[j]:
            i, j = j, i
        self._parent[j] = i
        self._size[i] += self._size[j]
        return True

    def components(self) -> List[Tuple[int, ...]]:
        """Return the sets, each sorted, ordered by their smallest member."""
        groups: Dict[int, List[int]] = {}
        for v in range(len(self._parent)):
            groups.setdefault(self.find(v), []).append(v)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_members(mask: int) -> Tuple[int, ...]:
    members = []
    i = 0
    while mask:
        if mask & 1:
            members.append(i)
        mask >>= 1
        i += 1
    return tuple(members)


def format_table(names: Sequence[str], table: Sequence[Sequence[int]]) -> str:
    """Render an operation table with element names on both axes."""
    width = max(len(n) for n in names) if names else 1
    header = " " * (width + 1) + " ".join(n.rjust(width) for n in names)
    rows = [
        f"{names[i].rjust(width)} " + " ".join(names[v].rjust(width) for v in row)
        for i, row in enumerate(table)
    ]
    return "\n".join([header] + rows)


def format_matrix(matrix: Any) -> str:
    rows = [[str(v) for v in row] for row in matrix]
    if not rows:
        return "[]"
    width = max(len(v) for row in rows for v in row) if rows[0] else 1
    return "\n".join("[" + " ".join(v.rjust(width) for v in row) + "]" for row in rows)
