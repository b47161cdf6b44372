from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..topology import Spectrum, hasse_edges
from ..utils import UnionFind


@dataclass(frozen=True, eq=False)
class ComparabilityGraph:
    """Undirected graph on spectrum points. `hasse` marks the covering-edge variant."""

    labels: Tuple[str, ...]
    adjacency: np.ndarray
    hasse: bool = False

    @property
    def size(self) -> int:
        return len(self.labels)

    def edges(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(self.adjacency, 1)))]

    def components(self) -> List[Tuple[int, ...]]:
        finder = UnionFind(self.size)
        for i, j in self.edges():
            finder.union(i, j)
        return finder.components()


def specialization_graph(X: Spectrum, hasse: bool = False) -> ComparabilityGraph:
    """Edge between distinct comparable primes.

    With `hasse=True` only covering pairs are joined. That variant has the same
    components but a different Laplacian.
    """
    n = X.size
    if hasse:
        adjacency = np.zeros((n, n), dtype=bool)
        for i, j in hasse_edges(X):
            adjacency[i, j] = adjacency[j, i] = True
    else:
        adjacency = (X.containment | X.containment.T) & ~np.eye(n, dtype=bool)
    adjacency.setflags(write=False)
    return ComparabilityGraph(X.labels(), adjacency, hasse)


def graph_to_dot(G: ComparabilityGraph) -> str:
    lines = ["graph specialization {"]
    for i, label in enumerate(G.labels):
        lines.append(f'  P{i} [label="{label}"];')
    for i, j in G.edges():
        lines.append(f"  P{i} -- P{j};")
    lines.append("}")
    return "\n".join(lines)
