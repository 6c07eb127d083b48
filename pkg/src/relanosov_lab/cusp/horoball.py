# SPDX-License-Identifier: CC-BY-SA-4.0

"""Combinatorial horoballs over finite base graphs."""

import logging
from collections.abc import Hashable
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse import csgraph

from relanosov_lab.cusp.depth import CuspSpaceError, DepthFunction

logger = logging.getLogger(__name__)

Vertex = tuple[Hashable, int]


class Disconnected(CuspSpaceError):
    """Raised when two horoball vertices lie in different components."""


@dataclass(frozen=True, eq=False)
class HoroballGraph:
    """Truncated horoball over ``base_nodes`` with levels 0..levels.

    Vertex ``(v, k)`` has integer id ``k * len(base_nodes) + position(v)``.
    """

    base_nodes: tuple[Hashable, ...]
    levels: int
    reach: tuple[int, ...]
    base_distances: NDArray[np.float64]
    adjacency: sparse.csr_array
    _position: dict[Hashable, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_position", {v: i for i, v in enumerate(self.base_nodes)})

    @property
    def vertex_count(self) -> int:
        return len(self.base_nodes) * (self.levels + 1)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.nnz // 2)

    def vertex_id(self, vertex: Vertex) -> int:
        base, level = vertex
        if not 0 <= level <= self.levels or base not in self._position:
            raise KeyError(vertex)
        return level * len(self.base_nodes) + self._position[base]

    def vertex(self, vertex_id: int) -> Vertex:
        level, position = divmod(vertex_id, len(self.base_nodes))
        return self.base_nodes[position], level

    def has_edge(self, a: Vertex, b: Vertex) -> bool:
        return bool(self.adjacency[self.vertex_id(a), self.vertex_id(b)])

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        upper = sparse.triu(self.adjacency, k=1).tocoo()
        return [(self.vertex(int(i)), self.vertex(int(j))) for i, j in zip(upper.row, upper.col)]

    def distances_from(self, source: Vertex) -> NDArray[np.float64]:
        """Breadth-first distances to every vertex id; unreachable is ``inf``."""
        return csgraph.shortest_path(
            self.adjacency, directed=False, unweighted=True, indices=self.vertex_id(source)
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for level in range(self.levels + 1):
            graph.add_nodes_from(((v, level) for v in self.base_nodes), level=level)
        graph.add_edges_from(self.edges())
        return graph


def base_distance_matrix(base: nx.Graph) -> tuple[tuple[Hashable, ...], NDArray[np.float64]]:
    nodes = tuple(base.nodes)
    adjacency = nx.to_scipy_sparse_array(base, nodelist=nodes, format="csr")
    return nodes, csgraph.shortest_path(adjacency, directed=False, unweighted=True)


def build_horoball(base: nx.Graph, f: DepthFunction, levels: int) -> HoroballGraph:
    """Horoball with vertical edges (v, k)-(v, k+1) and horizontal edges
    (v, k)-(w, k) whenever 0 < d_T(v, w) <= f(k)."""
    if levels < 0:
        raise CuspSpaceError("levels must be nonnegative")
    if base.number_of_nodes() == 0:
        raise CuspSpaceError("base graph is empty")
    if not nx.is_connected(base):
        raise CuspSpaceError("base graph must be connected")
    nodes, distances = base_distance_matrix(base)
    n = len(nodes)
    reach = tuple(f(k) for k in range(levels + 1))

    rows: list[NDArray[np.intp]] = []
    cols: list[NDArray[np.intp]] = []
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    for level, radius in enumerate(reach):
        i, j = np.nonzero(upper & (distances <= radius))
        rows.append(i + level * n)
        cols.append(j + level * n)
    for level in range(levels):
        ids = np.arange(n) + level * n
        rows.append(ids)
        cols.append(ids + n)
    row = np.concatenate(rows)
    col = np.concatenate(cols)
    size = n * (levels + 1)
    data = np.ones(2 * row.size, dtype=np.int8)
    adjacency = sparse.csr_array(
        (data, (np.concatenate([row, col]), np.concatenate([col, row]))), shape=(size, size)
    )
    logger.debug(
        "Built horoball",
        extra={"base_vertices": n, "levels": levels, "edges": int(row.size)},
    )
    return HoroballGraph(nodes, levels, reach, distances, adjacency)


def horoball_distance(horoball: HoroballGraph, a: Vertex, b: Vertex) -> int:
    """Graph distance inside the truncated horoball.

    Raises:
        Disconnected: If ``b`` is unreachable from ``a``.
    """
    distance = horoball.distances_from(a)[horoball.vertex_id(b)]
    if not np.isfinite(distance):
        raise Disconnected(f"{b} is unreachable from {a}")
    return int(distance)


@dataclass
class ClosureCheck:
    """Whether two horizontal steps on a level are one step on the next level."""

    holds: bool
    violation: tuple[int, Hashable, Hashable] | None = None


def check_horizontal_closure(horoball: HoroballGraph) -> ClosureCheck:
    """Edges (v1, v2) and (v2, v3) on level k must give (v1, v3) on level k + 1."""
    distances = horoball.base_distances
    for level in range(horoball.levels):
        step = (distances > 0) & (distances <= horoball.reach[level])
        two_steps = (step.astype(np.int64) @ step.astype(np.int64)) > 0
        np.fill_diagonal(two_steps, False)
        next_level = distances <= horoball.reach[level + 1]
        bad = np.argwhere(two_steps & ~next_level)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            return ClosureCheck(False, (level, horoball.base_nodes[i], horoball.base_nodes[j]))
    return ClosureCheck(True)
