# SPDX-License-Identifier: CC-BY-SA-4.0

"""Truncated cusped spaces: a Cayley ball with horoballs over peripheral cosets."""

import logging
from dataclasses import dataclass
from itertools import islice

import networkx as nx
import numpy as np
from scipy import stats

from relanosov_lab.cusp.depth import CuspSpaceError, DepthFunction
from relanosov_lab.cusp.horoball import build_horoball
from relanosov_lab.groups import (
    MarkedGroup,
    PeripheralSubgroup,
    Word,
    enumerate_spheres_by_image,
    iter_spheres,
    peripheral_powers,
)
from relanosov_lab.groups.words import alphabet

logger = logging.getLogger(__name__)


class TruncationTooSmall(CuspSpaceError):
    """Raised when an element lies outside the truncated Cayley ball."""

    def __init__(self, word: Word, radius: int):
        self.word = word
        self.radius = radius
        super().__init__(f"{word} has length {len(word)} > truncation radius {radius}")


@dataclass(frozen=True, eq=False)
class CuspedGraph:
    """Finite truncation of the cusped space.

    Core vertices are reduced words; horoball vertices above level 0 are keyed
    ``(label, component, word, level)``. Every node carries ``word`` and
    ``level`` attributes.
    """

    graph: nx.Graph
    radius: int
    levels: int
    depth: DepthFunction
    horoball_count: int

    def distance(self, word: Word) -> int:
        if word not in self.graph:
            raise TruncationTooSmall(word, self.radius)
        return int(nx.shortest_path_length(self.graph, Word(), word))

    def vertex_rows(self) -> list[list[object]]:
        """``id,word,level`` rows, header first; ids follow node insertion order."""
        rows: list[list[object]] = [["id", "word", "level"]]
        for index, node in enumerate(self.graph.nodes):
            attributes = self.graph.nodes[node]
            rows.append([index, attributes["word"], attributes["level"]])
        return rows

    def edge_rows(self) -> list[list[object]]:
        """``u,v`` rows with ``u < v``, header first, in the ids of :meth:`vertex_rows`."""
        ids = {node: index for index, node in enumerate(self.graph.nodes)}
        rows: list[list[object]] = [["u", "v"]]
        for u, v in self.graph.edges:
            a, b = ids[u], ids[v]
            rows.append([min(a, b), max(a, b)])
        return rows


def cayley_ball(group: MarkedGroup, radius: int) -> list[Word]:
    """Elements of the ball, shell by shell."""
    if group.has_normal_forms:
        spheres = islice(iter_spheres(group.rank, group.orders), radius + 1)
        return [word for shell in spheres for word in shell]
    return [word for shell in enumerate_spheres_by_image(group, radius) for word in shell]


def build_cusped_graph(
    group: MarkedGroup, f: DepthFunction, radius: int, levels: int
) -> CuspedGraph:
    """Cayley ball of ``radius`` with horoballs of depth ``levels`` glued along the
    peripheral cosets it meets."""
    if radius < 0 or levels < 0:
        raise CuspSpaceError("truncation parameters must be nonnegative")
    ball = cayley_ball(group, radius)
    members = set(ball)
    graph = nx.Graph()
    for word in ball:
        graph.add_node(word, word=str(word), level=0)
    for word in ball:
        for letter in alphabet(group.rank):
            neighbour = group.reduce(Word(word.letters + (letter,)))
            if neighbour in members:
                graph.add_edge(word, neighbour)

    horoballs = 0
    for peripheral in group.peripherals:
        # adapted generating set: the peripheral generator is a generator too
        coset_graph = nx.Graph()
        for word in ball:
            step = group.reduce(word * peripheral.generator_word)
            if step in members:
                graph.add_edge(word, step)
                coset_graph.add_edge(word, step)
        components = sorted(nx.connected_components(coset_graph), key=lambda c: min(c))
        for index, component in enumerate(components):
            horoball = build_horoball(coset_graph.subgraph(component), f, levels)
            for (base, level), (other, other_level) in horoball.edges():
                graph.add_edge(
                    _horoball_node(peripheral, index, base, level),
                    _horoball_node(peripheral, index, other, other_level),
                )
            for level in range(1, levels + 1):
                for base in horoball.base_nodes:
                    node = _horoball_node(peripheral, index, base, level)
                    graph.nodes[node].update(word=str(base), level=level)
            horoballs += 1
    logger.debug(
        "Built cusped graph",
        extra={
            "radius": radius,
            "levels": levels,
            "vertices": graph.number_of_nodes(),
            "horoballs": horoballs,
        },
    )
    return CuspedGraph(graph, radius, levels, f, horoballs)


def _horoball_node(
    peripheral: PeripheralSubgroup, component: int, base: object, level: int
) -> object:
    if level == 0:
        return base
    return (peripheral.label, component, base, level)


def peripheral_norms(f: DepthFunction, n_max: int) -> list[int]:
    """|c^n| in the cusped space for n = 1..n_max, inside a single horoball.

    The base of the horoball is the coset path c^0, c^1, ..., c^n_max (the
    peripheral generator belongs to the generating set).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    horoball = build_horoball(nx.path_graph(n_max + 1), f, f.default_levels(n_max))
    distances = horoball.distances_from((0, 0))
    return [int(distances[horoball.vertex_id((n, 0))]) for n in range(1, n_max + 1)]


def _peripheral_exponent(group: MarkedGroup, word: Word) -> tuple[PeripheralSubgroup, int] | None:
    for peripheral in group.peripherals:
        for sign in (1, -1):
            # |c^n| >= n for nontrivial c in a free product, so n <= |word|
            for n in range(1, len(word) + 1):
                candidate = group.reduce(peripheral.generator_word ** (sign * n))
                if candidate == word:
                    return peripheral, n
                if len(candidate) > len(word) + len(peripheral.generator_word):
                    break
    return None


def cusped_norm(group: MarkedGroup, word: Word, f: DepthFunction, radius: int, levels: int) -> int:
    """|word| in the truncated cusped space.

    Peripheral powers are measured inside their own horoball with enough
    levels to span the power; other elements by breadth-first search in the
    truncated graph, which gives an upper bound that stabilizes as the
    truncation grows.

    Raises:
        TruncationTooSmall: If ``word`` is outside the ball of ``radius``.
    """
    word = group.reduce(word)
    if word.is_identity:
        return 0
    match = _peripheral_exponent(group, word)
    if match is not None:
        _, n = match
        return peripheral_norms(f, n)[-1]
    if len(word) > radius:
        raise TruncationTooSmall(word, radius)
    return build_cusped_graph(group, f, radius, levels).distance(word)


@dataclass
class DistortionFit:
    """Least-squares fit of |c^n|_X against log2 |c^n|_S."""

    slope: float
    intercept: float
    max_residual: float
    sample_size: int
    degenerate: bool


def log_plus(x: np.ndarray) -> np.ndarray:
    return np.log2(np.maximum(x, 1.0))


def check_log_distortion(
    group: MarkedGroup, peripheral: PeripheralSubgroup, f: DepthFunction, n_max: int
) -> DistortionFit:
    """Fit the logarithmic distortion of a peripheral subgroup."""
    lengths = np.array(
        [len(group.reduce(w)) for w in peripheral_powers(peripheral, n_max)], dtype=np.float64
    )
    norms = np.array(peripheral_norms(f, n_max), dtype=np.float64)
    xs = log_plus(lengths)
    if n_max < 2 or np.ptp(xs) == 0:
        logger.info("Degenerate log-distortion fit", extra={"n_max": n_max})
        return DistortionFit(0.0, float(norms.mean()), 0.0, n_max, True)
    fit = stats.linregress(xs, norms)
    residuals = norms - (fit.slope * xs + fit.intercept)
    result = DistortionFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        max_residual=float(np.abs(residuals).max()),
        sample_size=n_max,
        degenerate=False,
    )
    logger.info(
        "Log-distortion fit",
        extra={"peripheral": peripheral.label, "slope": result.slope, "f": f.describe()},
    )
    return result
