# SPDX-License-Identifier: CC-BY-SA-4.0

"""Partial flags V in W, transversality and clustering of flag samples."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.cluster import hierarchy

from relanosov_lab.flags.subspaces import (
    DimensionMismatch,
    FlagGeometryError,
    Subspace,
    angle_distance,
    transversality_margin,
)

logger = logging.getLogger(__name__)

COMPATIBILITY_TOLERANCE = 1e-8
TRANSVERSALITY_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class Flag:
    """A pair V in W with dim V = k and dim W = d - k."""

    V: Subspace
    W: Subspace

    def __post_init__(self) -> None:
        if self.V.d != self.W.d or self.V.k + self.W.k != self.V.d or self.V.k > self.W.k:
            raise DimensionMismatch(
                f"flag needs dim V = k <= dim W = d - k, got {self.V.k}, {self.W.k} in K^{self.V.d}"
            )
        outside = self.V.frame - self.W.projector() @ self.V.frame
        if np.linalg.norm(outside, ord=2) > COMPATIBILITY_TOLERANCE:
            raise FlagGeometryError("V is not contained in W")

    @property
    def k(self) -> int:
        return self.V.k

    @property
    def d(self) -> int:
        return self.V.d


def flags_transverse(
    x: Flag, y: Flag, tolerance: float = TRANSVERSALITY_TOLERANCE
) -> tuple[bool, float]:
    """Transversality of two flags with its margin."""
    if x.k != y.k or x.d != y.d:
        raise DimensionMismatch("flags of different types")
    margin = min(transversality_margin(x.V, y.W), transversality_margin(y.V, x.W))
    return margin > tolerance, margin


def flag_distance(x: Flag, y: Flag) -> float:
    return max(angle_distance(x.V, y.V), angle_distance(x.W, y.W))


@dataclass
class FlagClusters:
    """Cluster id per input flag; ids count from 0 in canonical order."""

    labels: list[int]
    representatives: list[int]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, cluster: int) -> list[int]:
        return [i for i, label in enumerate(self.labels) if label == cluster]


def _canonical_key(flag: Flag) -> tuple[float, ...]:
    projectors = np.concatenate([flag.V.projector().ravel(), flag.W.projector().ravel()])
    rounded = np.round(np.concatenate([projectors.real, projectors.imag]), 6) + 0.0
    return tuple(rounded.tolist())


def cluster_flags(points: Sequence[Flag], radius: float) -> FlagClusters:
    """Single-linkage clusters under max(d(V, V'), d(W, W')) cut at ``radius``.

    Points are put in a canonical order first, so the partition and its
    numbering do not depend on the input order.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = len(points)
    if n == 0:
        return FlagClusters([], [])
    order = sorted(range(n), key=lambda i: _canonical_key(points[i]))
    if n == 1:
        return FlagClusters([0], [0])
    ordered = [points[i] for i in order]
    condensed = np.array(
        [flag_distance(ordered[i], ordered[j]) for i in range(n) for j in range(i + 1, n)]
    )
    raw = hierarchy.fcluster(
        hierarchy.linkage(condensed, method="single"), t=radius, criterion="distance"
    )
    renumber: dict[int, int] = {}
    labels = [0] * n
    representatives: list[int] = []
    for position, index in enumerate(order):
        cluster = int(raw[position])
        if cluster not in renumber:
            renumber[cluster] = len(renumber)
            representatives.append(index)
        labels[index] = renumber[cluster]
    logger.debug("Clustered flags", extra={"points": n, "clusters": len(representatives)})
    return FlagClusters(labels, representatives)


def flag_rows(
    points: Sequence[Flag], clusters: FlagClusters, sources: Sequence[str] | None = None
) -> list[list[object]]:
    """CSV rows (with header) of flattened frames plus cluster id."""
    if not points:
        return [["source", "cluster"]]
    sample = points[0]
    complex_field = np.iscomplexobj(sample.V.frame) or np.iscomplexobj(sample.W.frame)
    header: list[object] = ["source", "cluster"]
    for name, subspace in (("V", sample.V), ("W", sample.W)):
        for i in range(subspace.d):
            for j in range(subspace.k):
                header.append(f"{name}_{i}{j}")
                if complex_field:
                    header.append(f"{name}_{i}{j}_imag")
    rows: list[list[object]] = [header]
    for index, flag in enumerate(points):
        row: list[object] = [sources[index] if sources else "", clusters.labels[index]]
        for subspace in (flag.V, flag.W):
            for value in subspace.frame.ravel():
                row.append(float(np.real(value)))
                if complex_field:
                    row.append(float(np.imag(value)))
        rows.append(row)
    return rows
