# SPDX-License-Identifier: CC-BY-SA-4.0

"""Sample-level check that divergent sequences contract transverse subspaces."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from relanosov_lab.certifiers.divergence import CertificationError
from relanosov_lab.dynamics import (
    ScaledMatrix,
    evaluate,
    letter_matrices,
    transform_subspace,
    uk_subspace,
)
from relanosov_lab.flags import Subspace, angle_distance, transversality_margin
from relanosov_lab.groups import MarkedGroup, Word

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 0.05
FINAL_DISTANCE = 1e-3


class NotTransverse(CertificationError):
    """Raised when a test subspace is too close to the repelling limit W_0."""

    def __init__(self, margin: float, index: int):
        self.margin = margin
        self.index = index
        super().__init__(f"test subspace {index} has transversality margin {margin:.3g}")


@dataclass
class ConvergenceRecord:
    margin: float
    distances: list[float]

    @property
    def converged(self) -> bool:
        half = self.distances[len(self.distances) // 2 :]
        decreasing = all(b <= a + 1e-15 for a, b in zip(half, half[1:], strict=False))
        return decreasing and self.distances[-1] < FINAL_DISTANCE


@dataclass
class DynamicsReport:
    """Distances d(g_n V, V_0) per test subspace, with V_0 = U_k(g_N) and
    W_0 = U_{d-k}(g_N^-1) taken from the last element of the sequence."""

    k: int
    attracting: Subspace
    repelling: Subspace
    records: list[ConvergenceRecord]

    @property
    def verdict(self) -> str:
        return "pass" if all(record.converged for record in self.records) else "fail"


def check_dynamics_preserving(
    products: Sequence[ScaledMatrix],
    subspaces: Sequence[Subspace],
    k: int,
    margin: float = DEFAULT_MARGIN,
) -> DynamicsReport:
    """Core of :func:`test_dynamics_preserving` on precomputed products.

    Raises:
        NotTransverse: If a test subspace has margin at most ``margin`` to W_0.
        NoGap: If the last product has no gap at k or d - k.
    """
    if not products:
        raise CertificationError("empty sequence")
    last = products[-1]
    d = last.dimension
    attracting = uk_subspace(last, k)
    repelling = uk_subspace(last.inverse(), d - k)
    records = []
    for index, subspace in enumerate(subspaces):
        if subspace.k != k:
            raise CertificationError(f"test subspace {index} has dimension {subspace.k}, not {k}")
        transverse = transversality_margin(subspace, repelling)
        if transverse <= margin:
            raise NotTransverse(transverse, index)
        distances = [angle_distance(transform_subspace(m, subspace), attracting) for m in products]
        records.append(ConvergenceRecord(transverse, distances))
    report = DynamicsReport(k, attracting, repelling, records)
    logger.info(
        "Dynamics-preserving check",
        extra={"k": k, "samples": len(records), "verdict": report.verdict},
    )
    return report


def test_dynamics_preserving(
    group: MarkedGroup,
    sequence: Sequence[Word],
    subspaces: Sequence[Subspace],
    k: int,
    margin: float = DEFAULT_MARGIN,
) -> DynamicsReport:
    """Evaluate ``sequence`` in ``group`` and check that it contracts every
    test subspace onto the attracting limit."""
    letters = letter_matrices(group)
    return check_dynamics_preserving(
        [evaluate(group, word, letters) for word in sequence], subspaces, k, margin
    )


def draw_test_subspaces(
    repelling: Subspace, k: int, count: int, margin: float, seed: int
) -> tuple[list[Subspace], int]:
    """Random k-planes with transversality margin above ``margin`` to ``repelling``.

    Returns the accepted planes and the number of rejected draws; gives up
    after ten times ``count`` draws.
    """
    rng = np.random.default_rng(seed)
    accepted: list[Subspace] = []
    rejected = 0
    for _ in range(10 * count):
        if len(accepted) == count:
            break
        candidate = Subspace.span(rng.standard_normal((repelling.d, k)))
        if transversality_margin(candidate, repelling) > margin:
            accepted.append(candidate)
        else:
            rejected += 1
    return accepted, rejected


# not a pytest test function
test_dynamics_preserving.__test__ = False  # type: ignore[attr-defined]
