# SPDX-License-Identifier: CC-BY-SA-4.0

"""Shell-by-shell singular value gaps over the word metric."""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from relanosov_lab.dynamics import ScaledMatrix, singular_data, sphere_products
from relanosov_lab.errors import LabError
from relanosov_lab.groups import MarkedGroup, UnsupportedPresentation

logger = logging.getLogger(__name__)

DEFAULT_GAP_THRESHOLD = math.log(10)
DIVERGENT = "divergent-consistent"
NOT_DIVERGENT = "not-divergent"


class CertificationError(LabError):
    """Base class for certifier errors."""


@dataclass
class ShellRecord:
    """Log gap statistics of one sphere of the word metric."""

    radius: int
    count: int
    min_gap: float
    median_gap: float
    max_gap: float


@dataclass
class DivergenceReport:
    k: int
    records: list[ShellRecord]
    verdict: str
    threshold: float
    monotone_from: int
    skip_counts: dict[str, int] = field(default_factory=dict)
    points: list[tuple[int, float]] = field(default_factory=list, repr=False)

    @property
    def minima(self) -> list[float]:
        return [record.min_gap for record in self.records]

    def to_records(self) -> list[dict[str, object]]:
        return [asdict(record) for record in self.records]


def check_k(group: MarkedGroup, k: int) -> None:
    """Raise unless 1 <= k <= d/2."""
    if not 1 <= k <= group.dimension // 2:
        raise CertificationError(
            f"k={k} outside 1..{group.dimension // 2} for dimension {group.dimension}"
        )


def _gaps(products: Sequence[ScaledMatrix], k: int) -> list[float]:
    return [singular_data(m).gap(k) for m in products]


def _shell_gaps(
    products: list[ScaledMatrix], k: int, executor: ThreadPoolExecutor | None, workers: int
) -> list[float]:
    if executor is None or len(products) < 2:
        return _gaps(products, k)
    size = math.ceil(len(products) / workers)
    chunks = [products[i : i + size] for i in range(0, len(products), size)]
    return [gap for part in executor.map(_gaps, chunks, [k] * len(chunks)) for gap in part]


def divergence_verdict(minima: Sequence[float], threshold: float, monotone_from: int) -> str:
    """Divergent-consistent iff minima from shell ``monotone_from`` on never
    decrease and the last one reaches ``threshold``."""
    tail = list(minima[monotone_from - 1 :])
    if not tail:
        return NOT_DIVERGENT
    monotone = all(b >= a - 1e-12 for a, b in zip(tail, tail[1:], strict=False))
    return DIVERGENT if monotone and tail[-1] >= threshold else NOT_DIVERGENT


def certify_divergence(
    group: MarkedGroup,
    k: int,
    r_max: int,
    threshold: float = DEFAULT_GAP_THRESHOLD,
    monotone_from: int | None = None,
    workers: int = 1,
) -> DivergenceReport:
    """Log gap at k over every element of the spheres 1..r_max.

    Args:
        group: Marked group with exact normal forms.
        k: Gap index, 1 <= k <= d/2.
        r_max: Largest sphere radius.
        threshold: Smallest acceptable final shell minimum.
        monotone_from: First shell of the monotonicity check; defaults to
            max(1, r_max // 2).
        workers: Threads sharing each shell, split into contiguous chunks.

    Raises:
        UnsupportedPresentation: For presentations without normal forms.
        CertificationError: On an invalid k or r_max.
    """
    if not group.has_normal_forms:
        raise UnsupportedPresentation(
            f"divergence certification needs normal forms, got {group.presentation.value}"
        )
    check_k(group, k)
    if r_max < 1:
        raise CertificationError("r_max must be at least 1")
    start = monotone_from if monotone_from is not None else max(1, r_max // 2)
    if not 1 <= start <= r_max:
        raise CertificationError(f"monotone_from={start} outside 1..{r_max}")

    records = []
    points: list[tuple[int, float]] = []
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for radius, shell in enumerate(sphere_products(group, r_max)):
            if radius == 0:
                continue
            gaps = np.array(_shell_gaps([m for _, m in shell], k, executor, workers))
            record = ShellRecord(
                radius=radius,
                count=len(shell),
                min_gap=float(gaps.min()),
                median_gap=float(np.median(gaps)),
                max_gap=float(gaps.max()),
            )
            records.append(record)
            points.extend((radius, float(gap)) for gap in gaps)
            logger.debug(
                "Shell finished",
                extra={"radius": radius, "count": record.count, "min_gap": record.min_gap},
            )
    finally:
        if executor is not None:
            executor.shutdown()

    verdict = divergence_verdict([r.min_gap for r in records], threshold, start)
    logger.info(
        "Divergence certificate",
        extra={"group": group.name, "k": k, "r_max": r_max, "verdict": verdict},
    )
    return DivergenceReport(k, records, verdict, threshold, start, points=points)
