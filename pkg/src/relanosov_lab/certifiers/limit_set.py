# SPDX-License-Identifier: CC-BY-SA-4.0

"""Limit-set sampling, fibers over boundary labels and the transversality audit."""

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from relanosov_lab.certifiers.divergence import CertificationError, check_k
from relanosov_lab.config import SamplerSpec
from relanosov_lab.dynamics import (
    NoGap,
    ScaledMatrix,
    evaluate,
    letter_matrices,
    power,
    singular_data,
)
from relanosov_lab.dynamics.singular import GAP_TOLERANCE
from relanosov_lab.flags import (
    Flag,
    FlagClusters,
    Subspace,
    cluster_flags,
    flag_distance,
    flags_transverse,
)
from relanosov_lab.groups import MarkedGroup, UnsupportedPresentation, Word, iter_spheres
from relanosov_lab.groups.words import allowed_letters

logger = logging.getLogger(__name__)

CONICAL = "conical"
PARABOLIC = "parabolic"


class InsufficientLabels(CertificationError):
    """Raised when a transversality audit sees fewer than two boundary labels."""


@dataclass
class LimitSample:
    flag: Flag
    label: str
    source: str


@dataclass
class LimitSetSample:
    samples: list[LimitSample]
    skip_counts: dict[str, int] = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return sorted({sample.label for sample in self.samples})


def limit_flag(m: ScaledMatrix, k: int, tolerance: float = GAP_TOLERANCE) -> Flag:
    """The flag (U_k(m), U_{d-k}(m)).

    Raises:
        NoGap: If m has no gap at k or at d - k.
    """
    data = singular_data(m)
    d = data.dimension
    for index in {k, d - k}:
        gap = data.gap(index)
        if gap <= tolerance:
            raise NoGap(index, gap)
    return Flag(Subspace(data.left_frame[:, :k]), Subspace(data.left_frame[:, : d - k]))


def _contains_run(letters: tuple[int, ...], runs: Sequence[tuple[int, ...]]) -> bool:
    for run in runs:
        size = len(run)
        if any(letters[i : i + size] == run for i in range(len(letters) - size + 1)):
            return True
    return False


def _forbidden_runs(group: MarkedGroup, max_run: int) -> list[tuple[int, ...]]:
    runs = []
    for peripheral in group.peripherals:
        power_word = group.reduce(peripheral.generator_word ** (max_run + 1))
        runs.append(power_word.letters)
        runs.append(power_word.inverse().letters)
    return runs


def _cylinder_prefixes(group: MarkedGroup, count: int) -> list[Word]:
    for shell in iter_spheres(group.rank, group.orders):
        if shell[0].letters and len(shell) >= count:
            return shell[:count]
    raise AssertionError("unreachable")  # pragma: no cover


def _random_ray(
    group: MarkedGroup,
    prefix: Word,
    length: int,
    rng: np.random.Generator,
    runs: Sequence[tuple[int, ...]],
    max_attempts: int,
) -> tuple[Word | None, int]:
    """A random reduced extension of ``prefix`` free of long peripheral runs."""
    rejected = 0
    for _ in range(max_attempts):
        letters = list(prefix.letters)
        while len(letters) < length:
            options = allowed_letters(Word(tuple(letters)), group.rank, group.orders)
            letters.append(options[int(rng.integers(len(options)))])
        if not _contains_run(tuple(letters), runs):
            return Word(tuple(letters)), rejected
        rejected += 1
    return None, rejected


def sample_limit_set(
    group: MarkedGroup,
    k: int,
    sampler: SamplerSpec,
    seed: int,
    tolerance: float = GAP_TOLERANCE,
) -> LimitSetSample:
    """Sample limit flags along conical rays and peripheral powers.

    Conical directions start with distinct cylinder prefixes and contribute
    flags at 1/2, 3/4 and all of ``geodesic_length``. Every peripheral c
    contributes c^n and c^-n for each configured n, optionally conjugated by
    the configured words. Elements without a gap are skipped and counted.
    """
    if not group.has_normal_forms:
        raise UnsupportedPresentation("boundary labels need free or free-product normal forms")
    check_k(group, k)
    rng = np.random.default_rng(seed)
    letters = letter_matrices(group)
    skips: Counter[str] = Counter(no_gap=0, peripheral_run=0, no_ray=0)
    samples: list[LimitSample] = []

    def add(m: ScaledMatrix, label: str, source: str) -> None:
        try:
            samples.append(LimitSample(limit_flag(m, k, tolerance), label, source))
        except NoGap:
            skips["no_gap"] += 1
            logger.debug("Skipped element without gap", extra={"source": source})

    directions = sampler.directions or 2 * group.rank
    length = sampler.geodesic_length
    runs = _forbidden_runs(group, sampler.max_peripheral_run)
    for prefix in _cylinder_prefixes(group, directions):
        ray, rejected = _random_ray(group, prefix, length, rng, runs, sampler.max_attempts)
        skips["peripheral_run"] += rejected
        if ray is None:
            skips["no_ray"] += 1
            continue
        for cut in sorted({length // 2, (3 * length) // 4, length}):
            head = Word(ray.letters[:cut])
            add(evaluate(group, head, letters), f"{CONICAL}:{prefix}", str(head))

    conjugators = [Word()] + [Word.parse(text) for text in sampler.conjugators]
    for peripheral in group.peripherals:
        c = peripheral.generator_word
        base = {1: evaluate(group, c, letters), -1: evaluate(group, c.inverse(), letters)}
        for conjugator in conjugators:
            gamma = group.reduce(conjugator)
            label = f"{PARABOLIC}:{peripheral.label}"
            if not gamma.is_identity:
                label = f"{label}@{gamma}"
            left = evaluate(group, gamma, letters)
            right = evaluate(group, gamma.inverse(), letters)
            for n in sampler.peripheral_powers:
                for sign in (1, -1):
                    m = left @ power(base[sign], n) @ right
                    add(m, label, f"{gamma}*({c})^{sign * n}*{gamma.inverse()}")

    logger.info(
        "Sampled limit set",
        extra={"samples": len(samples), "skips": dict(skips), "seed": seed},
    )
    return LimitSetSample(samples, dict(skips))


@dataclass
class FiberReport:
    """Flags sampled over one boundary label, clustered.

    ``cross_margin`` is the largest transversality margin between flags of
    different clusters, None for a single cluster.
    """

    label: str
    flags: list[Flag]
    clusters: FlagClusters
    max_intra: float
    min_inter: float | None
    cross_margin: float | None

    @property
    def cardinality(self) -> int:
        return self.clusters.count

    @property
    def low_confidence(self) -> bool:
        return len(self.flags) < 2

    @property
    def parabolic(self) -> bool:
        return self.label.startswith(f"{PARABOLIC}:")

    def to_record(self) -> dict[str, object]:
        return {
            "label": self.label,
            "samples": len(self.flags),
            "cardinality": self.cardinality,
            "max_intra": self.max_intra,
            "min_inter": self.min_inter,
            "cross_margin": self.cross_margin,
            "low_confidence": self.low_confidence,
        }


def analyze_fibers(samples: Sequence[LimitSample], radius: float = 0.05) -> list[FiberReport]:
    """Cluster the flags of every label; one report per label, sorted by label."""
    by_label: dict[str, list[Flag]] = {}
    for sample in samples:
        by_label.setdefault(sample.label, []).append(sample.flag)
    reports = []
    for label in sorted(by_label):
        flags = by_label[label]
        clusters = cluster_flags(flags, radius)
        max_intra = 0.0
        min_inter: float | None = None
        cross_margin: float | None = None
        for i, j in combinations(range(len(flags)), 2):
            distance = flag_distance(flags[i], flags[j])
            if clusters.labels[i] == clusters.labels[j]:
                max_intra = max(max_intra, distance)
                continue
            min_inter = distance if min_inter is None else min(min_inter, distance)
            _, margin = flags_transverse(flags[i], flags[j])
            cross_margin = margin if cross_margin is None else max(cross_margin, margin)
        reports.append(FiberReport(label, flags, clusters, max_intra, min_inter, cross_margin))
        logger.debug(
            "Fiber analysed",
            extra={"label": label, "samples": len(flags), "cardinality": clusters.count},
        )
    return reports


@dataclass
class TransversalityAudit:
    min_margin: float
    pair: tuple[str, str]
    tolerance: float

    @property
    def transverse(self) -> bool:
        return self.min_margin > self.tolerance


def audit_transversality(
    reports: Sequence[FiberReport], tolerance: float = 1e-6
) -> TransversalityAudit:
    """Smallest transversality margin over flag pairs with distinct labels.

    Raises:
        InsufficientLabels: If fewer than two distinct labels are present.
    """
    labels = {report.label for report in reports}
    if len(labels) < 2:
        raise InsufficientLabels(f"need two distinct labels, got {sorted(labels)}")
    best: tuple[float, tuple[str, str]] | None = None
    for first, second in combinations(reports, 2):
        if first.label == second.label:
            continue
        for x in first.flags:
            for y in second.flags:
                _, margin = flags_transverse(x, y, tolerance)
                if best is None or margin < best[0]:
                    best = (margin, (first.label, second.label))
    if best is None:
        raise InsufficientLabels("no flags to compare")
    logger.info(
        "Transversality audit",
        extra={"min_margin": best[0], "pair": best[1], "labels": len(labels)},
    )
    return TransversalityAudit(best[0], best[1], tolerance)
