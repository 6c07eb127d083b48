# SPDX-License-Identifier: CC-BY-SA-4.0

"""Composite diagnosis: divergence, weak domination, fibers and transversality."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from relanosov_lab.certifiers.divergence import (
    DIVERGENT,
    DivergenceReport,
    certify_divergence,
)
from relanosov_lab.certifiers.domination import DominationFit, fit_weak_domination
from relanosov_lab.certifiers.limit_set import (
    FiberReport,
    InsufficientLabels,
    analyze_fibers,
    audit_transversality,
    sample_limit_set,
)
from relanosov_lab.config import RunConfig
from relanosov_lab.cusp import DepthFunction
from relanosov_lab.groups import MarkedGroup

logger = logging.getLogger(__name__)


class DiagnosisTag(Enum):
    NOT_DIVERGENT = "not-divergent"
    ANOSOV = "EGF-consistent, Anosov-consistent"
    NON_ANOSOV = "EGF-consistent, non-Anosov-consistent"
    INCONCLUSIVE = "inconclusive"


def decide_tag(
    divergence_verdict: str,
    fiber_cardinalities: Mapping[str, int],
    margin: float | None,
    tolerance: float,
) -> DiagnosisTag:
    """Decision table over the component results.

    Not divergent wins outright. Otherwise the labels must be pairwise
    transverse (margin above tolerance): all parabolic fibers singletons gives
    Anosov-consistent, some fiber with two or more clusters gives
    non-Anosov-consistent. Anything else is inconclusive.
    """
    if divergence_verdict != DIVERGENT:
        return DiagnosisTag.NOT_DIVERGENT
    if margin is None or margin <= tolerance:
        return DiagnosisTag.INCONCLUSIVE
    if all(count == 1 for count in fiber_cardinalities.values()):
        return DiagnosisTag.ANOSOV
    if any(count >= 2 for count in fiber_cardinalities.values()):
        return DiagnosisTag.NON_ANOSOV
    return DiagnosisTag.INCONCLUSIVE


@dataclass
class Diagnosis:
    divergence: DivergenceReport
    tag: DiagnosisTag
    tolerance: float
    domination: dict[str, DominationFit] = field(default_factory=dict)
    fibers: list[FiberReport] = field(default_factory=list)
    margin: float | None = None
    margin_pair: tuple[str, str] | None = None
    skip_counts: dict[str, int] = field(default_factory=dict)

    @property
    def fiber_cardinalities(self) -> dict[str, int]:
        return {report.label: report.cardinality for report in self.fibers if report.parabolic}

    def to_record(self) -> dict[str, Any]:
        """JSON-compatible summary; enough to replay the tag."""
        return {
            "divergence": {
                "verdict": self.divergence.verdict,
                "shells": self.divergence.to_records(),
            },
            "domination": {
                label: {
                    "slope": fit.slope,
                    "log_C": fit.log_C,
                    "r_squared": fit.r_squared,
                    "violations": fit.violations,
                    "linear": fit.linear,
                }
                for label, fit in sorted(self.domination.items())
            },
            "fibers": [report.to_record() for report in self.fibers],
            "fiber_cardinalities": self.fiber_cardinalities,
            "transversality": {
                "min_margin": self.margin,
                "pair": list(self.margin_pair) if self.margin_pair else None,
                "tolerance": self.tolerance,
            },
            "tag": self.tag.value,
        }


def replay_diagnosis(record: Mapping[str, Any]) -> DiagnosisTag:
    """Recompute the tag from a stored :meth:`Diagnosis.to_record` payload."""
    transversality = record["transversality"]
    return decide_tag(
        record["divergence"]["verdict"],
        record["fiber_cardinalities"],
        transversality["min_margin"],
        transversality["tolerance"],
    )


def diagnose(group: MarkedGroup, k: int, f: DepthFunction, config: RunConfig) -> Diagnosis:
    """Run the certifiers in order and combine them with :func:`decide_tag`."""
    tolerances = config.tolerances
    divergence = certify_divergence(
        group,
        k,
        config.r_max,
        threshold=tolerances.gap_threshold,
        monotone_from=tolerances.monotone_from,
        workers=config.workers or 1,
    )
    if divergence.verdict != DIVERGENT:
        tag = decide_tag(divergence.verdict, {}, None, tolerances.transversality)
        logger.info("Diagnosis", extra={"group": group.name, "k": k, "tag": tag.value})
        return Diagnosis(divergence, tag, tolerances.transversality)

    domination = {
        peripheral.label: fit_weak_domination(
            group, peripheral, k, f, config.n_max, slack=tolerances.domination_slack
        )
        for peripheral in group.peripherals
    }
    sample = sample_limit_set(group, k, config.sampler, config.seed, tolerances.no_gap)
    fibers = analyze_fibers(sample.samples, tolerances.cluster_radius)
    margin: float | None = None
    pair: tuple[str, str] | None = None
    try:
        audit = audit_transversality(fibers, tolerances.transversality)
        margin, pair = audit.min_margin, audit.pair
    except InsufficientLabels:
        logger.warning("Too few boundary labels for a transversality audit")
    cardinalities = {report.label: report.cardinality for report in fibers if report.parabolic}
    tag = decide_tag(divergence.verdict, cardinalities, margin, tolerances.transversality)
    logger.info(
        "Diagnosis",
        extra={"group": group.name, "k": k, "tag": tag.value, "margin": margin},
    )
    return Diagnosis(
        divergence=divergence,
        tag=tag,
        tolerance=tolerances.transversality,
        domination=domination,
        fibers=fibers,
        margin=margin,
        margin_pair=pair,
        skip_counts=sample.skip_counts,
    )
