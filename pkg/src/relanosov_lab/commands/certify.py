# SPDX-License-Identifier: CC-BY-SA-4.0

"""certify: run one certifier and compare with the gallery expectation."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from relanosov_lab.certifiers import (
    DIVERGENT,
    NOT_DIVERGENT,
    DiagnosisTag,
    analyze_fibers,
    audit_transversality,
    certify_divergence,
    check_dynamics_preserving,
    draw_test_subspaces,
    fit_weak_domination,
    sample_limit_set,
)
from relanosov_lab.commands.common import (
    EXIT_MISMATCH,
    EXIT_OK,
    output_dir,
    resolve_group,
    run_blocking,
)
from relanosov_lab.commands.reports import build_report, write_csv, write_json
from relanosov_lab.config import Certifier, RunConfig
from relanosov_lab.dynamics import evaluate, letter_matrices, uk_subspace
from relanosov_lab.flags import flag_rows
from relanosov_lab.groups import MarkedGroup, Word

logger = logging.getLogger(__name__)

TRANSVERSE = "transverse"
NOT_TRANSVERSE = "not-transverse"


@dataclass
class CertificateOutcome:
    """What a certifier run hands to the report writer."""

    records: Any
    verdict: str
    rows: list[list[object]]
    skip_counts: dict[str, int] = field(default_factory=dict)


def expected_verdict(which: Certifier, tag: DiagnosisTag | None) -> str | None:
    """Verdict a certifier must reach for an item with expected ``tag``."""
    if tag is None:
        return None
    divergent = tag in (DiagnosisTag.ANOSOV, DiagnosisTag.NON_ANOSOV)
    if which == "divergence":
        return DIVERGENT if divergent else NOT_DIVERGENT
    if which == "transversality" and divergent:
        return TRANSVERSE
    return None


def _divergence(group: MarkedGroup, config: RunConfig) -> CertificateOutcome:
    tolerances = config.tolerances
    report = certify_divergence(
        group,
        config.k,
        config.r_max,
        threshold=tolerances.gap_threshold,
        monotone_from=tolerances.monotone_from,
        workers=config.workers or 1,
    )
    rows: list[list[object]] = [["word_length", "log_gap"]]
    rows.extend([radius, gap] for radius, gap in report.points)
    return CertificateOutcome(report.to_records(), report.verdict, rows)


def _weakdom(group: MarkedGroup, config: RunConfig) -> CertificateOutcome:
    f = config.depth.to_depth_function()
    records = []
    rows: list[list[object]] = [["peripheral", "n", "cusped_norm", "log_gap"]]
    for peripheral in group.peripherals:
        fit = fit_weak_domination(
            group,
            peripheral,
            config.k,
            f,
            config.n_max,
            slack=config.tolerances.domination_slack,
        )
        records.append(
            {
                "peripheral": peripheral.label,
                "slope": fit.slope,
                "log_C": fit.log_C,
                "r_squared": fit.r_squared,
                "violations": fit.violations,
                "sample_size": fit.sample_size,
                "linear": fit.linear,
            }
        )
        rows.extend(
            [peripheral.label, n, x, gap] for n, (x, gap) in enumerate(fit.points, start=1)
        )
    dominated = all(record["violations"] == 0 for record in records)
    verdict = "weakly-dominated-consistent" if dominated else "not-dominated"
    return CertificateOutcome(records, verdict, rows)


def _transversality(group: MarkedGroup, config: RunConfig) -> CertificateOutcome:
    tolerances = config.tolerances
    sample = sample_limit_set(group, config.k, config.sampler, config.seed, tolerances.no_gap)
    fibers = analyze_fibers(sample.samples, tolerances.cluster_radius)
    audit = audit_transversality(fibers, tolerances.transversality)
    rows: list[list[object]] = []
    for report in fibers:
        fiber_rows = flag_rows(report.flags, report.clusters, [report.label] * len(report.flags))
        rows.extend(fiber_rows if not rows else fiber_rows[1:])
    records = {
        "fibers": [report.to_record() for report in fibers],
        "min_margin": audit.min_margin,
        "pair": list(audit.pair),
    }
    verdict = TRANSVERSE if audit.transverse else NOT_TRANSVERSE
    return CertificateOutcome(records, verdict, rows, sample.skip_counts)


def _dynamics(group: MarkedGroup, config: RunConfig) -> CertificateOutcome:
    sampler, k = config.sampler, config.k
    letters = letter_matrices(group)
    base = Word.parse(sampler.sequence_word)
    products = [
        evaluate(group, group.reduce(base**n), letters)
        for n in range(1, sampler.sequence_length + 1)
    ]
    repelling = uk_subspace(products[-1].inverse(), group.dimension - k, config.tolerances.no_gap)
    subspaces, rejected = draw_test_subspaces(
        repelling, k, sampler.test_subspaces, config.tolerances.dynamics_margin, config.seed
    )
    report = check_dynamics_preserving(products, subspaces, k, config.tolerances.dynamics_margin)
    rows: list[list[object]] = [["sample", "n", "distance"]]
    for index, record in enumerate(report.records):
        rows.extend([index, n, distance] for n, distance in enumerate(record.distances, start=1))
    records = [
        {"margin": record.margin, "final_distance": record.distances[-1]}
        for record in report.records
    ]
    return CertificateOutcome(records, report.verdict, rows, {"not_transverse": rejected})


CERTIFIERS = {
    "divergence": _divergence,
    "weakdom": _weakdom,
    "transversality": _transversality,
    "dynamics": _dynamics,
}


async def cmd_certify(
    config: RunConfig, which: Certifier | None = None, out: Path | None = None
) -> int:
    """Run one certifier; exit 1 when a gallery expectation is not met."""
    which = which or config.certifier
    resolved = resolve_group(config)
    outcome = await run_blocking(CERTIFIERS[which], resolved.group, config)
    directory = output_dir(config, out)
    report = build_report(
        config, resolved.definition, outcome.records, outcome.verdict, outcome.skip_counts
    )
    await write_json(directory / f"certify_{which}.json", report)
    await write_csv(directory / f"certify_{which}.csv", outcome.rows)

    expected = expected_verdict(which, resolved.item.expected_tag if resolved.item else None)
    logger.info(
        "Certificate finished",
        extra={"certifier": which, "verdict": outcome.verdict, "expected": expected},
    )
    if expected is not None and outcome.verdict != expected:
        return EXIT_MISMATCH
    return EXIT_OK
