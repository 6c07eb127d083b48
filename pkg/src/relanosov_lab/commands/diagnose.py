# SPDX-License-Identifier: CC-BY-SA-4.0

"""diagnose: the full certification pipeline."""

import logging
from pathlib import Path

from relanosov_lab.certifiers import Diagnosis, diagnose
from relanosov_lab.commands.common import (
    EXIT_MISMATCH,
    EXIT_OK,
    output_dir,
    resolve_group,
    run_blocking,
)
from relanosov_lab.commands.reports import build_report, write_csv, write_json
from relanosov_lab.config import RunConfig
from relanosov_lab.groups import MarkedGroup

logger = logging.getLogger(__name__)


def _diagnose(group: MarkedGroup, config: RunConfig) -> Diagnosis:
    return diagnose(group, config.k, config.depth.to_depth_function(), config)


async def cmd_diagnose(config: RunConfig, out: Path | None = None) -> int:
    """Run :func:`diagnose`; exit 1 when the gallery's expected tag differs."""
    resolved = resolve_group(config)
    result = await run_blocking(_diagnose, resolved.group, config)
    directory = output_dir(config, out)
    report = build_report(
        config, resolved.definition, result.to_record(), result.tag.value, result.skip_counts
    )
    await write_json(directory / "diagnosis.json", report)
    rows: list[list[object]] = [["word_length", "log_gap"]]
    rows.extend([radius, gap] for radius, gap in result.divergence.points)
    await write_csv(directory / "diagnosis_gaps.csv", rows)

    expected = resolved.item.expected_tag if resolved.item else None
    logger.info(
        "Diagnosis finished",
        extra={"tag": result.tag.value, "expected": expected.value if expected else None},
    )
    if expected is not None and result.tag is not expected:
        return EXIT_MISMATCH
    return EXIT_OK
