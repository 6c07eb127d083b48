# SPDX-License-Identifier: CC-BY-SA-4.0

"""JSON reports and CSV point clouds."""

import csv
import hashlib
import io
import json
import logging
from collections.abc import Iterable, Sequence
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

import aiofiles
import aiofiles.os

from relanosov_lab.config import RunConfig
from relanosov_lab.groups import GroupDefinition

logger = logging.getLogger(__name__)


def inputs_hash(config: RunConfig, definition: GroupDefinition) -> str:
    """sha256 of the canonical JSON of the run config and the group definition."""
    payload = json.dumps(
        {"config": config.canonical(), "group": definition.canonical()},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def build_report(
    config: RunConfig,
    definition: GroupDefinition,
    records: Any,
    verdict: str,
    skip_counts: dict[str, int] | None = None,
) -> dict[str, Any]:
    return {
        "timestamp": datetime.now(UTC).isoformat(),
        "inputs_hash": inputs_hash(config, definition),
        "config": config.canonical(),
        "records": records,
        "verdict": verdict,
        "skip_counts": dict(sorted((skip_counts or {}).items())),
        "seed": config.seed,
    }


def dumps_report(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_digest(report: dict[str, Any]) -> str:
    """sha256 of a report without its timestamp."""
    stable = {key: value for key, value in report.items() if key != "timestamp"}
    return hashlib.sha256(dumps_report(stable).encode("utf-8")).hexdigest()


async def write_json(path: Path, report: dict[str, Any]) -> Path:
    await aiofiles.os.makedirs(path.parent, exist_ok=True)
    async with aiofiles.open(path, "w", encoding="utf-8") as fh:
        await fh.write(dumps_report(report))
    logger.info("Wrote report", extra={"path": str(path)})
    return path


async def write_csv(path: Path, rows: Iterable[Sequence[object]]) -> Path:
    """Write rows (header first) as CSV."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    await aiofiles.os.makedirs(path.parent, exist_ok=True)
    async with aiofiles.open(path, "w", encoding="utf-8", newline="") as fh:
        await fh.write(buffer.getvalue())
    logger.info("Wrote point cloud", extra={"path": str(path)})
    return path
