# SPDX-License-Identifier: CC-BY-SA-4.0

"""build-cusp: truncated cusped space export."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from relanosov_lab.commands.common import EXIT_OK, output_dir, resolve_group, run_blocking
from relanosov_lab.commands.reports import build_report, write_csv, write_json
from relanosov_lab.config import RunConfig
from relanosov_lab.cusp import build_cusped_graph, check_depth_admissible, estimate_delta
from relanosov_lab.groups import MarkedGroup

logger = logging.getLogger(__name__)


@dataclass
class CuspExport:
    summary: dict[str, Any]
    vertex_rows: list[list[object]]
    edge_rows: list[list[object]]


def _build(group: MarkedGroup, config: RunConfig) -> CuspExport:
    f = config.depth.to_depth_function()
    radius = config.truncation.radius
    levels = config.truncation.levels or f.default_levels(2 * radius + 1)
    reach = levels
    if f.domain_size < 2 * levels + 1:
        reach = int(f.domain_size - 1) // 2
    admissibility = check_depth_admissible(f, reach, reach)
    if not admissibility.admissible:
        logger.warning(
            "Depth function is not admissible, building anyway",
            extra={"violation": admissibility.violation, "f": f.describe()},
        )
    cusped = build_cusped_graph(group, f, radius, levels)
    summary = {
        "vertices": cusped.graph.number_of_nodes(),
        "edges": cusped.graph.number_of_edges(),
        "horoballs": cusped.horoball_count,
        "radius": radius,
        "levels": levels,
        "depth": f.describe(),
        "admissible": admissibility.admissible,
        "violation": list(admissibility.violation) if admissibility.violation else None,
        "delta_estimate": estimate_delta(cusped.graph, seed=config.seed),
    }
    return CuspExport(summary, cusped.vertex_rows(), cusped.edge_rows())


async def cmd_build_cusp(config: RunConfig, out: Path | None = None) -> int:
    """Build the truncated cusped space and write its CSVs and a summary JSON."""
    resolved = resolve_group(config)
    directory = output_dir(config, out)
    export = await run_blocking(_build, resolved.group, config)
    await write_csv(directory / "cusp_vertices.csv", export.vertex_rows)
    await write_csv(directory / "cusp_edges.csv", export.edge_rows)
    verdict = "admissible" if export.summary["admissible"] else "not-admissible"
    report = build_report(config, resolved.definition, export.summary, verdict)
    await write_json(directory / "build_cusp.json", report)
    return EXIT_OK
