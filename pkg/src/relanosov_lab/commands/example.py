# SPDX-License-Identifier: CC-BY-SA-4.0

"""example: list gallery items or export the configured group."""

import logging
from pathlib import Path

import aiofiles
import aiofiles.os

from relanosov_lab.commands.common import EXIT_OK, output_dir, resolve_group
from relanosov_lab.config import RunConfig
from relanosov_lab.gallery import list_items
from relanosov_lab.groups import dump_group_definition

logger = logging.getLogger(__name__)


def format_listing() -> str:
    lines = []
    for name, tag in list_items():
        lines.append(f"{name}\t{tag.value if tag else '-'}")
    return "\n".join(lines) + "\n"


async def cmd_example(config: RunConfig, out: Path | None = None) -> int:
    """Write the configured group as a group definition file."""
    resolved = resolve_group(config)
    directory = output_dir(config, out)
    name = resolved.definition.name or "group"
    path = directory / f"{name}.toml"
    await aiofiles.os.makedirs(directory, exist_ok=True)
    async with aiofiles.open(path, "w", encoding="utf-8") as fh:
        await fh.write(dump_group_definition(resolved.definition))
    logger.info("Exported group definition", extra={"path": str(path)})
    return EXIT_OK
