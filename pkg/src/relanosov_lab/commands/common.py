# SPDX-License-Identifier: CC-BY-SA-4.0

"""Shared plumbing of the batch commands."""

import asyncio
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import TypeVar

from relanosov_lab.config import RunConfig, get_settings
from relanosov_lab.errors import ConfigError, LabError
from relanosov_lab.gallery import GalleryError, GalleryItem, get_item
from relanosov_lab.groups import GroupDefinition, MarkedGroup, load_group_definition

logger = logging.getLogger(__name__)

T = TypeVar("T")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class RunTimeout(LabError):
    """Raised when a computation exceeds the configured run timeout."""

    def __init__(self, seconds: int):
        self.seconds = seconds
        super().__init__(f"run timed out after {seconds} seconds")


@dataclass
class ResolvedGroup:
    """The group of a run with its definition and, for gallery runs, the item."""

    group: MarkedGroup
    definition: GroupDefinition
    item: GalleryItem | None = None


def resolve_group(config: RunConfig) -> ResolvedGroup:
    """Load the configured group and check k against its dimension.

    Raises:
        ConfigError: For an unknown gallery name or an invalid k.
        FileNotFoundError: If the group file does not exist.
    """
    if config.group is not None:
        try:
            item = get_item(config.group)
        except GalleryError as e:
            raise ConfigError(str(e)) from e
        resolved = ResolvedGroup(
            item.group, GroupDefinition.from_group(item.group, item.coset_table), item
        )
    elif config.group_file is not None:
        definition = load_group_definition(config.group_file)
        resolved = ResolvedGroup(definition.to_group(), definition)
    else:
        raise ConfigError("no group source configured")
    d = resolved.group.dimension
    if not 1 <= config.k <= d // 2:
        raise ConfigError(f"k={config.k} must satisfy 1 <= k <= d/2 = {d // 2}")
    return resolved


def output_dir(config: RunConfig, override: Path | None = None) -> Path:
    """CLI flag, then config file, then settings."""
    if override is not None:
        return override
    if config.output_dir is not None:
        return config.output_dir
    return Path(get_settings().output_dir)


async def run_blocking(func: Callable[..., T], *args: object) -> T:
    """Run a computation in a worker thread under the settings' run timeout."""
    timeout = get_settings().run_timeout
    try:
        async with asyncio.timeout(timeout):
            return await asyncio.to_thread(func, *args)
    except TimeoutError as e:
        # the worker thread is not interruptible and runs until the computation returns
        logger.warning(
            "Run timed out, worker thread still finishing",
            extra={"timeout": timeout, "function": getattr(func, "__name__", repr(func))},
        )
        raise RunTimeout(timeout) from e
