# SPDX-License-Identifier: CC-BY-SA-4.0

"""Main entry point for the relanosov-lab command line."""

import argparse
import asyncio
import logging
import sys
import tomllib
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from relanosov_lab import __version__
from relanosov_lab.commands import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_RUNTIME,
    cmd_build_cusp,
    cmd_certify,
    cmd_diagnose,
    cmd_example,
    format_listing,
)
from relanosov_lab.config import get_settings, load_run_config
from relanosov_lab.errors import ConfigError

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO") -> None:
    """Configure logging for the application."""
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stdout)],
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relanosov-lab",
        description="Numerical certificates for representations of relatively hyperbolic groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_run_options(sub: argparse.ArgumentParser, config_required: bool = True) -> None:
        sub.add_argument("--config", type=Path, required=config_required, help="run TOML file")
        sub.add_argument("--out", type=Path, help="output directory")
        sub.add_argument("--seed", type=int, help="override the configured seed")
        sub.add_argument("--workers", type=int, help="threads per certifier")

    add_run_options(commands.add_parser("build-cusp", help="export a truncated cusped space"))
    certify = commands.add_parser("certify", help="run a single certifier")
    add_run_options(certify)
    certify.add_argument(
        "which",
        nargs="?",
        choices=["divergence", "weakdom", "transversality", "dynamics"],
        help="certifier (defaults to the config's)",
    )
    add_run_options(commands.add_parser("diagnose", help="run the full diagnosis"))
    example = commands.add_parser("example", help="list or export gallery groups")
    add_run_options(example, config_required=False)
    example.add_argument("--list", action="store_true", help="print gallery names and tags")
    return parser


async def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
    except ValidationError as e:
        setup_logging()
        logger.error("Failed to load settings: %s", e)
        return EXIT_CONFIG
    setup_logging(settings.log_level)

    if args.command == "example" and args.list:
        sys.stdout.write(format_listing())
        return EXIT_OK
    if args.config is None:
        logger.error("--config is required unless --list is given")
        return EXIT_CONFIG

    try:
        config = load_run_config(args.config, {"seed": args.seed, "workers": args.workers})
    except (FileNotFoundError, tomllib.TOMLDecodeError, ValidationError, ConfigError) as e:
        logger.error("Invalid configuration %s: %s", args.config, e)
        return EXIT_CONFIG
    if config.workers is None:
        config = config.model_copy(update={"workers": settings.workers})

    logger.info(
        "Starting run",
        extra={"command": args.command, "config": str(args.config), "seed": config.seed},
    )
    try:
        if args.command == "build-cusp":
            return await cmd_build_cusp(config, args.out)
        if args.command == "certify":
            return await cmd_certify(config, args.which, args.out)
        if args.command == "diagnose":
            return await cmd_diagnose(config, args.out)
        return await cmd_example(config, args.out)
    except (ConfigError, FileNotFoundError, tomllib.TOMLDecodeError, ValidationError) as e:
        logger.error("Invalid configuration: %s", e)
        return EXIT_CONFIG
    except Exception:
        logger.exception("Run failed")
        return EXIT_RUNTIME


def run() -> None:
    """Entry point for the command line."""
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    run()
