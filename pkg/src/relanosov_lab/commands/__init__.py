# SPDX-License-Identifier: CC-BY-SA-4.0

"""Batch commands behind the command-line interface."""

from relanosov_lab.commands.build_cusp import cmd_build_cusp
from relanosov_lab.commands.certify import cmd_certify, expected_verdict
from relanosov_lab.commands.common import (
    EXIT_CONFIG,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_RUNTIME,
    ResolvedGroup,
    RunTimeout,
    resolve_group,
)
from relanosov_lab.commands.diagnose import cmd_diagnose
from relanosov_lab.commands.example import cmd_example, format_listing
from relanosov_lab.commands.reports import inputs_hash, report_digest

__all__ = [
    "EXIT_CONFIG",
    "EXIT_MISMATCH",
    "EXIT_OK",
    "EXIT_RUNTIME",
    "ResolvedGroup",
    "RunTimeout",
    "cmd_build_cusp",
    "cmd_certify",
    "cmd_diagnose",
    "cmd_example",
    "expected_verdict",
    "format_listing",
    "inputs_hash",
    "report_digest",
    "resolve_group",
]
