# SPDX-License-Identifier: CC-BY-SA-4.0

"""Tests for main module."""

import importlib
import json
import os
from unittest.mock import patch

import pytest

from relanosov_lab.groups import GroupDefinition, dump_group_definition, load_group_definition
from relanosov_lab.main import build_parser, main, run

from .conftest import write_run_config


class TestMain:
    """Test cases for main function."""

    async def test_example_list(self, capsys):
        """Test that --list prints the gallery without a config."""
        assert await main(["example", "--list"]) == 0
        out = capsys.readouterr().out
        assert "direct-sum\tEGF-consistent, non-Anosov-consistent" in out

    async def test_example_needs_config(self):
        """Test exit code 2 for example without --list or --config."""
        assert await main(["example"]) == 2

    async def test_missing_config_flag(self):
        """Test that argparse rejects a run command without --config."""
        with pytest.raises(SystemExit) as exc_info:
            await main(["diagnose"])
        assert exc_info.value.code == 2

    async def test_invalid_settings(self, tmp_path):
        """Test exit code 2 when settings fail validation."""
        path = write_run_config(tmp_path, group="cusped")
        with patch.dict(os.environ, {"RELANOSOV_WORKERS": "0"}, clear=False):
            assert await main(["certify", "--config", str(path)]) == 2

    async def test_missing_config_file(self, tmp_path):
        """Test exit code 2 for a config file that does not exist."""
        assert await main(["diagnose", "--config", str(tmp_path / "missing.toml")]) == 2

    async def test_invalid_config(self, tmp_path):
        """Test exit code 2 for a config naming two group sources."""
        path = write_run_config(tmp_path, group="cusped", group_file="cusped.toml")
        assert await main(["diagnose", "--config", str(path)]) == 2

    async def test_unknown_group(self, tmp_path):
        """Test exit code 2 for an unknown gallery name."""
        path = write_run_config(tmp_path, group="nope")
        assert await main(["certify", "--config", str(path), "--out", str(tmp_path)]) == 2

    async def test_certify_ok(self, tmp_path):
        """Test exit code 0 and the seed override."""
        path = write_run_config(tmp_path, group="cusped", r_max=3)
        out = tmp_path / "out"
        code = await main(
            ["certify", "divergence", "--config", str(path), "--out", str(out), "--seed", "5"]
        )
        assert code == 0
        report = json.loads((out / "certify_divergence.json").read_text(encoding="utf-8"))
        assert report["seed"] == 5

    async def test_certify_mismatch(self, tmp_path):
        """Test exit code 1 when the gallery expectation fails."""
        path = write_run_config(
            tmp_path, group="cusped", r_max=3, tolerances={"gap_threshold": 100.0}
        )
        assert await main(["certify", "--config", str(path), "--out", str(tmp_path)]) == 1

    async def test_runtime_error(self, tmp_path):
        """Test exit code 3 when a certifier cannot run on the group."""
        definition = GroupDefinition(
            name="relators",
            presentation="other",
            generators=[[[2.0, 0.0], [0.0, 0.5]], [[1.0, 1.0], [0.0, 1.0]]],
        )
        (tmp_path / "relators.toml").write_text(
            dump_group_definition(definition), encoding="utf-8"
        )
        path = write_run_config(tmp_path, group_file="relators.toml")
        assert await main(["certify", "--config", str(path), "--out", str(tmp_path)]) == 3

    async def test_example_export(self, tmp_path):
        """Test exporting a gallery group through the command line."""
        path = write_run_config(tmp_path, group="schottky")
        assert await main(["example", "--config", str(path), "--out", str(tmp_path)]) == 0
        assert load_group_definition(tmp_path / "schottky.toml").name == "schottky"


class TestImports:
    """Test that every module imports cleanly."""

    @pytest.mark.parametrize(
        "module",
        [
            "relanosov_lab.certifiers.diagnosis",
            "relanosov_lab.certifiers.divergence",
            "relanosov_lab.certifiers.domination",
            "relanosov_lab.certifiers.dynamics",
            "relanosov_lab.certifiers.limit_set",
            "relanosov_lab.certifiers.stability",
            "relanosov_lab.commands.build_cusp",
            "relanosov_lab.commands.certify",
            "relanosov_lab.commands.common",
            "relanosov_lab.commands.diagnose",
            "relanosov_lab.commands.example",
            "relanosov_lab.commands.reports",
            "relanosov_lab.config",
            "relanosov_lab.cusp.cusped",
            "relanosov_lab.cusp.depth",
            "relanosov_lab.cusp.horoball",
            "relanosov_lab.cusp.hyperbolicity",
            "relanosov_lab.dynamics.metrics",
            "relanosov_lab.dynamics.scaled",
            "relanosov_lab.dynamics.singular",
            "relanosov_lab.errors",
            "relanosov_lab.flags.flags",
            "relanosov_lab.flags.subspaces",
            "relanosov_lab.gallery.items",
            "relanosov_lab.groups.cosets",
            "relanosov_lab.groups.definition",
            "relanosov_lab.groups.marked",
            "relanosov_lab.groups.words",
            "relanosov_lab.main",
        ],
    )
    def test_module_imports(self, module):
        """Test that importing the module defines no broken class or dataclass."""
        assert importlib.import_module(module).__name__ == module

    def test_entry_points(self):
        """Test that the console entry point and its parser are wired up."""
        assert callable(run)
        assert callable(main)
        args = build_parser().parse_args(["example", "--list"])
        assert args.command == "example"
        assert args.list
