# SPDX-License-Identifier: CC-BY-SA-4.0

"""Tests for the batch commands."""

import csv
import json
import logging
import os
import time
from unittest.mock import patch

import numpy as np
import pytest

from relanosov_lab.certifiers import DIVERGENT, NOT_DIVERGENT, DiagnosisTag
from relanosov_lab.commands import (
    EXIT_MISMATCH,
    EXIT_OK,
    RunTimeout,
    cmd_build_cusp,
    cmd_certify,
    cmd_diagnose,
    cmd_example,
    expected_verdict,
    format_listing,
    report_digest,
    resolve_group,
)
from relanosov_lab.commands.common import run_blocking
from relanosov_lab.config import RunConfig
from relanosov_lab.errors import ConfigError
from relanosov_lab.groups import GroupDefinition, dump_group_definition, load_group_definition

from .conftest import SEED


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestResolveGroup:
    """Test cases for resolve_group."""

    def test_gallery_item(self):
        """Test resolving a gallery name."""
        resolved = resolve_group(RunConfig(group="cusped", seed=SEED))
        assert resolved.item is not None
        assert resolved.definition.name == "cusped"
        assert resolved.group.dimension == 2

    def test_group_file(self, tmp_path, schottky):
        """Test resolving a group definition file."""
        path = tmp_path / "schottky.toml"
        path.write_text(
            dump_group_definition(GroupDefinition.from_group(schottky.group)), encoding="utf-8"
        )
        resolved = resolve_group(RunConfig(group_file=path, seed=SEED))
        assert resolved.item is None
        assert np.allclose(resolved.group.images[0], schottky.group.images[0])

    def test_unknown_name(self):
        """Test that an unknown gallery name is a configuration error."""
        with pytest.raises(ConfigError, match="unknown gallery item"):
            resolve_group(RunConfig(group="nope", seed=SEED))

    def test_k_too_large(self):
        """Test that k must be at most d/2."""
        with pytest.raises(ConfigError, match="k=2"):
            resolve_group(RunConfig(group="cusped", seed=SEED, k=2))


class TestExpectedVerdict:
    """Test cases for expected_verdict."""

    @pytest.mark.parametrize(
        ("which", "tag", "expected"),
        [
            ("divergence", DiagnosisTag.ANOSOV, DIVERGENT),
            ("divergence", DiagnosisTag.NON_ANOSOV, DIVERGENT),
            ("divergence", DiagnosisTag.NOT_DIVERGENT, NOT_DIVERGENT),
            ("transversality", DiagnosisTag.ANOSOV, "transverse"),
            ("transversality", DiagnosisTag.NOT_DIVERGENT, None),
            ("weakdom", DiagnosisTag.ANOSOV, None),
            ("dynamics", DiagnosisTag.ANOSOV, None),
            ("divergence", None, None),
        ],
    )
    def test_mapping(self, which, tag, expected):
        """Test which certifiers carry a gallery expectation."""
        assert expected_verdict(which, tag) == expected


class TestCertify:
    """Test cases for cmd_certify."""

    async def test_divergence_outputs(self, tmp_path):
        """Test the report and point cloud of a divergence run."""
        config = RunConfig(group="cusped", seed=SEED, r_max=4)
        assert await cmd_certify(config, "divergence", tmp_path) == EXIT_OK
        report = read_json(tmp_path / "certify_divergence.json")
        assert report["verdict"] == DIVERGENT
        assert [record["count"] for record in report["records"]] == [4, 12, 36, 108]
        with (tmp_path / "certify_divergence.csv").open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["word_length", "log_gap"]
        assert len(rows) == 1 + 4 + 12 + 36 + 108

    async def test_reports_are_deterministic(self, tmp_path):
        """Test that reruns agree up to the timestamp."""
        config = RunConfig(group="schottky", seed=SEED, r_max=3)
        await cmd_certify(config, "divergence", tmp_path / "first")
        await cmd_certify(config, "divergence", tmp_path / "second")
        first = read_json(tmp_path / "first" / "certify_divergence.json")
        second = read_json(tmp_path / "second" / "certify_divergence.json")
        assert report_digest(first) == report_digest(second)

    async def test_not_divergent_matches_expectation(self, tmp_path):
        """Test that the trivial item meets its expectation."""
        config = RunConfig(group="trivial", seed=SEED, r_max=3)
        assert await cmd_certify(config, "divergence", tmp_path) == EXIT_OK
        assert read_json(tmp_path / "certify_divergence.json")["verdict"] == NOT_DIVERGENT

    async def test_mismatch(self, tmp_path):
        """Test exit code 1 when a gallery expectation fails."""
        config = RunConfig(
            group="cusped", seed=SEED, r_max=3, tolerances={"gap_threshold": 100.0}
        )
        assert await cmd_certify(config, "divergence", tmp_path) == EXIT_MISMATCH

    async def test_configured_certifier(self, tmp_path):
        """Test that the config's certifier is the default."""
        config = RunConfig(group="cusped", seed=SEED, certifier="weakdom", n_max=32)
        assert await cmd_certify(config, out=tmp_path) == EXIT_OK
        report = read_json(tmp_path / "certify_weakdom.json")
        assert [record["peripheral"] for record in report["records"]] == ["a", "b", "Ab"]
        assert all(record["sample_size"] == 32 for record in report["records"])

    async def test_transversality(self, tmp_path):
        """Test the transversality audit of the cusped item."""
        config = RunConfig(group="cusped", seed=SEED)
        assert await cmd_certify(config, "transversality", tmp_path) == EXIT_OK
        report = read_json(tmp_path / "certify_transversality.json")
        assert report["verdict"] == "transverse"
        assert report["records"]["min_margin"] > 1e-6
        assert (tmp_path / "certify_transversality.csv").exists()

    async def test_dynamics(self, tmp_path):
        """Test contraction along powers of the hyperbolic element ab."""
        config = RunConfig(
            group="cusped", seed=SEED, sampler={"sequence_word": "ab", "test_subspaces": 10}
        )
        assert await cmd_certify(config, "dynamics", tmp_path) == EXIT_OK
        report = read_json(tmp_path / "certify_dynamics.json")
        assert report["verdict"] == "pass"
        assert len(report["records"]) == 10
        assert "not_transverse" in report["skip_counts"]

    async def test_dynamics_planes(self, tmp_path):
        """Test contraction of 2-planes under powers of ab in the direct sum."""
        config = RunConfig(
            group="direct-sum",
            seed=SEED,
            k=2,
            sampler={"sequence_word": "ab", "sequence_length": 20, "test_subspaces": 5},
        )
        assert await cmd_certify(config, "dynamics", tmp_path) == EXIT_OK
        report = read_json(tmp_path / "certify_dynamics.json")
        assert len(report["records"]) == 5
        assert all(record["final_distance"] < 1e-6 for record in report["records"])
        with (tmp_path / "certify_dynamics.csv").open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["sample", "n", "distance"]
        assert len(rows) == 1 + 5 * 20


class TestRunBlocking:
    """Test cases for run_blocking."""

    async def test_result(self):
        """Test that the worker's return value comes back."""
        assert await run_blocking(sum, [1, 2, 3]) == 6

    async def test_timeout_is_logged(self, caplog):
        """Test that a timeout raises RunTimeout and warns about the live worker."""
        with patch.dict(os.environ, {"RELANOSOV_RUN_TIMEOUT": "1"}, clear=False):
            with caplog.at_level(logging.WARNING), pytest.raises(RunTimeout) as exc_info:
                await run_blocking(time.sleep, 1.5)
        assert exc_info.value.seconds == 1
        assert "worker thread still finishing" in caplog.text


class TestDiagnose:
    """Test cases for cmd_diagnose."""

    async def test_cusped(self, tmp_path):
        """Test that the cusped item gets its expected tag."""
        config = RunConfig(group="cusped", seed=SEED, r_max=4, n_max=32)
        assert await cmd_diagnose(config, tmp_path) == EXIT_OK
        report = read_json(tmp_path / "diagnosis.json")
        assert report["verdict"] == DiagnosisTag.ANOSOV.value
        assert report["records"]["tag"] == DiagnosisTag.ANOSOV.value
        assert (tmp_path / "diagnosis_gaps.csv").exists()


class TestBuildCusp:
    """Test cases for cmd_build_cusp."""

    async def test_exports(self, tmp_path):
        """Test the CSV exports and the summary."""
        config = RunConfig(
            group="cusped", seed=SEED, truncation={"radius": 2, "levels": 2}
        )
        assert await cmd_build_cusp(config, tmp_path) == EXIT_OK
        report = read_json(tmp_path / "build_cusp.json")
        assert report["verdict"] == "admissible"
        assert report["records"]["levels"] == 2
        assert report["records"]["vertices"] > 17
        with (tmp_path / "cusp_vertices.csv").open(newline="", encoding="utf-8") as fh:
            vertices = list(csv.reader(fh))
        with (tmp_path / "cusp_edges.csv").open(newline="", encoding="utf-8") as fh:
            edges = list(csv.reader(fh))
        assert vertices[0] == ["id", "word", "level"]
        assert edges[0] == ["u", "v"]
        assert len(vertices) - 1 == report["records"]["vertices"]
        assert all(int(u) < int(v) for u, v in edges[1:])


class TestExample:
    """Test cases for cmd_example and format_listing."""

    def test_listing(self):
        """Test the gallery listing."""
        lines = format_listing().splitlines()
        assert lines[0] == f"cusped\t{DiagnosisTag.ANOSOV.value}"
        assert "induced\t-" in lines
        assert len(lines) == 5

    async def test_export_round_trip(self, tmp_path, cusped):
        """Test that an exported definition loads back to the same group."""
        config = RunConfig(group="cusped", seed=SEED)
        assert await cmd_example(config, tmp_path) == EXIT_OK
        group = load_group_definition(tmp_path / "cusped.toml").to_group()
        for a, b in zip(group.images, cusped.group.images, strict=True):
            assert np.allclose(a, b)
        assert [p.label for p in group.peripherals] == ["a", "b", "Ab"]
