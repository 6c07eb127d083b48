# SPDX-License-Identifier: CC-BY-SA-4.0

"""Pytest configuration and fixtures."""

from pathlib import Path

import numpy as np
import pytest
import tomli_w

from relanosov_lab.config import get_settings
from relanosov_lab.gallery import get_item, make_cusped_free_group, make_schottky, make_trivial
from relanosov_lab.groups import MarkedGroup, PeripheralSubgroup, Word

SEED = 20240611


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear get_settings cache before each test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def cusped():
    """The cusped free group with peripherals a, b and Ab."""
    return make_cusped_free_group()


@pytest.fixture(scope="session")
def schottky():
    """A convex cocompact Schottky pair."""
    return make_schottky()


@pytest.fixture(scope="session")
def trivial():
    """The trivial representation of F_2 in SL(2, R)."""
    return make_trivial()


@pytest.fixture(scope="session")
def direct_sum():
    """Cusped group plus Schottky group, block diagonal in dimension 4."""
    return get_item("direct-sum")


def make_parabolic_group(entry: float = 1.0) -> MarkedGroup:
    """Rank-one group generated by a unipotent matrix with peripheral a."""
    return MarkedGroup(
        images=(np.array([[1.0, entry], [0.0, 1.0]]),),
        peripherals=(PeripheralSubgroup(Word.parse("a"), "a"),),
        name="parabolic",
    )


def make_hyperbolic_group(lam: float = 2.0) -> MarkedGroup:
    """Rank-one group generated by diag(lam, 1/lam) with peripheral a."""
    return MarkedGroup(
        images=(np.diag([lam, 1.0 / lam]),),
        peripherals=(PeripheralSubgroup(Word.parse("a"), "a"),),
        name="hyperbolic",
    )


def write_run_config(directory: Path, name: str = "run.toml", **values: object) -> Path:
    """Write a run configuration TOML file and return its path."""
    data = {"seed": SEED, **values}
    path = directory / name
    path.write_text(tomli_w.dumps(data), encoding="utf-8")
    return path
