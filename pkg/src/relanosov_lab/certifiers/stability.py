# SPDX-License-Identifier: CC-BY-SA-4.0

"""Type-preserving perturbations and the stability sweep."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from relanosov_lab.certifiers.diagnosis import DiagnosisTag, diagnose
from relanosov_lab.config import RunConfig
from relanosov_lab.cusp import DepthFunction
from relanosov_lab.groups import Field, MarkedGroup, Presentation, UnsupportedPresentation

logger = logging.getLogger(__name__)


def _random_direction(
    rng: np.random.Generator, d: int, complex_field: bool
) -> NDArray[np.generic]:
    direction = rng.standard_normal((d, d))
    if complex_field:
        direction = direction + 1j * rng.standard_normal((d, d))
    return direction / np.linalg.norm(direction, ord=2)


def peripheral_components(group: MarkedGroup) -> list[set[int]]:
    """Generators grouped by shared peripheral words; generators outside every
    peripheral word are left out."""
    graph = nx.Graph()
    for peripheral in group.peripherals:
        indices = sorted({abs(letter) for letter in peripheral.generator_word})
        graph.add_nodes_from(indices)
        nx.add_path(graph, indices)
    return sorted((set(c) for c in nx.connected_components(graph)), key=min)


def perturb_type_preserving(group: MarkedGroup, magnitude: float, seed: int) -> MarkedGroup:
    """Perturb the representation while keeping every peripheral conjugate.

    Generators of one peripheral component are conjugated by a common
    h = I + E with |E| <= magnitude; the other generators get an additive
    perturbation of norm at most ``magnitude`` and are renormalized to
    determinant one. When the peripherals touch every generator this is a
    global conjugation (the thrice-punctured sphere has no type-preserving
    deformations).

    Raises:
        UnsupportedPresentation: Unless the presentation is free.
    """
    if group.presentation is not Presentation.FREE:
        raise UnsupportedPresentation("type-preserving perturbation needs a free presentation")
    if magnitude < 0:
        raise ValueError("magnitude must be nonnegative")
    if magnitude == 0:
        return group
    rng = np.random.default_rng(seed)
    d = group.dimension
    complex_field = group.field is Field.COMPLEX
    images = list(group.images)
    touched: set[int] = set()
    for component in peripheral_components(group):
        size = magnitude * rng.uniform()
        h = np.eye(d) + size * _random_direction(rng, d, complex_field)
        h_inverse = np.linalg.inv(h)
        for index in sorted(component):
            images[index - 1] = h @ images[index - 1] @ h_inverse
        touched |= component
    for index in range(1, group.rank + 1):
        if index in touched:
            continue
        size = magnitude * rng.uniform()
        images[index - 1] = images[index - 1] + size * _random_direction(rng, d, complex_field)
    return group.with_images(tuple(images))


@dataclass
class StabilityRecord:
    magnitude: float
    seed: int
    tag: DiagnosisTag
    trace_drift: float


@dataclass
class StabilitySweep:
    baseline: DiagnosisTag
    records: list[StabilityRecord]

    @property
    def stable(self) -> bool:
        return all(record.tag is self.baseline for record in self.records)

    @property
    def max_trace_drift(self) -> float:
        return max((record.trace_drift for record in self.records), default=0.0)


def _peripheral_traces(group: MarkedGroup) -> NDArray[np.generic]:
    return np.array([np.trace(group.image(p.generator_word)) for p in group.peripherals])


def stability_sweep(
    group: MarkedGroup,
    k: int,
    f: DepthFunction,
    config: RunConfig,
    magnitudes: Sequence[float],
    count: int,
    seed: int,
) -> StabilitySweep:
    """Diagnose ``count`` seeded perturbations at each magnitude."""
    baseline = diagnose(group, k, f, config).tag
    traces = _peripheral_traces(group)
    seeds = np.random.SeedSequence(seed).generate_state(count * len(magnitudes))
    records = []
    for position, (magnitude, child) in enumerate(
        zip(np.repeat(magnitudes, count), seeds, strict=True)
    ):
        perturbed = perturb_type_preserving(group, float(magnitude), int(child))
        drift = float(np.max(np.abs(_peripheral_traces(perturbed) - traces), initial=0.0))
        tag = diagnose(perturbed, k, f, config).tag
        records.append(StabilityRecord(float(magnitude), int(child), tag, drift))
        logger.debug(
            "Perturbation diagnosed",
            extra={"index": position, "magnitude": float(magnitude), "tag": tag.value},
        )
    sweep = StabilitySweep(baseline, records)
    logger.info(
        "Stability sweep",
        extra={"baseline": baseline.value, "runs": len(records), "stable": sweep.stable},
    )
    return sweep
