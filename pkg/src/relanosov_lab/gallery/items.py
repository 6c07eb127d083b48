# SPDX-License-Identifier: CC-BY-SA-4.0

"""Gallery of worked representations with their expected diagnoses."""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from scipy import linalg
from scipy.spatial.distance import pdist

from relanosov_lab.certifiers import DiagnosisTag
from relanosov_lab.dynamics import sphere_products
from relanosov_lab.errors import LabError
from relanosov_lab.groups import (
    CosetTable,
    MarkedGroup,
    PeripheralSubgroup,
    Presentation,
    Word,
    reduce_word,
)

logger = logging.getLogger(__name__)

FREENESS_RADIUS = 6
FREENESS_TOLERANCE = 1e-6
PARABOLIC_TOLERANCE = 1e-6
SCHOTTKY_MIN_LAM = 3.0


class GalleryError(LabError):
    """Base class for gallery errors."""


class FreenessCheckFailed(GalleryError):
    """Raised when two short reduced words have (almost) the same image."""

    def __init__(self, min_distance: float):
        self.min_distance = min_distance
        super().__init__(f"two reduced words collide (min distance {min_distance:.3g})")


class RankMismatch(GalleryError):
    """Raised when direct-sum factors are not representations of one group."""


class NotBlockStructured(GalleryError):
    """Raised when an image is not block diagonal for the item's blocks."""


@dataclass(frozen=True, eq=False)
class GalleryItem:
    """A named representation, its expected tag (None when not claimed) and
    the block sizes of its images."""

    name: str
    group: MarkedGroup
    expected_tag: DiagnosisTag | None
    provenance: str
    k: int = 1
    blocks: tuple[int, ...] = ()
    coset_table: CosetTable | None = None

    def __post_init__(self) -> None:
        if not self.blocks:
            object.__setattr__(self, "blocks", (self.group.dimension,))
        if sum(self.blocks) != self.group.dimension:
            raise GalleryError(f"blocks {self.blocks} do not fill dimension {self.group.dimension}")


def _peripherals(*pairs: tuple[str, str]) -> tuple[PeripheralSubgroup, ...]:
    return tuple(PeripheralSubgroup(Word.parse(word), label) for label, word in pairs)


def make_cusped_free_group() -> GalleryItem:
    """Free group on a = [[1,2],[0,1]], b = [[1,0],[2,1]] with peripherals a, b, Ab."""
    group = MarkedGroup(
        images=(np.array([[1.0, 2.0], [0.0, 1.0]]), np.array([[1.0, 0.0], [2.0, 1.0]])),
        peripherals=_peripherals(("a", "a"), ("b", "b"), ("Ab", "Ab")),
        name="cusped",
    )
    return GalleryItem(
        name="cusped",
        group=group,
        expected_tag=DiagnosisTag.ANOSOV,
        provenance=(
            "Level-2 congruence pair generating a free, geometrically finite Fuchsian group "
            "(thrice-punctured sphere). The peripherals a, b and a^-1 b are exactly the "
            "generators with trace +-2; ab has trace 6 and is hyperbolic."
        ),
    )


def _rotation(theta: float) -> NDArray[np.float64]:
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def check_freeness(group: MarkedGroup, radius: int = FREENESS_RADIUS) -> float:
    """Smallest distance between images of distinct reduced words of length <= radius.

    Raises:
        FreenessCheckFailed: If it is below ``FREENESS_TOLERANCE``.
    """
    images = [
        m.matrix().ravel() for shell in sphere_products(group, radius) for _, m in shell
    ]
    points = np.array(images)
    if np.iscomplexobj(points):
        points = np.concatenate([points.real, points.imag], axis=1)
    min_distance = float(pdist(points).min())
    logger.debug(
        "Freeness check", extra={"words": len(images), "min_distance": min_distance}
    )
    if min_distance < FREENESS_TOLERANCE:
        raise FreenessCheckFailed(min_distance)
    return min_distance


def make_schottky(lam: float = 4.0, theta: float = math.pi / 4) -> GalleryItem:
    """Schottky pair g1 = diag(lam, 1/lam), g2 = R(theta) g1 R(theta)^-1.

    Degenerate images are reported by the freeness check before the
    ping-pong bound on lam is enforced.

    Raises:
        GalleryError: If lam is not positive.
        FreenessCheckFailed: If short words collide (lam = 1 for instance).
        ValueError: If lam is below ``SCHOTTKY_MIN_LAM``.
    """
    if lam <= 0:
        raise GalleryError("lam must be positive")
    g1 = np.diag([lam, 1.0 / lam])
    rotation = _rotation(theta)
    g2 = rotation @ g1 @ rotation.T
    group = MarkedGroup(images=(g1, g2), name="schottky")
    min_distance = check_freeness(group)
    if lam < SCHOTTKY_MIN_LAM:
        raise ValueError(f"lam={lam} is below {SCHOTTKY_MIN_LAM}, the ping-pong bound")
    return GalleryItem(
        name="schottky",
        group=group,
        expected_tag=DiagnosisTag.ANOSOV,
        provenance=(
            f"Convex cocompact Schottky group (lam={lam}, theta={theta:.4f}); "
            f"short words pairwise apart by at least {min_distance:.3g}."
        ),
    )


def make_trivial(rank: int = 2, dimension: int = 2) -> GalleryItem:
    """Every generator maps to the identity."""
    group = MarkedGroup(images=tuple(np.eye(dimension) for _ in range(rank)), name="trivial")
    return GalleryItem(
        name="trivial",
        group=group,
        expected_tag=DiagnosisTag.NOT_DIVERGENT,
        provenance="Trivial representation; every singular value gap vanishes.",
    )


def make_direct_sum(
    x: GalleryItem,
    y: GalleryItem,
    k: int | None = None,
    expected_tag: DiagnosisTag | None = None,
) -> GalleryItem:
    """Block-diagonal sum of two representations of the same free group.

    Peripherals are the union of both factors' peripherals (by label).

    Raises:
        RankMismatch: If the ranks, fields or presentations differ.
    """
    first, second = x.group, y.group
    if first.rank != second.rank:
        raise RankMismatch(f"ranks {first.rank} and {second.rank} differ")
    if first.field is not second.field or first.presentation is not second.presentation:
        raise RankMismatch("factors over different fields or presentations")
    images = tuple(
        linalg.block_diag(a, b) for a, b in zip(first.images, second.images, strict=True)
    )
    peripherals = {p.label: p for p in first.peripherals}
    for peripheral in second.peripherals:
        peripherals.setdefault(peripheral.label, peripheral)
    name = f"{x.name}+{y.name}"
    group = MarkedGroup(
        images=images,
        field=first.field,
        presentation=first.presentation,
        peripherals=tuple(peripherals.values()),
        orders=first.orders,
        name=name,
    )
    return GalleryItem(
        name=name,
        group=group,
        expected_tag=expected_tag,
        provenance=f"Direct sum of {x.name} and {y.name}.",
        k=k if k is not None else min(first.dimension, second.dimension),
        blocks=x.blocks + y.blocks,
    )


def _cusped_plus_schottky() -> GalleryItem:
    item = make_direct_sum(
        make_cusped_free_group(),
        make_schottky(),
        k=2,
        expected_tag=DiagnosisTag.NON_ANOSOV,
    )
    return GalleryItem(
        name="direct-sum",
        group=replace(item.group, name="direct-sum"),
        expected_tag=item.expected_tag,
        provenance=(
            "Cusped Fuchsian group plus a Schottky (funnelled) representation of the same "
            "free group. Along each peripheral the hyperbolic factor separates the limits "
            "of c^n and c^-n, so parabolic fibers have two points."
        ),
        k=2,
        blocks=item.blocks,
    )


def make_induced(
    sub_rep: MarkedGroup,
    table: CosetTable,
    peripherals: Sequence[PeripheralSubgroup] = (),
    name: str = "induced",
) -> GalleryItem:
    """Induce ``sub_rep`` from a finite-index subgroup to the free group.

    ``sub_rep`` is given on the Schreier generators of ``table`` (in the order
    of :meth:`CosetTable.schreier_generators`). Generator eta moving coset i to
    coset j maps to the block-permutation matrix with block (j, i) equal to
    sub_rep(alpha_j^-1 eta alpha_i).

    Raises:
        InconsistentTable: If the table's rank disagrees with the generators.
    """
    generators = table.schreier_generators()
    if sub_rep.rank != len(generators):
        raise GalleryError(
            f"sub-representation has {sub_rep.rank} generators, "
            f"the subgroup has {len(generators)}"
        )
    n, d0 = table.index, sub_rep.dimension
    dtype = sub_rep.images[0].dtype
    images = []
    for letter in range(1, table.rank + 1):
        image = np.zeros((n * d0, n * d0), dtype=dtype)
        for i in range(n):
            j = table.act_letter(letter, i)
            inner = reduce_word(
                table.representatives[j].inverse() * Word((letter,)) * table.representatives[i]
            )
            block = sub_rep.image(table.rewrite(inner))
            image[j * d0 : (j + 1) * d0, i * d0 : (i + 1) * d0] = block
        images.append(image)
    group = MarkedGroup(
        images=tuple(images),
        field=sub_rep.field,
        presentation=Presentation.FREE,
        peripherals=tuple(peripherals),
        name=name,
    )
    return GalleryItem(
        name=name,
        group=group,
        expected_tag=None,
        provenance=f"Induced from an index-{n} subgroup.",
        blocks=(d0,) * n,
        coset_table=table,
    )


def _index_two_induced() -> GalleryItem:
    table = CosetTable.index_two(2, swapping=(1, 2))
    # Schreier generators Ab, aa, ba; the peripheral Ab fixes both cosets and
    # its diagonal blocks are rho1(Ab) and rho1((aa)^-1 ba)
    parabolic = np.array([[1.0, 2.0], [0.0, 1.0]])
    lower = np.array([[1.0, 0.0], [2.0, 1.0]])
    sub_rep = MarkedGroup(
        images=(parabolic, lower, lower @ np.diag([3.0, 1.0 / 3.0])),
        name="index-two subgroup",
    )
    item = make_induced(sub_rep, table, _peripherals(("Ab", "Ab")))
    return GalleryItem(
        name="induced",
        group=item.group,
        expected_tag=None,
        provenance=(
            "Induction from the index-2 subgroup where a and b both swap the cosets. "
            "The peripheral Ab gets one parabolic and one hyperbolic diagonal block."
        ),
        blocks=item.blocks,
        coset_table=table,
    )


class BlockKind(Enum):
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    OTHER = "elliptic/other"


def classify_block(block: NDArray[np.generic]) -> BlockKind:
    d0 = block.shape[0]
    if d0 == 2:
        near_identity = np.allclose(block, np.eye(2), atol=PARABOLIC_TOLERANCE) or np.allclose(
            block, -np.eye(2), atol=PARABOLIC_TOLERANCE
        )
        if abs(abs(np.trace(block)) - 2) <= PARABOLIC_TOLERANCE and not near_identity:
            return BlockKind.PARABOLIC
    moduli = np.abs(np.linalg.eigvals(block))
    if moduli.min() > 0 and moduli.max() / moduli.min() > 1 + PARABOLIC_TOLERANCE:
        return BlockKind.HYPERBOLIC
    return BlockKind.OTHER


def diagonal_blocks(item: GalleryItem, matrix: NDArray[np.generic]) -> list[NDArray[np.generic]]:
    """Diagonal blocks of ``matrix`` for the item's block sizes.

    Raises:
        NotBlockStructured: If an off-diagonal block is nonzero.
    """
    edges = np.cumsum((0,) + item.blocks)
    blocks = []
    for i, (start, stop) in enumerate(zip(edges[:-1], edges[1:], strict=True)):
        for j, (left, right) in enumerate(zip(edges[:-1], edges[1:], strict=True)):
            if i != j and np.any(matrix[start:stop, left:right] != 0):
                raise NotBlockStructured(f"block ({i}, {j}) of {item.name} is nonzero")
        blocks.append(matrix[start:stop, start:stop])
    return blocks


def peripheral_structure_report(
    item: GalleryItem, words: dict[str, Word] | None = None
) -> dict[str, list[BlockKind]]:
    """Classify the diagonal blocks of each peripheral image.

    ``words`` replaces the peripheral generators, e.g. with the generators of
    an item without peripherals.
    """
    targets = words or {p.label: p.generator_word for p in item.group.peripherals}
    report = {
        label: [classify_block(block) for block in diagonal_blocks(item, item.group.image(word))]
        for label, word in targets.items()
    }
    logger.debug("Peripheral structure", extra={"item": item.name, "labels": len(report)})
    return report


GALLERY: dict[str, Callable[[], GalleryItem]] = {
    "cusped": make_cusped_free_group,
    "schottky": make_schottky,
    "trivial": make_trivial,
    "direct-sum": _cusped_plus_schottky,
    "induced": _index_two_induced,
}


def get_item(name: str) -> GalleryItem:
    """Build a registered gallery item.

    Raises:
        GalleryError: For an unknown name.
    """
    try:
        factory = GALLERY[name]
    except KeyError:
        raise GalleryError(f"unknown gallery item {name!r}; known: {sorted(GALLERY)}") from None
    return factory()


def list_items() -> list[tuple[str, DiagnosisTag | None]]:
    return [(name, factory().expected_tag) for name, factory in GALLERY.items()]
