# SPDX-License-Identifier: CC-BY-SA-4.0

"""Marked groups: generators with matrix images and a peripheral structure."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from relanosov_lab.errors import LabError
from relanosov_lab.groups.words import Word, alphabet, is_reduced, iter_spheres, reduce_word

logger = logging.getLogger(__name__)

DET_TOLERANCE = 1e-9
IMAGE_HASH_TOLERANCE = 1e-8


class GroupError(LabError):
    """Base class for group-core errors."""


class UnsupportedPresentation(GroupError):
    """Raised when an operation needs exact normal forms the presentation lacks."""


class EmptyPeripheral(GroupError):
    """Raised when a peripheral subgroup is generated by the empty word."""


class Field(Enum):
    """Scalar field of the representation."""

    REAL = "real"
    COMPLEX = "complex"


class Presentation(Enum):
    """Presentation kinds; only the first two have exact normal forms."""

    FREE = "free"
    FREE_PRODUCT = "free-product"
    OTHER = "other"


@dataclass(frozen=True)
class PeripheralSubgroup:
    """Cyclic peripheral subgroup generated by a reduced word."""

    generator_word: Word
    label: str

    def __post_init__(self) -> None:
        if self.generator_word.is_identity:
            raise EmptyPeripheral(f"Peripheral {self.label!r} has an empty generator word")
        if not is_reduced(self.generator_word):
            raise GroupError(
                f"Peripheral {self.label!r} generator {self.generator_word} is not reduced"
            )


@dataclass(frozen=True, eq=False)
class MarkedGroup:
    """A group given by generators, their unit-determinant images and peripherals.

    Inverses of generators are implicit: letter ``-i`` evaluates to the inverse
    of image ``i``. Images are normalized to determinant one on construction.
    """

    images: tuple[NDArray[np.generic], ...]
    field: Field = Field.REAL
    presentation: Presentation = Presentation.FREE
    peripherals: tuple[PeripheralSubgroup, ...] = ()
    orders: tuple[int | None, ...] | None = None
    name: str = ""
    _inverses: tuple[NDArray[np.generic], ...] = dataclasses.field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.images:
            raise GroupError("A marked group needs at least one generator")
        dtype = np.complex128 if self.field is Field.COMPLEX else np.float64
        normalized = tuple(_normalize_determinant(np.asarray(m, dtype=dtype)) for m in self.images)
        dimension = normalized[0].shape[0]
        for index, image in enumerate(normalized, start=1):
            if image.shape != (dimension, dimension):
                raise GroupError(f"Generator {index} image has shape {image.shape}")
            image.setflags(write=False)
        inverses = tuple(np.linalg.inv(image) for image in normalized)
        for inverse in inverses:
            inverse.setflags(write=False)
        object.__setattr__(self, "images", normalized)
        object.__setattr__(self, "_inverses", inverses)

        if self.orders is not None:
            if len(self.orders) != len(normalized):
                raise GroupError("orders must list one entry per generator")
            if any(order is not None and order < 2 for order in self.orders):
                raise GroupError("generator orders must be at least 2")
            if self.presentation is Presentation.FREE and any(o is not None for o in self.orders):
                raise GroupError("a free presentation cannot have finite-order generators")
        for peripheral in self.peripherals:
            if any(abs(letter) > self.rank for letter in peripheral.generator_word):
                raise GroupError(f"Peripheral {peripheral.label!r} uses an unknown generator")

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def dimension(self) -> int:
        return int(self.images[0].shape[0])

    @property
    def has_normal_forms(self) -> bool:
        return self.presentation in (Presentation.FREE, Presentation.FREE_PRODUCT)

    def generator_image(self, letter: int) -> NDArray[np.generic]:
        """Image of a signed letter."""
        if letter > 0:
            return self.images[letter - 1]
        return self._inverses[-letter - 1]

    def reduce(self, word: Word) -> Word:
        return reduce_word(word, self.orders)

    def image(self, word: Word) -> NDArray[np.generic]:
        """Plain matrix product of a short word; long words go through
        ``relanosov_lab.dynamics.evaluate``."""
        result = np.eye(self.dimension, dtype=self.images[0].dtype)
        for letter in word:
            result = result @ self.generator_image(letter)
        return result

    def with_images(self, images: tuple[NDArray[np.generic], ...]) -> MarkedGroup:
        return replace(self, images=images)

    def peripheral(self, label: str) -> PeripheralSubgroup:
        for peripheral in self.peripherals:
            if peripheral.label == label:
                return peripheral
        raise KeyError(label)


def _normalize_determinant(matrix: NDArray[np.generic]) -> NDArray[np.generic]:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise GroupError(f"Generator image must be square, got shape {matrix.shape}")
    dimension = matrix.shape[0]
    det = np.linalg.det(matrix)
    if abs(det) < 1e-300:
        raise GroupError("Generator image is singular")
    if np.iscomplexobj(matrix):
        root = det ** (1.0 / dimension)
    elif det > 0:
        root = det ** (1.0 / dimension)
    elif dimension % 2 == 1:
        root = -((-det) ** (1.0 / dimension))
    else:
        raise GroupError("Real generator with negative determinant in even dimension")
    normalized = matrix / root
    if abs(np.linalg.det(normalized) - 1.0) > DET_TOLERANCE:
        raise GroupError("Determinant normalization failed")
    return np.array(normalized)


def enumerate_sphere(group: MarkedGroup, radius: int) -> list[Word]:
    """All reduced words of length exactly ``radius``, in lexicographic order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if not group.has_normal_forms:
        raise UnsupportedPresentation(
            f"Exact enumeration needs a free or free-product presentation, "
            f"got {group.presentation.value}"
        )
    for r, shell in enumerate(iter_spheres(group.rank, group.orders)):
        if r == radius:
            return shell
    raise AssertionError("unreachable")  # pragma: no cover


def enumerate_spheres_by_image(group: MarkedGroup, radius: int) -> list[list[Word]]:
    """Spheres 0..radius for presentations without normal forms.

    Heuristic: two words are the same element when their images agree within
    ``IMAGE_HASH_TOLERANCE``; the first word in lexicographic order represents
    the element.
    """
    seen: dict[tuple[int, ...], Word] = {}

    def key(matrix: NDArray[np.generic]) -> tuple[int, ...]:
        flat = np.concatenate([matrix.real.ravel(), matrix.imag.ravel()])
        return tuple(np.round(flat / IMAGE_HASH_TOLERANCE).astype(np.int64).tolist())

    identity = Word()
    seen[key(group.image(identity))] = identity
    spheres = [[identity]]
    frontier = [(identity, group.image(identity))]
    for _ in range(radius):
        shell: list[Word] = []
        next_frontier = []
        for word, matrix in frontier:
            for letter in alphabet(group.rank):
                if word.letters and letter == -word.letters[-1]:
                    continue
                product = matrix @ group.generator_image(letter)
                fingerprint = key(product)
                if fingerprint in seen:
                    continue
                extended = Word(word.letters + (letter,))
                seen[fingerprint] = extended
                shell.append(extended)
                next_frontier.append((extended, product))
        spheres.append(shell)
        frontier = next_frontier
    logger.debug(
        "Enumerated spheres by image hashing",
        extra={"radius": radius, "elements": len(seen)},
    )
    return spheres


def peripheral_powers(peripheral: PeripheralSubgroup, n_max: int) -> list[Word]:
    """The reduced words c, c^2, ..., c^n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return [reduce_word(peripheral.generator_word**n) for n in range(1, n_max + 1)]
