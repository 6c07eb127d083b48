# SPDX-License-Identifier: CC-BY-SA-4.0

"""Long matrix products kept in log scale.

Every product also carries its compound matrices (the action on k-vectors,
entries are the k x k minors). The top singular value of the k-th compound is
sigma_1 * ... * sigma_k, and top singular values survive rounding where the
small singular values of a long product do not.
"""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from itertools import combinations

import numpy as np
from numpy.typing import NDArray

from relanosov_lab.errors import LabError
from relanosov_lab.groups import MarkedGroup, Word, enumerate_spheres_by_image, iter_spheres

logger = logging.getLogger(__name__)

RENORMALIZE_EVERY = 8


class DynamicsError(LabError):
    """Base class for matrix-dynamics errors."""


class NumericalFailure(DynamicsError):
    """Raised on non-finite matrix data."""


@cache
def subsets(d: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Sorted k-subsets of range(d), the basis of the k-th exterior power."""
    return tuple(combinations(range(d), k))


def compound(matrix: NDArray[np.generic], k: int) -> NDArray[np.generic]:
    """k-th compound matrix: determinants of all k x k minors."""
    d = matrix.shape[0]
    if k == 1:
        return np.array(matrix)
    index = np.array(subsets(d, k))
    minors = matrix[index[:, None, :, None], index[None, :, None, :]]
    return np.linalg.det(minors)


def _normalize(part: NDArray[np.generic]) -> tuple[NDArray[np.generic], float]:
    peak = float(np.max(np.abs(part)))
    if not math.isfinite(peak):
        raise NumericalFailure("non-finite entries in matrix product")
    if peak == 0.0:
        raise NumericalFailure("matrix product collapsed to zero")
    return part / peak, math.log(peak)


def _sign(value: complex) -> complex:
    """Unit-modulus factor of a determinant; real signs stay real."""
    if np.imag(value) != 0:
        return complex(value) / abs(value)
    return -1.0 if np.real(value) < 0 else 1.0


def _complementary_compound(part: NDArray[np.generic], d: int, k: int) -> NDArray[np.generic]:
    """Signed, transposed reindexing of a (d-k)-th compound onto k-subsets."""
    position = {subset: i for i, subset in enumerate(subsets(d, d - k))}
    smaller = subsets(d, k)
    complement = np.array(
        [position[tuple(i for i in range(d) if i not in subset)] for subset in smaller]
    )
    signs = np.array([(-1) ** sum(subset) for subset in smaller])
    return np.outer(signs, signs) * part[np.ix_(complement, complement)].T


@dataclass(frozen=True, eq=False)
class ScaledMatrix:
    """A d x d matrix stored as ``exp(log_scale) * entries``.

    ``parts[k - 1]`` holds the k-th compound for k = 1..d-1 with its own
    scale in ``log_scales``; ``parts[0]`` is the matrix itself. The determinant
    is ``det_sign * exp(log_abs_det)``.
    """

    parts: tuple[NDArray[np.generic], ...]
    log_scales: tuple[float, ...]
    log_abs_det: float = 0.0
    det_sign: complex = 1.0

    @property
    def entries(self) -> NDArray[np.generic]:
        return self.parts[0]

    @property
    def log_scale(self) -> float:
        return self.log_scales[0]

    @property
    def dimension(self) -> int:
        return int(self.parts[0].shape[0])

    @classmethod
    def from_matrix(cls, matrix: NDArray[np.generic] | list[list[float]]) -> "ScaledMatrix":
        array = np.asarray(matrix)
        if not np.issubdtype(array.dtype, np.complexfloating):
            array = array.astype(np.float64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DynamicsError(f"expected a square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise NumericalFailure("non-finite matrix entries")
        d = array.shape[0]
        sign, log_abs_det = np.linalg.slogdet(array)
        parts, scales = [], []
        for k in range(1, max(d, 2)):
            part, scale = _normalize(compound(array, k))
            parts.append(part)
            scales.append(scale)
        return cls(tuple(parts), tuple(scales), float(log_abs_det), _sign(sign))

    @classmethod
    def identity(cls, d: int, dtype: type = np.float64) -> "ScaledMatrix":
        return cls.from_matrix(np.eye(d, dtype=dtype))

    def __matmul__(self, other: "ScaledMatrix") -> "ScaledMatrix":
        return self.multiply(other)

    def multiply(self, other: "ScaledMatrix", renormalize: bool = True) -> "ScaledMatrix":
        parts, scales = [], []
        for left, right, a, b in zip(
            self.parts, other.parts, self.log_scales, other.log_scales, strict=True
        ):
            product = left @ right
            if renormalize:
                product, scale = _normalize(product)
            else:
                scale = 0.0
            parts.append(product)
            scales.append(a + b + scale)
        return ScaledMatrix(
            tuple(parts),
            tuple(scales),
            self.log_abs_det + other.log_abs_det,
            _sign(self.det_sign * other.det_sign),
        )

    def renormalized(self) -> "ScaledMatrix":
        parts, scales = [], []
        for part, log_scale in zip(self.parts, self.log_scales, strict=True):
            normalized, scale = _normalize(part)
            parts.append(normalized)
            scales.append(log_scale + scale)
        return ScaledMatrix(tuple(parts), tuple(scales), self.log_abs_det, self.det_sign)

    def inverse(self) -> "ScaledMatrix":
        """Inverse built from the complementary compounds.

        The (I, J) minor of g^-1 is (-1)^(sum I + sum J) times the (J^c, I^c)
        minor of g divided by det g, so no ill-conditioned product is inverted.
        """
        d = self.dimension
        inverse_sign = _sign(1.0 / self.det_sign)
        if d == 1:
            return ScaledMatrix(
                (1.0 / self.entries,), (-self.log_scale,), -self.log_abs_det, inverse_sign
            )
        parts, scales = [], []
        for k in range(1, d):
            complementary = self.parts[d - k - 1]
            part = _complementary_compound(complementary, d, k) / self.det_sign
            normalized, scale = _normalize(part)
            parts.append(normalized)
            scales.append(self.log_scales[d - k - 1] + scale - self.log_abs_det)
        return ScaledMatrix(tuple(parts), tuple(scales), -self.log_abs_det, inverse_sign)

    def matrix(self) -> NDArray[np.generic]:
        """Plain matrix; overflows for long products."""
        return math.exp(self.log_scale) * self.entries


def letter_matrices(group: MarkedGroup) -> dict[int, ScaledMatrix]:
    """Scaled images of every signed generator."""
    table = {}
    for index in range(1, group.rank + 1):
        table[index] = ScaledMatrix.from_matrix(group.generator_image(index))
        table[-index] = ScaledMatrix.from_matrix(group.generator_image(-index))
    return table


def evaluate(
    group: MarkedGroup, word: Word, letters: dict[int, ScaledMatrix] | None = None
) -> ScaledMatrix:
    """Image of ``word`` with renormalization every ``RENORMALIZE_EVERY`` factors."""
    letters = letters if letters is not None else letter_matrices(group)
    result = ScaledMatrix.identity(group.dimension, group.images[0].dtype.type)
    for count, letter in enumerate(word, start=1):
        result = result.multiply(letters[letter], renormalize=count % RENORMALIZE_EVERY == 0)
    return result.renormalized()


def sphere_products(group: MarkedGroup, radius: int) -> Iterator[list[tuple[Word, ScaledMatrix]]]:
    """Yield spheres 0..radius with images, extending products one letter at a time."""
    letters = letter_matrices(group)
    if not group.has_normal_forms:
        for shell in enumerate_spheres_by_image(group, radius):
            yield [(word, evaluate(group, word, letters)) for word in shell]
        return
    images = {Word(): ScaledMatrix.identity(group.dimension, group.images[0].dtype.type)}
    for r, shell in enumerate(iter_spheres(group.rank, group.orders)):
        if r > radius:
            return
        current = [
            (word, images[Word(word.letters[:-1])] @ letters[word.letters[-1]])
            if word.letters
            else (word, images[word])
            for word in shell
        ]
        images = dict(current)
        yield current


def power_products(group: MarkedGroup, word: Word, n_max: int) -> list[ScaledMatrix]:
    """Images of word^1, ..., word^n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    letters = letter_matrices(group)
    base = evaluate(group, word, letters)
    powers = [base]
    for _ in range(n_max - 1):
        powers.append(powers[-1] @ base)
    return powers


def power(m: ScaledMatrix, n: int) -> ScaledMatrix:
    """m^n for n >= 0 by repeated squaring."""
    if n < 0:
        raise ValueError("use the inverse word for negative powers")
    result = ScaledMatrix.identity(m.dimension, m.entries.dtype.type)
    square = m
    while n:
        if n & 1:
            result = result @ square
        n >>= 1
        if n:
            square = square @ square
    return result
