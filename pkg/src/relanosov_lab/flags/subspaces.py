# SPDX-License-Identifier: CC-BY-SA-4.0

"""Subspaces of K^d, principal angles and transversality margins."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from relanosov_lab.errors import LabError

ORTHONORMAL_TOLERANCE = 1e-9


class FlagGeometryError(LabError):
    """Base class for flag-geometry errors."""


class DimensionMismatch(FlagGeometryError):
    """Raised when subspaces live in different spaces or have the wrong dimensions."""


@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-dimensional subspace given by a d x k orthonormal frame."""

    frame: NDArray[np.generic]

    def __post_init__(self) -> None:
        frame = np.asarray(self.frame)
        if frame.ndim != 2 or frame.shape[1] > frame.shape[0]:
            raise DimensionMismatch(f"frame of shape {frame.shape} is not d x k with k <= d")
        gram = frame.conj().T @ frame
        if not np.allclose(gram, np.eye(frame.shape[1]), atol=ORTHONORMAL_TOLERANCE):
            raise FlagGeometryError("frame columns are not orthonormal")
        object.__setattr__(self, "frame", frame)

    @classmethod
    def span(cls, vectors: NDArray[np.generic] | list[list[float]]) -> "Subspace":
        """Subspace spanned by the columns of ``vectors``, which must be independent."""
        columns = np.asarray(vectors)
        if columns.ndim == 1:
            columns = columns[:, None]
        basis = linalg.orth(columns)
        if basis.shape[1] != columns.shape[1]:
            raise FlagGeometryError("spanning vectors are linearly dependent")
        return cls(basis)

    @property
    def k(self) -> int:
        return int(self.frame.shape[1])

    @property
    def d(self) -> int:
        return int(self.frame.shape[0])

    def projector(self) -> NDArray[np.generic]:
        return self.frame @ self.frame.conj().T

    def complement(self) -> "Subspace":
        return Subspace(linalg.null_space(self.frame.conj().T))

    def transform(self, matrix: NDArray[np.generic]) -> "Subspace":
        """Image under an invertible matrix."""
        return Subspace.span(matrix @ self.frame)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.d != b.d:
        raise DimensionMismatch(f"subspaces of K^{a.d} and K^{b.d}")


def principal_angles(a: Subspace, b: Subspace) -> NDArray[np.float64]:
    """Principal angles in [0, pi/2], nondecreasing."""
    _check_ambient(a, b)
    return np.sort(linalg.subspace_angles(a.frame, b.frame))


def angle_distance(a: Subspace, b: Subspace) -> float:
    """Largest principal angle between subspaces of equal dimension."""
    if a.k != b.k:
        raise DimensionMismatch(f"dimensions {a.k} and {b.k} differ")
    return float(principal_angles(a, b)[-1]) if a.k else 0.0


def projection_distance(a: Subspace, b: Subspace) -> float:
    return float(np.sin(angle_distance(a, b)))


def transversality_margin(v: Subspace, w: Subspace) -> float:
    """Smallest singular value of the projection of V onto the complement of W.

    Lies in [0, 1] and vanishes exactly when V and W intersect.
    """
    _check_ambient(v, w)
    if v.k + w.k != v.d:
        raise DimensionMismatch(f"dim V + dim W = {v.k + w.k}, expected {v.d}")
    if v.k == 0:
        return 1.0
    complement = w.complement().frame
    singular = linalg.svdvals(complement.conj().T @ v.frame)
    return float(min(singular.min(), 1.0))
