# SPDX-License-Identifier: CC-BY-SA-4.0

"""Singular values, singular subspaces and the angle estimates between them."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from relanosov_lab.dynamics.scaled import DynamicsError, NumericalFailure, ScaledMatrix, subsets
from relanosov_lab.flags import Subspace, projection_distance

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-8


class NoGap(DynamicsError):
    """Raised when sigma_k and sigma_{k+1} coincide, so U_k is undefined."""

    def __init__(self, k: int, log_gap: float):
        self.k = k
        self.log_gap = log_gap
        super().__init__(f"no singular value gap at k={k} (log gap {log_gap:.3g})")


@dataclass(frozen=True, eq=False)
class SingularData:
    """Log singular values (nonincreasing) with left and right singular frames.

    The first k columns of ``left_frame`` span U_k whenever there is a gap at k.
    """

    log_sigma: NDArray[np.float64]
    left_frame: NDArray[np.generic]
    right_frame: NDArray[np.generic]

    @property
    def dimension(self) -> int:
        return int(self.log_sigma.size)

    @property
    def k_gaps(self) -> NDArray[np.float64]:
        """log(sigma_k / sigma_{k+1}) for k = 1..d-1."""
        return self.log_sigma[:-1] - self.log_sigma[1:]

    def gap(self, k: int) -> float:
        if not 1 <= k < self.dimension:
            raise DynamicsError(f"k={k} outside 1..{self.dimension - 1}")
        return float(self.log_sigma[k - 1] - self.log_sigma[k])

    @property
    def log_condition(self) -> float:
        """log(|g| |g^-1|) in the operator norm."""
        return float(self.log_sigma[0] - self.log_sigma[-1])


def _decompose(vector: NDArray[np.generic], d: int, k: int) -> NDArray[np.generic]:
    """Orthonormal basis of the k-plane whose Pluecker vector is ``vector``.

    Interior products with the (k-1)-subsets of the dual basis span the plane.
    """
    if k == 1:
        return (vector / np.linalg.norm(vector))[:, None]
    position = {subset: i for i, subset in enumerate(subsets(d, k))}
    contractions = np.zeros((d, len(subsets(d, k - 1))), dtype=vector.dtype)
    for column, smaller in enumerate(subsets(d, k - 1)):
        for i in range(d):
            if i in smaller:
                continue
            sign = -1 if sum(j > i for j in smaller) % 2 else 1
            contractions[i, column] = sign * vector[position[tuple(sorted(smaller + (i,)))]]
    basis, _, _ = np.linalg.svd(contractions)
    return basis[:, :k]


def plucker_vector(frame: NDArray[np.generic]) -> NDArray[np.generic]:
    """k x k minors of a d x k frame, indexed like the k-th compound."""
    d, k = frame.shape
    return np.asarray(np.linalg.det(frame[np.array(subsets(d, k))]))


def transform_subspace(m: ScaledMatrix, v: Subspace) -> Subspace:
    """Image of V under a scaled product, pushed through the k-th compound.

    Raises:
        DynamicsError: If V does not live in K^d.
        NumericalFailure: If the image of the Pluecker vector vanishes.
    """
    d, k = m.dimension, v.k
    if v.d != d:
        raise DynamicsError(f"subspace of K^{v.d} under a {d} x {d} product")
    if k in (0, d):
        return v
    image = m.parts[k - 1] @ plucker_vector(v.frame)
    norm = float(np.linalg.norm(image))
    if not math.isfinite(norm) or norm == 0.0:
        raise NumericalFailure("subspace image collapsed")
    return Subspace(_decompose(image / norm, d, k))


def _nested_frame(tops: list[NDArray[np.generic]], d: int) -> NDArray[np.generic]:
    """Orthonormal frame whose first k columns span the k-th plane, for every k."""
    columns: list[NDArray[np.generic]] = []
    for k, top in enumerate(tops, start=1):
        plane = _decompose(top, d, k)
        if columns:
            done = np.column_stack(columns)
            plane = plane - done @ (done.conj().T @ plane)
        u, _, _ = np.linalg.svd(plane)
        columns.append(u[:, 0])
    frame = np.column_stack(columns) if columns else np.zeros((d, 0))
    rest = linalg.null_space(frame.conj().T) if columns else np.eye(d)
    full = np.column_stack([frame, rest])
    # one last pass to remove rounding drift between columns
    q, r = np.linalg.qr(full)
    return q * np.sign(np.diag(r).real + (np.diag(r).real == 0))


def singular_data(m: ScaledMatrix) -> SingularData:
    """Singular data of a scaled product, accurate in every log singular value.

    Raises:
        NumericalFailure: On non-finite entries.
    """
    for part in m.parts:
        if not np.all(np.isfinite(part)):
            raise NumericalFailure("non-finite entries")
    d = m.dimension
    log_norms = [0.0]
    left_tops, right_tops = [], []
    for part, log_scale in zip(m.parts, m.log_scales, strict=True):
        u, s, vh = np.linalg.svd(part)
        log_norms.append(float(np.log(s[0])) + log_scale)
        left_tops.append(u[:, 0])
        right_tops.append(vh[0].conj())
    if d > 1:
        log_norms.append(m.log_abs_det)
    log_sigma = np.diff(np.array(log_norms[: d + 1]))
    log_sigma = np.minimum.accumulate(log_sigma)
    return SingularData(
        log_sigma=log_sigma,
        left_frame=_nested_frame(left_tops[: d - 1], d),
        right_frame=_nested_frame(right_tops[: d - 1], d),
    )


def _require_gap(data: SingularData, k: int, tolerance: float) -> None:
    gap = data.gap(k)
    if gap <= tolerance:
        raise NoGap(k, gap)


def uk_subspace(m: ScaledMatrix, k: int, tolerance: float = GAP_TOLERANCE) -> Subspace:
    """Top-k left singular subspace U_k.

    Raises:
        NoGap: If the log gap at k is at most ``tolerance``.
    """
    data = singular_data(m)
    _require_gap(data, k, tolerance)
    return Subspace(data.left_frame[:, :k])


def u_dk_inverse(m: ScaledMatrix, k: int, tolerance: float = GAP_TOLERANCE) -> Subspace:
    """g^-1 applied to the orthogonal complement of U_k(g); equals U_{d-k}(g^-1)."""
    complement = uk_subspace(m, k, tolerance).complement()
    return transform_subspace(m.inverse(), complement)


@dataclass
class BpsBounds:
    """Two angle estimates between singular subspaces, each as (lhs, rhs)."""

    product_vs_left: tuple[float, float]
    product_vs_image: tuple[float, float]

    def holds(self, slack: float = 1e-9) -> bool:
        return all(lhs <= rhs + slack for lhs, rhs in (self.product_vs_left, self.product_vs_image))


def check_bps_bounds(
    g: ScaledMatrix, h: ScaledMatrix, k: int, tolerance: float = GAP_TOLERANCE
) -> BpsBounds:
    """Evaluate both sides of the two singular-subspace angle estimates.

    Part 1 compares U_k(g) with U_k(gh) against |h||h^-1| sigma_{k+1}(g)/sigma_k(g);
    part 2 compares g U_k(h) with U_k(gh) against |g||g^-1| sigma_{k+1}(h)/sigma_k(h).
    Angles are measured as the sine of the largest principal angle.

    Raises:
        NoGap: If g, h or gh has no gap at k.
    """
    gh = g @ h
    g_data, h_data, gh_data = singular_data(g), singular_data(h), singular_data(gh)
    for data in (g_data, h_data, gh_data):
        _require_gap(data, k, tolerance)
    u_g = Subspace(g_data.left_frame[:, :k])
    u_h = Subspace(h_data.left_frame[:, :k])
    u_gh = Subspace(gh_data.left_frame[:, :k])
    first = (
        projection_distance(u_g, u_gh),
        float(np.exp(h_data.log_condition - g_data.gap(k))),
    )
    second = (
        projection_distance(transform_subspace(g, u_h), u_gh),
        float(np.exp(g_data.log_condition - h_data.gap(k))),
    )
    return BpsBounds(first, second)
