# SPDX-License-Identifier: CC-BY-SA-4.0

"""Inner products, their geometric interpolation and thin-part metrics."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from relanosov_lab.dynamics.scaled import DynamicsError


class NotPositiveDefinite(DynamicsError):
    """Raised when a Gram matrix is not hermitian positive definite."""


class BadTime(DynamicsError):
    """Raised when an excursion time lies outside [0, T]."""

    def __init__(self, t: float, total: float):
        self.t = t
        self.total = total
        super().__init__(f"time {t} outside [0, {total}]")


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """Hermitian positive-definite Gram matrix."""

    gram: NDArray[np.generic]

    def __post_init__(self) -> None:
        gram = np.asarray(self.gram)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise NotPositiveDefinite(f"Gram matrix of shape {gram.shape} is not square")
        if not np.allclose(gram, gram.conj().T, atol=1e-12, rtol=1e-10):
            raise NotPositiveDefinite("Gram matrix is not hermitian")
        if linalg.eigvalsh(gram)[0] <= 0:
            raise NotPositiveDefinite("Gram matrix has a nonpositive eigenvalue")
        object.__setattr__(self, "gram", gram)

    @classmethod
    def euclidean(cls, d: int) -> "InnerProduct":
        return cls(np.eye(d))

    @property
    def dimension(self) -> int:
        return int(self.gram.shape[0])

    def norm(self, v: NDArray[np.generic] | Sequence[float]) -> float:
        vector = np.asarray(v)
        return math.sqrt(max(float(np.real(vector.conj() @ self.gram @ vector)), 0.0))

    def scaled(self, log_factor: float) -> "InnerProduct":
        """Inner product whose norm is exp(log_factor) times this norm."""
        return InnerProduct(math.exp(2 * log_factor) * self.gram)


def interpolate_inner_products(a: InnerProduct, b: InnerProduct, t: float) -> InnerProduct:
    """Geometric interpolation m(t) between A (t = 0) and B (t = 1).

    In a basis orthogonal for both A and B, m(t) is diagonal with entries
    A(v, v)^(1-t) B(v, v)^t.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    if a.dimension != b.dimension:
        raise DynamicsError("inner products on different spaces")
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    # columns of V are A-orthonormal and B-orthogonal: V^H A V = I, V^H B V = diag(w)
    w, v = linalg.eigh(b.gram, a.gram)
    left = a.gram @ v
    gram = (left * w**t) @ left.conj().T
    return InnerProduct((gram + gram.conj().T) / 2)


def _component_norms(
    components: Sequence[NDArray[np.generic]],
    metrics: Sequence[InnerProduct],
    log_factors: Sequence[float],
) -> float:
    return sum(
        math.exp(factor) * metric.norm(v)
        for v, metric, factor in zip(components, metrics, log_factors, strict=True)
    )


def thin_metric_profile(
    v1: NDArray[np.generic] | Sequence[float],
    v2: NDArray[np.generic] | Sequence[float],
    v3: NDArray[np.generic] | Sequence[float],
    c: float,
    t: float,
    total: float,
    start: Sequence[InnerProduct] | None = None,
    end: Sequence[InnerProduct] | None = None,
) -> float:
    """Norm of v1 + v2 + v3 at time t of an excursion of length ``total``.

    The first third contracts the first component and expands the third at
    rate c, the last third does the reverse towards the end metrics, and the
    middle third interpolates component-wise between the metrics at T/3 and
    2T/3. ``start`` and ``end`` default to the Euclidean inner product.

    Raises:
        BadTime: If t is outside [0, total].
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if not 0.0 <= t <= total:
        raise BadTime(t, total)
    components = [np.asarray(v) for v in (v1, v2, v3)]
    d = components[0].size
    start = list(start) if start is not None else [InnerProduct.euclidean(d)] * 3
    end = list(end) if end is not None else [InnerProduct.euclidean(d)] * 3
    third = total / 3
    if t <= third:
        return _component_norms(components, start, (-c * t, 0.0, c * t))
    if t >= 2 * third:
        rest = total - t
        return _component_norms(components, end, (c * rest, 0.0, -c * rest))
    tau = (3 * t - total) / total
    factors_start = (-c * third, 0.0, c * third)
    factors_end = (c * third, 0.0, -c * third)
    return sum(
        interpolate_inner_products(
            start_metric.scaled(a), end_metric.scaled(b), tau
        ).norm(v)
        for v, start_metric, end_metric, a, b in zip(
            components, start, end, factors_start, factors_end, strict=True
        )
    )
