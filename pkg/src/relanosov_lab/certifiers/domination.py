# SPDX-License-Identifier: CC-BY-SA-4.0

"""Weak domination against the cusped-space norm and along word paths."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from relanosov_lab.certifiers.divergence import CertificationError, check_k
from relanosov_lab.cusp import DepthFunction, peripheral_norms
from relanosov_lab.dynamics import evaluate, letter_matrices, power_products, singular_data
from relanosov_lab.groups import MarkedGroup, PeripheralSubgroup, Word, is_reduced

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 0.05
MIN_RATE = 1e-3
LINEAR_SLOPE_RANGE = (0.75, 1.33)
LINEAR_MIN_R_SQUARED = 0.9


@dataclass
class DominationFit:
    """Fitted bound log gap >= rate * x - log_C with rate = (1 - slack) * slope.

    ``violations`` counts samples strictly below that line.
    """

    slope: float
    log_C: float
    r_squared: float
    violations: int
    sample_size: int
    slack: float
    linear: bool
    points: list[tuple[float, float]] = field(default_factory=list, repr=False)

    @property
    def rate(self) -> float:
        return (1 - self.slack) * self.slope


def _is_linear(xs: np.ndarray, gaps: np.ndarray) -> bool:
    mask = (xs > 0) & (gaps > 0)
    if mask.sum() < 3:
        return False
    log_x, log_gap = np.log(xs[mask]), np.log(gaps[mask])
    if np.ptp(log_x) == 0:
        return False
    fit = stats.linregress(log_x, log_gap)
    low, high = LINEAR_SLOPE_RANGE
    return bool(low <= fit.slope <= high and fit.rvalue**2 >= LINEAR_MIN_R_SQUARED)


def fit_domination(
    xs: Sequence[float],
    gaps: Sequence[float],
    slack: float = DEFAULT_SLACK,
    min_rate: float = MIN_RATE,
) -> DominationFit:
    """Fit log gap against a norm and count violations of the fitted bound.

    The slope comes from ordinary least squares. The constant is the smallest
    one for which the first half of the samples (ordered by x) satisfies the
    bound at the relaxed rate; every sample is then checked against it.
    """
    x = np.asarray(xs, dtype=np.float64)
    g = np.asarray(gaps, dtype=np.float64)
    if x.shape != g.shape or x.size < 2:
        raise CertificationError("need at least two paired samples")
    if not 0 <= slack < 1:
        raise CertificationError("slack must lie in [0, 1)")
    if np.ptp(x) == 0:
        slope, r_squared = 0.0, 0.0
    else:
        fit = stats.linregress(x, g)
        slope, r_squared = float(fit.slope), float(fit.rvalue**2)
    rate = (1 - slack) * slope
    order = np.argsort(x, kind="stable")
    head = order[: max(1, x.size // 2)]
    log_c = float(np.max(rate * x[head] - g[head]))
    if slope <= min_rate:
        violations = int(x.size)
    else:
        violations = int(np.count_nonzero(g < rate * x - log_c))
    return DominationFit(
        slope=slope,
        log_C=log_c,
        r_squared=r_squared,
        violations=violations,
        sample_size=int(x.size),
        slack=slack,
        linear=_is_linear(x, g),
        points=list(zip(x.tolist(), g.tolist(), strict=True)),
    )


def fit_weak_domination(
    group: MarkedGroup,
    peripheral: PeripheralSubgroup,
    k: int,
    f: DepthFunction,
    n_max: int,
    slack: float = DEFAULT_SLACK,
) -> DominationFit:
    """Fit log gap(rho(c^n)) against |c^n| in the cusped space, n = 1..n_max."""
    check_k(group, k)
    norms = peripheral_norms(f, n_max)
    gaps = [
        singular_data(m).gap(k)
        for m in power_products(group, peripheral.generator_word, n_max)
    ]
    result = fit_domination(norms, gaps, slack=slack)
    logger.info(
        "Weak domination fit",
        extra={
            "peripheral": peripheral.label,
            "k": k,
            "slope": result.slope,
            "violations": result.violations,
        },
    )
    return result


@dataclass
class FlowProbe:
    """Log gaps of the prefixes of a path with the fitted per-letter slope."""

    path: Word
    gaps: list[float]
    slope: float
    intercept: float


def probe_flow_domination(group: MarkedGroup, path: Word, k: int) -> FlowProbe:
    """Log gap at k of every prefix product of ``path``."""
    if not is_reduced(path, group.orders):
        raise CertificationError(f"path {path} is not reduced")
    check_k(group, k)
    letters = letter_matrices(group)
    gaps = []
    current = evaluate(group, Word(), letters)
    for letter in path:
        current = current @ letters[letter]
        gaps.append(singular_data(current).gap(k))
    if len(gaps) < 2:
        slope = 0.0
        intercept = gaps[0] if gaps else 0.0
    else:
        fit = stats.linregress(np.arange(1, len(gaps) + 1), gaps)
        slope, intercept = float(fit.slope), float(fit.intercept)
    return FlowProbe(path, gaps, slope, intercept)
