# SPDX-License-Identifier: CC-BY-SA-4.0

"""Depth functions of combinatorial horoballs: admissibility and design."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from relanosov_lab.errors import LabError

logger = logging.getLogger(__name__)


class CuspSpaceError(LabError):
    """Base class for cusp-space errors."""


class DomainExceeded(CuspSpaceError):
    """Raised when a tabulated depth function is evaluated past its table."""

    def __init__(self, argument: int, length: int):
        self.argument = argument
        self.length = length
        super().__init__(f"Depth table has {length} entries, f({argument}) is undefined")


class EnvelopeBounded(CuspSpaceError):
    """Raised when a gap envelope never reaches the requested level."""

    def __init__(self, level: int, maximum: float):
        self.level = level
        self.maximum = maximum
        super().__init__(f"Envelope maximum {maximum:.4g} never reaches {level}")


class DepthKind(Enum):
    EXPONENTIAL = "exponential"
    TABLE = "table"


@dataclass(frozen=True)
class DepthFunction:
    """Reach of horizontal edges per horoball level.

    Either ``base ** t`` in closed form or a user table; real table entries are
    floored to integers since base distances are integers.
    """

    kind: DepthKind = DepthKind.EXPONENTIAL
    base: int = 2
    table: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is DepthKind.EXPONENTIAL and self.base < 2:
            raise CuspSpaceError("Exponential depth functions need base >= 2")
        if self.kind is DepthKind.TABLE:
            if not self.table:
                raise CuspSpaceError("Depth table is empty")
            if self.table[0] != 1:
                raise CuspSpaceError(f"Depth functions need f(0) = 1, got {self.table[0]}")
            if any(b < a for a, b in zip(self.table, self.table[1:], strict=False)):
                raise CuspSpaceError("Depth table must be nondecreasing")

    @classmethod
    def exponential(cls, base: int = 2) -> "DepthFunction":
        return cls(DepthKind.EXPONENTIAL, base=base)

    @classmethod
    def from_table(cls, values: Sequence[float]) -> "DepthFunction":
        return cls(DepthKind.TABLE, table=tuple(math.floor(v) for v in values))

    @property
    def domain_size(self) -> float:
        """Number of arguments the function is defined on."""
        return math.inf if self.kind is DepthKind.EXPONENTIAL else len(self.table)

    def __call__(self, t: int) -> int:
        if t < 0:
            raise ValueError("depth functions are defined on nonnegative integers")
        if self.kind is DepthKind.EXPONENTIAL:
            return int(self.base**t)
        if t >= len(self.table):
            raise DomainExceeded(t, len(self.table))
        return self.table[t]

    def default_levels(self, diameter: int) -> int:
        """Truncation level: one above the first level whose reach spans ``diameter``."""
        k = 0
        while self(k) < diameter:
            k += 1
        return k + 1

    def describe(self) -> str:
        if self.kind is DepthKind.EXPONENTIAL:
            return f"{self.base}^k"
        return f"table[{len(self.table)}]"


@dataclass
class Admissibility:
    """Result of the doubling check f(s + t) >= 2^t f(s)."""

    admissible: bool
    violation: tuple[int, int] | None = None


def check_depth_admissible(f: DepthFunction, s_max: int, t_max: int) -> Admissibility:
    """Check f(s + t) >= 2^t f(s) for all s <= s_max, t <= t_max.

    Raises:
        DomainExceeded: If a table is shorter than s_max + t_max + 1.
    """
    if f.domain_size < s_max + t_max + 1:
        raise DomainExceeded(s_max + t_max, int(f.domain_size))
    for s in range(s_max + 1):
        fs = f(s)
        for t in range(t_max + 1):
            if f(s + t) < 2**t * fs:
                logger.debug("Depth function violates doubling", extra={"s": s, "t": t})
                return Admissibility(False, (s, t))
    return Admissibility(True)


def design_depth_function(envelope: Sequence[float], t_max: int | None = None) -> DepthFunction:
    """Smallest admissible depth function with g(f(t)) >= t.

    ``envelope[s]`` is a nondecreasing lower bound g(s) for the log gap at word
    length s. The result is f(0) = 1 and f(t) = max(h(t), 2 f(t - 1)) where
    h(t) is the first s with g(s) >= t.

    Raises:
        EnvelopeBounded: If g never reaches t_max (or 1 when t_max is omitted).
    """
    g = np.asarray(envelope, dtype=np.float64)
    if g.size == 0 or np.any(np.diff(g) < 0):
        raise CuspSpaceError("Gap envelope must be a nonempty nondecreasing table")
    maximum = float(g.max())
    if t_max is None:
        t_max = max(int(math.floor(maximum)), 1) if math.isfinite(maximum) else 1
    if maximum < t_max:
        raise EnvelopeBounded(t_max, maximum)
    values = [1]
    for t in range(1, t_max + 1):
        first_reach = int(np.searchsorted(g, t, side="left"))
        values.append(max(first_reach, 2 * values[-1]))
    logger.debug("Designed depth function", extra={"t_max": t_max, "table": values})
    return DepthFunction.from_table(values)
