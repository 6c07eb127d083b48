# SPDX-License-Identifier: CC-BY-SA-4.0

"""Combinatorial horoballs, truncated cusped spaces and their metrics."""

from relanosov_lab.cusp.cusped import (
    CuspedGraph,
    DistortionFit,
    TruncationTooSmall,
    build_cusped_graph,
    cayley_ball,
    check_log_distortion,
    cusped_norm,
    peripheral_norms,
)
from relanosov_lab.cusp.depth import (
    Admissibility,
    CuspSpaceError,
    DepthFunction,
    DepthKind,
    DomainExceeded,
    EnvelopeBounded,
    check_depth_admissible,
    design_depth_function,
)
from relanosov_lab.cusp.horoball import (
    ClosureCheck,
    Disconnected,
    HoroballGraph,
    build_horoball,
    check_horizontal_closure,
    horoball_distance,
)
from relanosov_lab.cusp.hyperbolicity import estimate_delta

__all__ = [
    "Admissibility",
    "ClosureCheck",
    "CuspSpaceError",
    "CuspedGraph",
    "DepthFunction",
    "DepthKind",
    "Disconnected",
    "DistortionFit",
    "DomainExceeded",
    "EnvelopeBounded",
    "HoroballGraph",
    "TruncationTooSmall",
    "build_cusped_graph",
    "build_horoball",
    "cayley_ball",
    "check_depth_admissible",
    "check_horizontal_closure",
    "check_log_distortion",
    "cusped_norm",
    "design_depth_function",
    "estimate_delta",
    "horoball_distance",
    "peripheral_norms",
]
