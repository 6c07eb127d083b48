# SPDX-License-Identifier: CC-BY-SA-4.0

"""Grassmannian and flag-manifold geometry."""

from relanosov_lab.flags.flags import (
    Flag,
    FlagClusters,
    cluster_flags,
    flag_distance,
    flag_rows,
    flags_transverse,
)
from relanosov_lab.flags.subspaces import (
    DimensionMismatch,
    FlagGeometryError,
    Subspace,
    angle_distance,
    principal_angles,
    projection_distance,
    transversality_margin,
)

__all__ = [
    "DimensionMismatch",
    "Flag",
    "FlagClusters",
    "FlagGeometryError",
    "Subspace",
    "angle_distance",
    "cluster_flags",
    "flag_distance",
    "flag_rows",
    "flags_transverse",
    "principal_angles",
    "projection_distance",
    "transversality_margin",
]
