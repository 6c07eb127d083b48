# SPDX-License-Identifier: CC-BY-SA-4.0

"""Representations along words: products, singular data and metrics."""

from relanosov_lab.dynamics.metrics import (
    BadTime,
    InnerProduct,
    NotPositiveDefinite,
    interpolate_inner_products,
    thin_metric_profile,
)
from relanosov_lab.dynamics.scaled import (
    DynamicsError,
    NumericalFailure,
    ScaledMatrix,
    compound,
    evaluate,
    letter_matrices,
    power,
    power_products,
    sphere_products,
)
from relanosov_lab.dynamics.singular import (
    BpsBounds,
    NoGap,
    SingularData,
    check_bps_bounds,
    singular_data,
    transform_subspace,
    u_dk_inverse,
    uk_subspace,
)

__all__ = [
    "BadTime",
    "BpsBounds",
    "DynamicsError",
    "InnerProduct",
    "NoGap",
    "NotPositiveDefinite",
    "NumericalFailure",
    "ScaledMatrix",
    "SingularData",
    "check_bps_bounds",
    "compound",
    "evaluate",
    "interpolate_inner_products",
    "letter_matrices",
    "power",
    "power_products",
    "singular_data",
    "sphere_products",
    "thin_metric_profile",
    "transform_subspace",
    "u_dk_inverse",
    "uk_subspace",
]
