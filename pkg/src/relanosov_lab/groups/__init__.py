# SPDX-License-Identifier: CC-BY-SA-4.0

"""Words, marked groups, enumeration and coset tables."""

from relanosov_lab.groups.cosets import CosetTable, InconsistentTable, coset_normal_form
from relanosov_lab.groups.definition import (
    GroupDefinition,
    dump_group_definition,
    load_group_definition,
)
from relanosov_lab.groups.marked import (
    EmptyPeripheral,
    Field,
    GroupError,
    MarkedGroup,
    PeripheralSubgroup,
    Presentation,
    UnsupportedPresentation,
    enumerate_sphere,
    enumerate_spheres_by_image,
    peripheral_powers,
)
from relanosov_lab.groups.words import Word, is_reduced, iter_spheres, multiply, reduce_word

__all__ = [
    "CosetTable",
    "EmptyPeripheral",
    "Field",
    "GroupDefinition",
    "GroupError",
    "InconsistentTable",
    "MarkedGroup",
    "PeripheralSubgroup",
    "Presentation",
    "UnsupportedPresentation",
    "Word",
    "coset_normal_form",
    "dump_group_definition",
    "enumerate_sphere",
    "enumerate_spheres_by_image",
    "is_reduced",
    "iter_spheres",
    "load_group_definition",
    "multiply",
    "peripheral_powers",
    "reduce_word",
]
