# SPDX-License-Identifier: CC-BY-SA-4.0

"""Group definition files: TOML with generator matrices, peripherals and cosets.

Layout::

    name = "cusped"
    field = "real"               # or "complex"
    presentation = "free"        # "free-product" or "other"
    orders = [0, 3]              # optional, 0 = infinite order
    generators = [[[1, 2], [0, 1]], [[1, 0], [2, 1]]]
    generators_imag = [...]      # complex field only, same shape

    [[peripherals]]
    label = "a"
    word = "a"

    [coset_table]                # optional
    action = [[1, 0], [1, 0]]
    representatives = ["e", "a"] # optional, breadth-first tree when absent
"""

import tomllib
from pathlib import Path
from typing import Any, Self

import numpy as np
import tomli_w
from pydantic import BaseModel, ConfigDict, Field, model_validator

from relanosov_lab.groups.cosets import CosetTable
from relanosov_lab.groups.marked import Field as ScalarField
from relanosov_lab.groups.marked import MarkedGroup, PeripheralSubgroup, Presentation
from relanosov_lab.groups.words import Word

Matrix = list[list[float]]


class PeripheralEntry(BaseModel):
    """One cyclic peripheral subgroup."""

    model_config = ConfigDict(extra="forbid")

    label: str
    word: str


class CosetTableEntry(BaseModel):
    """Permutation action on cosets, numbered from 0."""

    model_config = ConfigDict(extra="forbid")

    action: list[list[int]]
    representatives: list[str] | None = None

    def to_table(self) -> CosetTable:
        if self.representatives is None:
            return CosetTable.from_permutations(self.action)
        return CosetTable(
            tuple(tuple(row) for row in self.action),
            tuple(Word.parse(text) for text in self.representatives),
        )


class GroupDefinition(BaseModel):
    """Validated contents of a group definition file."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    name: str = ""
    field: ScalarField = ScalarField.REAL
    presentation: Presentation = Presentation.FREE
    orders: list[int] | None = None
    generators: list[Matrix] = Field(min_length=1)
    generators_imag: list[Matrix] | None = None
    peripherals: list[PeripheralEntry] = Field(default_factory=list)
    coset_table: CosetTableEntry | None = None

    @model_validator(mode="after")
    def check_shapes(self) -> Self:
        dimension = len(self.generators[0])
        for index, matrix in enumerate(self.generators, start=1):
            if len(matrix) != dimension or any(len(row) != dimension for row in matrix):
                raise ValueError(f"generator {index} is not a {dimension}x{dimension} matrix")
        if self.generators_imag is not None:
            if self.field is not ScalarField.COMPLEX:
                raise ValueError("generators_imag requires field = 'complex'")
            if np.shape(self.generators_imag) != np.shape(self.generators):
                raise ValueError("generators_imag must have the same shape as generators")
        if self.orders is not None:
            if len(self.orders) != len(self.generators):
                raise ValueError("orders must list one entry per generator")
            if any(order < 0 or order == 1 for order in self.orders):
                raise ValueError("orders must be 0 (infinite) or at least 2")
        return self

    def to_group(self) -> MarkedGroup:
        images = np.asarray(self.generators, dtype=np.float64)
        if self.generators_imag is not None:
            images = images + 1j * np.asarray(self.generators_imag, dtype=np.float64)
        orders = None
        if self.orders is not None:
            orders = tuple(order or None for order in self.orders)
        return MarkedGroup(
            images=tuple(images),
            field=self.field,
            presentation=self.presentation,
            peripherals=tuple(
                PeripheralSubgroup(Word.parse(entry.word), entry.label)
                for entry in self.peripherals
            ),
            orders=orders,
            name=self.name,
        )

    def to_coset_table(self) -> CosetTable | None:
        return self.coset_table.to_table() if self.coset_table is not None else None

    @classmethod
    def from_group(cls, group: MarkedGroup, table: CosetTable | None = None) -> Self:
        real = [np.real(image).tolist() for image in group.images]
        imag = None
        if group.field is ScalarField.COMPLEX:
            imag = [np.imag(image).tolist() for image in group.images]
        coset_table = None
        if table is not None:
            coset_table = CosetTableEntry(
                action=[list(row) for row in table.action],
                representatives=[str(word) for word in table.representatives],
            )
        return cls(
            name=group.name,
            field=group.field,
            presentation=group.presentation,
            orders=[order or 0 for order in group.orders] if group.orders is not None else None,
            generators=real,
            generators_imag=imag,
            peripherals=[
                PeripheralEntry(label=p.label, word=str(p.generator_word))
                for p in group.peripherals
            ],
            coset_table=coset_table,
        )

    def canonical(self) -> dict[str, Any]:
        """JSON-compatible dict, used for input hashing."""
        return self.model_dump(mode="json", exclude_none=True)


def load_group_definition(path: Path | str) -> GroupDefinition:
    """Read and validate a group definition file."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return GroupDefinition.model_validate(data)


def dump_group_definition(definition: GroupDefinition) -> str:
    """Serialize a definition to the TOML layout above."""
    return tomli_w.dumps(definition.canonical())
