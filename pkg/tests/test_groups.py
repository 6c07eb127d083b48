# SPDX-License-Identifier: CC-BY-SA-4.0

"""Tests for marked groups, coset tables and group definition files."""

import tomllib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from relanosov_lab.groups import (
    CosetTable,
    EmptyPeripheral,
    Field,
    GroupDefinition,
    GroupError,
    InconsistentTable,
    MarkedGroup,
    PeripheralSubgroup,
    Presentation,
    UnsupportedPresentation,
    Word,
    coset_normal_form,
    dump_group_definition,
    enumerate_sphere,
    enumerate_spheres_by_image,
    load_group_definition,
    multiply,
    peripheral_powers,
    reduce_word,
)

words = st.lists(st.sampled_from([-2, -1, 1, 2]), max_size=20).map(lambda xs: Word(tuple(xs)))


def rotation(theta: float) -> np.ndarray:
    return np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])


def substitute(word: Word, generators: tuple[Word, ...]) -> Word:
    """Replace letter i of ``word`` by the i-th generator word (inverted for -i)."""
    result = Word()
    for letter in word:
        piece = generators[abs(letter) - 1]
        result = result * (piece if letter > 0 else piece.inverse())
    return reduce_word(result)


class TestMarkedGroup:
    """Test cases for MarkedGroup."""

    def test_determinant_is_normalized(self):
        """Test that images are scaled to determinant one."""
        group = MarkedGroup(images=(np.diag([2.0, 8.0]),))
        assert np.allclose(group.images[0], np.diag([0.5, 2.0]))
        assert np.isclose(np.linalg.det(group.images[0]), 1.0)

    def test_odd_dimension_negative_determinant(self):
        """Test that odd dimensions absorb a negative determinant."""
        group = MarkedGroup(images=(-np.eye(3),))
        assert np.allclose(group.images[0], np.eye(3))

    @pytest.mark.parametrize(
        ("image", "message"),
        [
            (np.zeros((2, 2)), "singular"),
            (np.diag([1.0, -1.0]), "negative determinant"),
            (np.ones((2, 3)), "square"),
        ],
    )
    def test_invalid_images(self, image, message):
        """Test rejection of images that cannot be normalized."""
        with pytest.raises(GroupError, match=message):
            MarkedGroup(images=(image,))

    def test_images_are_read_only(self, cusped):
        """Test that normalized images cannot be modified in place."""
        with pytest.raises(ValueError):
            cusped.group.images[0][0, 0] = 5.0

    def test_generator_image_and_inverse(self, cusped):
        """Test signed letters evaluate to images and their inverses."""
        group = cusped.group
        assert np.allclose(group.generator_image(1) @ group.generator_image(-1), np.eye(2))
        assert np.allclose(group.image(Word.parse("Ab")), np.array([[-3.0, -2.0], [2.0, 1.0]]))

    def test_free_presentation_rejects_orders(self):
        """Test that finite orders need a free-product presentation."""
        with pytest.raises(GroupError, match="finite-order"):
            MarkedGroup(images=(np.eye(2), np.eye(2)), orders=(3, None))
        group = MarkedGroup(
            images=(rotation(2 * np.pi / 3), np.eye(2)),
            presentation=Presentation.FREE_PRODUCT,
            orders=(3, None),
        )
        assert group.reduce(Word.parse("aa")) == Word.parse("A")

    def test_peripheral_validation(self):
        """Test rejection of empty, unreduced and out-of-range peripherals."""
        with pytest.raises(EmptyPeripheral):
            PeripheralSubgroup(Word(), "c")
        with pytest.raises(GroupError, match="not reduced"):
            PeripheralSubgroup(Word.parse("aA"), "c")
        with pytest.raises(GroupError, match="unknown generator"):
            MarkedGroup(
                images=(np.eye(2),), peripherals=(PeripheralSubgroup(Word.parse("b"), "c"),)
            )

    def test_peripheral_lookup(self, cusped):
        """Test peripheral lookup by label."""
        assert cusped.group.peripheral("Ab").generator_word == Word.parse("Ab")
        with pytest.raises(KeyError):
            cusped.group.peripheral("missing")

    def test_peripheral_powers(self):
        """Test the reduced powers of a peripheral generator."""
        peripheral = PeripheralSubgroup(Word.parse("ab"), "c")
        assert peripheral_powers(peripheral, 3) == [
            Word.parse("ab"),
            Word.parse("abab"),
            Word.parse("ababab"),
        ]
        with pytest.raises(ValueError, match="n_max"):
            peripheral_powers(peripheral, 0)

    def test_enumerate_sphere(self, cusped):
        """Test exact sphere enumeration for a free presentation."""
        assert len(enumerate_sphere(cusped.group, 3)) == 36
        with pytest.raises(ValueError, match="nonnegative"):
            enumerate_sphere(cusped.group, -1)

    def test_enumerate_sphere_needs_normal_forms(self):
        """Test that other presentations cannot be enumerated exactly."""
        group = MarkedGroup(images=(rotation(2 * np.pi / 3),), presentation=Presentation.OTHER)
        with pytest.raises(UnsupportedPresentation):
            enumerate_sphere(group, 2)

    def test_enumerate_spheres_by_image(self):
        """Test that image hashing identifies a^2 with a^-1 in a group of order 3."""
        group = MarkedGroup(images=(rotation(2 * np.pi / 3),), presentation=Presentation.OTHER)
        spheres = enumerate_spheres_by_image(group, 3)
        assert spheres[0] == [Word()]
        assert spheres[1] == [Word.parse("A"), Word.parse("a")]
        assert spheres[2] == []
        assert spheres[3] == []


class TestCosetTable:
    """Test cases for coset tables and Schreier rewriting."""

    @pytest.fixture
    def table(self):
        """Index-two subgroup where both generators swap the cosets."""
        return CosetTable.index_two(2, swapping=(1, 2))

    def test_representatives(self, table):
        """Test the Schreier tree representatives."""
        assert table.index == 2
        assert table.representatives == (Word(), Word.parse("a"))

    def test_schreier_generators(self, table):
        """Test the free generators of the index-two subgroup."""
        assert [str(w) for w in table.schreier_generators()] == ["Ab", "aa", "ba"]

    def test_action(self, table):
        """Test the left action applies letters right to left."""
        assert table.act(Word.parse("a"), 0) == 1
        assert table.act(Word.parse("ab"), 0) == 0
        assert table.act_letter(-1, 1) == 0

    def test_rewrite(self, table):
        """Test rewriting a subgroup element in the Schreier generators."""
        assert table.rewrite(Word.parse("ab")) == Word((2, 1))
        with pytest.raises(GroupError, match="not in the subgroup"):
            table.rewrite(Word.parse("a"))

    def test_coset_normal_form(self, table):
        """Test word * alpha_i = alpha_j * eta."""
        assert coset_normal_form(table, Word.parse("b")) == (1, Word.parse("Ab"))
        with pytest.raises(InconsistentTable, match="outside"):
            coset_normal_form(table, Word.parse("b"), 2)

    @pytest.mark.parametrize(
        ("action", "message"),
        [
            ([[0, 0], [1, 0]], "permute"),
            ([[0, 1], [0, 1]], "not transitive"),
        ],
    )
    def test_invalid_permutations(self, action, message):
        """Test rejection of non-permutations and intransitive actions."""
        with pytest.raises(InconsistentTable, match=message):
            CosetTable.from_permutations(action)

    def test_three_cosets(self):
        """Test a transitive action on three cosets."""
        table = CosetTable.from_permutations([[1, 2, 0], [0, 2, 1]])
        assert table.index == 3
        assert len(table.schreier_generators()) == 4
        for j, representative in enumerate(table.representatives):
            assert table.act(representative, 0) == j

    @settings(deadline=None)
    @given(words)
    def test_normal_form_factorization(self, w):
        """Test alpha_j * eta reduces to w and eta lies in the subgroup."""
        table = CosetTable.index_two(2, swapping=(1, 2))
        j, eta = coset_normal_form(table, w)
        assert table.act(eta, 0) == 0
        assert multiply(table.representatives[j], eta) == reduce_word(w)

    @settings(deadline=None)
    @given(words)
    def test_rewrite_substitutes_back(self, w):
        """Test that substituting the Schreier generators undoes a rewrite."""
        table = CosetTable.from_permutations([[1, 2, 0], [0, 2, 1]])
        j, eta = coset_normal_form(table, w)
        assert substitute(table.rewrite(eta), table.schreier_generators()) == eta


class TestGroupDefinition:
    """Test cases for group definition files."""

    def test_to_group(self):
        """Test building a group from a validated definition."""
        definition = GroupDefinition.model_validate(
            {
                "name": "modular",
                "presentation": "free-product",
                "orders": [2, 3],
                "generators": [[[0, -1], [1, 0]], [[0, -1], [1, 1]]],
                "peripherals": [{"label": "ab", "word": "ab"}],
            }
        )
        group = definition.to_group()
        assert group.name == "modular"
        assert group.orders == (2, 3)
        assert group.peripherals[0].generator_word == Word.parse("ab")

    def test_zero_order_means_infinite(self):
        """Test that order 0 denotes an infinite-order generator."""
        definition = GroupDefinition(
            presentation=Presentation.FREE_PRODUCT,
            orders=[2, 0],
            generators=[[[0, -1], [1, 0]], [[1, 1], [0, 1]]],
        )
        assert definition.to_group().orders == (2, None)

    @pytest.mark.parametrize(
        ("data", "message"),
        [
            ({"generators": [[[1, 0], [0, 1]], [[1, 0, 0]]]}, "not a 2x2"),
            (
                {"generators": [[[1, 0], [0, 1]]], "generators_imag": [[[0, 0], [0, 0]]]},
                "requires field",
            ),
            ({"generators": [[[1, 0], [0, 1]]], "orders": [1]}, "0 \\(infinite\\) or at least 2"),
            ({"generators": [[[1, 0], [0, 1]]], "orders": [2, 3]}, "one entry per generator"),
            ({"generators": []}, "at least 1"),
            ({"generators": [[[1, 0], [0, 1]]], "extra": 1}, "Extra inputs"),
        ],
    )
    def test_invalid_definitions(self, data, message):
        """Test validation errors of malformed definitions."""
        with pytest.raises(ValidationError, match=message):
            GroupDefinition.model_validate(data)

    def test_complex_generators(self):
        """Test complex images from real and imaginary parts."""
        definition = GroupDefinition(
            field=Field.COMPLEX,
            generators=[[[1, 0], [0, 1]]],
            generators_imag=[[[1, 0], [0, -1]]],
        )
        group = definition.to_group()
        assert group.field is Field.COMPLEX
        assert np.iscomplexobj(group.images[0])

    def test_dump_and_load(self, cusped, tmp_path):
        """Test writing a gallery group to TOML and reading it back."""
        path = tmp_path / "cusped.toml"
        path.write_text(dump_group_definition(GroupDefinition.from_group(cusped.group)))
        group = load_group_definition(path).to_group()
        assert group.name == "cusped"
        assert [p.label for p in group.peripherals] == ["a", "b", "Ab"]
        for loaded, original in zip(group.images, cusped.group.images, strict=True):
            assert np.allclose(loaded, original)

    def test_coset_table_is_kept(self):
        """Test that a coset table survives serialization."""
        table = CosetTable.index_two(2, swapping=(1,))
        definition = GroupDefinition.from_group(
            MarkedGroup(images=(np.eye(2), np.eye(2))), table
        )
        data = tomllib.loads(dump_group_definition(definition))
        restored = GroupDefinition.model_validate(data).to_coset_table()
        assert restored is not None
        assert restored.action == table.action
        assert restored.representatives == table.representatives

    def test_coset_table_without_representatives(self):
        """Test that missing representatives come from a Schreier tree."""
        definition = GroupDefinition.model_validate(
            {"generators": [[[1, 0], [0, 1]]], "coset_table": {"action": [[1, 0]]}}
        )
        table = definition.to_coset_table()
        assert table is not None
        assert table.representatives == (Word(), Word.parse("a"))

    def test_canonical_omits_none(self, cusped):
        """Test that the canonical dict leaves unset optional fields out."""
        canonical = GroupDefinition.from_group(cusped.group).canonical()
        assert "orders" not in canonical
        assert "generators_imag" not in canonical
        assert canonical["presentation"] == "free"
