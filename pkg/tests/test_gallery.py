# SPDX-License-Identifier: CC-BY-SA-4.0

"""Tests for the gallery of worked representations."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relanosov_lab.certifiers import DiagnosisTag
from relanosov_lab.gallery import (
    SCHOTTKY_MIN_LAM,
    BlockKind,
    FreenessCheckFailed,
    GalleryError,
    NotBlockStructured,
    RankMismatch,
    check_freeness,
    classify_block,
    diagonal_blocks,
    get_item,
    list_items,
    make_direct_sum,
    make_induced,
    make_schottky,
    make_trivial,
    peripheral_structure_report,
)
from relanosov_lab.groups import CosetTable, MarkedGroup, Word

words = st.lists(st.sampled_from([-2, -1, 1, 2]), max_size=8).map(lambda xs: Word(tuple(xs)))


class TestItems:
    """Test cases for the registered items."""

    def test_expected_tags(self):
        """Test the registry and its claimed diagnoses."""
        assert list_items() == [
            ("cusped", DiagnosisTag.ANOSOV),
            ("schottky", DiagnosisTag.ANOSOV),
            ("trivial", DiagnosisTag.NOT_DIVERGENT),
            ("direct-sum", DiagnosisTag.NON_ANOSOV),
            ("induced", None),
        ]

    def test_unknown_item(self):
        """Test lookup of a name that is not registered."""
        with pytest.raises(GalleryError, match="unknown gallery item 'nope'"):
            get_item("nope")

    def test_cusped_peripherals_are_parabolic(self, cusped):
        """Test that every peripheral image has trace 2 in absolute value."""
        report = peripheral_structure_report(cusped)
        assert report == {
            "a": [BlockKind.PARABOLIC],
            "b": [BlockKind.PARABOLIC],
            "Ab": [BlockKind.PARABOLIC],
        }

    def test_cusped_hyperbolic_product(self, cusped):
        """Test that ab is hyperbolic with trace 6."""
        assert np.trace(cusped.group.image(Word.parse("ab"))) == pytest.approx(6.0)

    def test_direct_sum_item(self, direct_sum):
        """Test the shape of the direct sum."""
        assert direct_sum.name == "direct-sum"
        assert direct_sum.group.dimension == 4
        assert direct_sum.blocks == (2, 2)
        assert direct_sum.k == 2
        assert [p.label for p in direct_sum.group.peripherals] == ["a", "b", "Ab"]

    def test_direct_sum_peripherals(self, direct_sum):
        """Test that the Schottky block of each peripheral is hyperbolic."""
        report = peripheral_structure_report(direct_sum)
        expected = [BlockKind.PARABOLIC, BlockKind.HYPERBOLIC]
        assert all(kinds == expected for kinds in report.values())


class TestFreeness:
    """Test cases for the Schottky freeness check."""

    def test_schottky_is_free(self, schottky):
        """Test that short words stay apart."""
        assert check_freeness(schottky.group) > 1e-6

    def test_degenerate_schottky(self):
        """Test that lam = 1 collapses every word to the identity."""
        with pytest.raises(FreenessCheckFailed) as exc_info:
            make_schottky(lam=1.0)
        assert exc_info.value.min_distance == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("lam", [0.0, -2.0])
    def test_nonpositive_lam(self, lam):
        """Test rejection of a nonpositive stretch factor."""
        with pytest.raises(GalleryError, match="positive"):
            make_schottky(lam=lam)

    @pytest.mark.parametrize("lam", [0.5, 2.0, 2.9])
    def test_lam_below_ping_pong_bound(self, lam):
        """Test that a free but weakly separated pair is rejected."""
        with pytest.raises(ValueError, match="ping-pong"):
            make_schottky(lam=lam)

    def test_lam_at_ping_pong_bound(self):
        """Test that lam = 3 is accepted."""
        item = make_schottky(lam=SCHOTTKY_MIN_LAM)
        assert item.expected_tag is DiagnosisTag.ANOSOV
        assert item.group.images[0][0, 0] == pytest.approx(3.0)


class TestDirectSum:
    """Test cases for make_direct_sum."""

    def test_rank_mismatch(self, cusped):
        """Test that factors of different ranks are refused."""
        with pytest.raises(RankMismatch):
            make_direct_sum(cusped, make_trivial(rank=3))

    def test_default_k_and_name(self, cusped, schottky):
        """Test the derived name, k and peripheral union."""
        item = make_direct_sum(cusped, schottky)
        assert item.name == "cusped+schottky"
        assert item.k == 2
        assert item.expected_tag is None


class TestInduced:
    """Test cases for induction from the index-two subgroup."""

    @pytest.fixture
    def induced(self):
        """The registered induced item."""
        return get_item("induced")

    def test_shape(self, induced):
        """Test dimension, blocks and the coset table."""
        assert induced.group.dimension == 4
        assert induced.blocks == (2, 2)
        assert induced.coset_table is not None
        assert induced.coset_table.index == 2

    def test_generators_permute_blocks(self, induced):
        """Test that a swaps the cosets, so its image is not block diagonal."""
        with pytest.raises(NotBlockStructured):
            diagonal_blocks(induced, induced.group.image(Word.parse("a")))

    @pytest.mark.parametrize("word", ["aa", "Ab", "ba", "abAB"])
    def test_subgroup_elements_are_block_diagonal(self, induced, word):
        """Test exact zeros off the diagonal for words in the subgroup."""
        blocks = diagonal_blocks(induced, induced.group.image(Word.parse(word)))
        assert len(blocks) == 2

    def test_identity_coset_block(self, induced):
        """Test that the first diagonal block is the sub-representation."""
        table = induced.coset_table
        lower = np.array([[1.0, 0.0], [2.0, 1.0]])
        sub_rep = MarkedGroup(
            images=(np.array([[1.0, 2.0], [0.0, 1.0]]), lower, lower @ np.diag([3.0, 1 / 3])),
        )
        for text in ("aa", "ba", "Ab", "aabb"):
            word = Word.parse(text)
            block = diagonal_blocks(induced, induced.group.image(word))[0]
            assert np.allclose(block, sub_rep.image(table.rewrite(word)))

    def test_peripheral_blocks(self, induced):
        """Test that Ab gets one parabolic and one hyperbolic block."""
        kinds = peripheral_structure_report(induced)["Ab"]
        assert sorted(kinds, key=lambda kind: kind.value) == [
            BlockKind.HYPERBOLIC,
            BlockKind.PARABOLIC,
        ]

    @settings(deadline=None, max_examples=200)
    @given(words)
    def test_block_pattern_follows_coset_action(self, word):
        """Test that the nonzero blocks of an image are the coset permutation."""
        item = get_item("induced")
        table = item.coset_table
        image = item.group.image(word)
        for i in range(2):
            for j in range(2):
                block = image[2 * j : 2 * j + 2, 2 * i : 2 * i + 2]
                assert bool(np.any(block != 0)) == (table.act(word, i) == j)

    def test_generator_count_mismatch(self):
        """Test that the sub-representation must match the Schreier generators."""
        table = CosetTable.index_two(2, swapping=(1, 2))
        with pytest.raises(GalleryError, match="3"):
            make_induced(MarkedGroup(images=(np.eye(2),)), table)


class TestClassifyBlock:
    """Test cases for classify_block."""

    @pytest.mark.parametrize(
        ("block", "kind"),
        [
            ([[1.0, 1.0], [0.0, 1.0]], BlockKind.PARABOLIC),
            ([[-1.0, 1.0], [0.0, -1.0]], BlockKind.PARABOLIC),
            ([[2.0, 0.0], [0.0, 0.5]], BlockKind.HYPERBOLIC),
            ([[1.0, 0.0], [0.0, 1.0]], BlockKind.OTHER),
            (
                [[math.cos(1.0), -math.sin(1.0)], [math.sin(1.0), math.cos(1.0)]],
                BlockKind.OTHER,
            ),
            ([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]], BlockKind.HYPERBOLIC),
        ],
    )
    def test_kinds(self, block, kind):
        """Test the classification of diagonal blocks."""
        assert classify_block(np.array(block)) is kind
