# SPDX-License-Identifier: CC-BY-SA-4.0

"""Worked representations with expected diagnoses."""

from relanosov_lab.gallery.items import (
    GALLERY,
    SCHOTTKY_MIN_LAM,
    BlockKind,
    FreenessCheckFailed,
    GalleryError,
    GalleryItem,
    NotBlockStructured,
    RankMismatch,
    check_freeness,
    classify_block,
    diagonal_blocks,
    get_item,
    list_items,
    make_cusped_free_group,
    make_direct_sum,
    make_induced,
    make_schottky,
    make_trivial,
    peripheral_structure_report,
)

__all__ = [
    "GALLERY",
    "SCHOTTKY_MIN_LAM",
    "BlockKind",
    "FreenessCheckFailed",
    "GalleryError",
    "GalleryItem",
    "NotBlockStructured",
    "RankMismatch",
    "check_freeness",
    "classify_block",
    "diagonal_blocks",
    "get_item",
    "list_items",
    "make_cusped_free_group",
    "make_direct_sum",
    "make_induced",
    "make_schottky",
    "make_trivial",
    "peripheral_structure_report",
]
