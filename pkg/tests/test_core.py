"""Canonicalization, consistency, companion column sums, images and diffs."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomodiff import (
    BinaryImage,
    IllegalMove,
    Inconsistent,
    build_neighbour,
    canonicalize,
    is_consistent,
    neighbour_column_sums,
    symmetric_difference,
)

from helpers import (
    DEMO_ALPHA,
    DEMO_COLS,
    DEMO_F1_TEXT,
    DEMO_F2_TEXT,
    DEMO_F3_TEXT,
    DEMO_NEIGHBOUR_SUMS,
    DEMO_ROWS,
    consistent_profiles,
    raw_sum_vectors,
)


# ---------------------------------------------------------------------------
# canonicalize
# ---------------------------------------------------------------------------


def test_canonicalize_sorts_descending_and_records_perm():
    p = canonicalize([1, 5, 3], [3, 3, 3])
    assert p.row_sums == (5, 3, 1)
    assert p.row_perm == (2, 3, 1)
    assert p.col_sums == (3, 3, 3)
    assert p.col_perm == (1, 2, 3)


def test_canonicalize_keeps_sorted_input_unchanged():
    p = canonicalize(DEMO_ROWS, DEMO_COLS)
    assert p.row_sums == DEMO_ROWS
    assert p.col_sums == DEMO_COLS
    assert p.row_perm == tuple(range(1, 9))
    assert p.col_perm == tuple(range(1, 7))


def test_canonicalize_strips_zero_sums_but_remembers_them():
    p = canonicalize([0, 2], [1, 1])
    assert p.row_sums == (2,)
    assert p.m == 1
    assert p.original_m == 2
    assert p.row_perm == (2, 1)
    assert p.original_rows() == (0, 2)


@pytest.mark.parametrize("bad", [[-1], [1.5], ["2"], [True]])
def test_canonicalize_rejects_non_natural_entries(bad):
    with pytest.raises(ValueError):
        canonicalize(bad, [1])


@given(raw_sum_vectors(), raw_sum_vectors())
def test_canonicalize_is_a_pure_reordering(rows, cols):
    p = canonicalize(rows, cols)
    assert list(p.row_sums) == sorted((r for r in rows if r > 0), reverse=True)
    assert sorted(p.row_perm) == list(range(1, len(rows) + 1))
    assert sorted(p.col_perm) == list(range(1, len(cols) + 1))
    assert p.original_rows() == tuple(rows)
    assert p.original_cols() == tuple(cols)


# ---------------------------------------------------------------------------
# is_consistent
# ---------------------------------------------------------------------------


def test_demo_profile_is_consistent():
    assert is_consistent(canonicalize(DEMO_ROWS, DEMO_COLS))


def test_mass_mismatch_is_inconsistent():
    assert not is_consistent(canonicalize([2], [1]))


def test_small_consistent_example():
    assert is_consistent(canonicalize([2, 2], [2, 1, 1]))


def test_dominance_failure_is_inconsistent():
    # Equal masses and in-range entries, but the three tallest columns
    # demand 9 cells while the rows can cover at most 8 of them.
    assert not is_consistent(canonicalize([4, 4, 2], [3, 3, 3, 1]))


def test_empty_profile_is_consistent():
    assert is_consistent(canonicalize([0], []))


@given(raw_sum_vectors(), raw_sum_vectors())
def test_consistency_equals_prefix_domination_by_neighbour_sums(rows, cols):
    # The rows' capacity for k columns equals the k-th prefix sum of the
    # companion column-sum vector, so the two test formulations must agree.
    p = canonicalize(rows, cols)
    values = [sum(1 for r in p.row_sums if r >= j) for j in range(1, p.n + 1)]
    prefix_form = sum(p.row_sums) == sum(p.col_sums) and all(
        sum(p.col_sums[:k]) <= sum(values[:k]) for k in range(1, p.n + 1)
    )
    if any(r > p.n for r in p.row_sums):
        # Rows longer than the grid can never be consistent; the prefix
        # form over truncated values does not see that by itself.
        assert not is_consistent(p) or sum(p.row_sums) == sum(values)
    else:
        assert is_consistent(p) == prefix_form


# ---------------------------------------------------------------------------
# neighbour_column_sums
# ---------------------------------------------------------------------------


def test_demo_neighbour_sums_and_alpha():
    na = neighbour_column_sums(canonicalize(DEMO_ROWS, DEMO_COLS))
    assert na.column_sums == DEMO_NEIGHBOUR_SUMS
    assert na.alpha == DEMO_ALPHA
    assert na.surplus_cols == (1, 1, 4, 4)
    assert na.deficit_cols == (3, 6, 6, 6)


def test_two_by_two_all_ones_has_alpha_one():
    na = neighbour_column_sums(canonicalize([1, 1], [1, 1]))
    assert na.column_sums == (2, 0)
    assert na.alpha == 1


def test_already_left_justified_profile_has_alpha_zero():
    na = neighbour_column_sums(canonicalize([3, 2], [2, 2, 1]))
    assert na.column_sums == (2, 2, 1)
    assert na.alpha == 0
    assert na.surplus_cols == () and na.deficit_cols == ()


@pytest.mark.parametrize(
    "rows, cols",
    [
        ([2], [1]),          # unequal masses
        ([3], [2, 1]),       # row longer than the column count
        ([2, 2], [3, 1]),    # column taller than the row count
    ],
)
def test_neighbour_sums_reject_mass_level_inconsistency(rows, cols):
    with pytest.raises(Inconsistent):
        neighbour_column_sums(canonicalize(rows, cols))


@given(consistent_profiles())
@settings(max_examples=80)
def test_neighbour_invariants_on_consistent_profiles(profile):
    na = neighbour_column_sums(profile)
    assert all(a >= b for a, b in zip(na.column_sums, na.column_sums[1:]))
    assert sum(na.column_sums) == profile.mass
    assert sum(abs(c - v) for c, v in zip(profile.col_sums, na.column_sums)) == 2 * na.alpha
    assert len(na.surplus_cols) == len(na.deficit_cols) == na.alpha
    assert (na.alpha == 0) == (na.column_sums == profile.col_sums)


@given(consistent_profiles(), st.integers(1, 3))
@settings(max_examples=40)
def test_zero_column_padding_does_not_change_alpha(profile, pad):
    padded = canonicalize(profile.original_rows(), profile.original_cols() + (0,) * pad)
    assert padded.col_sums == profile.col_sums
    assert neighbour_column_sums(padded).alpha == neighbour_column_sums(profile).alpha


# ---------------------------------------------------------------------------
# build_neighbour
# ---------------------------------------------------------------------------


def test_demo_neighbour_image_matches_frozen_grid():
    p = canonicalize(DEMO_ROWS, DEMO_COLS)
    image = build_neighbour(p)
    assert image.to_text() == DEMO_F1_TEXT
    assert image.col_sums() == DEMO_NEIGHBOUR_SUMS


def test_neighbour_image_of_two_unit_rows_stacks_in_first_column():
    image = build_neighbour(canonicalize([1, 1], [1, 1]))
    assert image.grid == ((1, 0), (1, 0))


def test_neighbour_image_left_justifies_each_row():
    image = build_neighbour(canonicalize([3, 1], [2, 1, 1]))
    assert image.grid == ((1, 1, 1), (1, 0, 0))
    assert image.col_sums() == (2, 1, 1)


@given(consistent_profiles())
@settings(max_examples=60)
def test_neighbour_image_has_row_sums_r_and_column_sums_v(profile):
    image = build_neighbour(profile)
    assert image.row_sums() == profile.row_sums
    assert image.col_sums() == neighbour_column_sums(profile).column_sums


# ---------------------------------------------------------------------------
# symmetric_difference
# ---------------------------------------------------------------------------


def test_identical_images_have_empty_difference():
    img = BinaryImage.from_text(DEMO_F1_TEXT)
    diff = symmetric_difference(img, img)
    assert diff.size == 0 and diff.cells == ()


def test_disjoint_permutation_matrices_differ_everywhere():
    a = BinaryImage(((1, 0), (0, 1)))
    b = BinaryImage(((0, 1), (1, 0)))
    diff = symmetric_difference(a, b)
    assert diff.size == 4
    sides = [cell.side for cell in diff.cells]
    assert sides.count("first") == sides.count("second") == 2


def test_dimension_mismatch_is_rejected():
    with pytest.raises(ValueError):
        symmetric_difference(BinaryImage(((1,),)), BinaryImage(((1, 0),)))


def test_demo_constructed_pair_differs_in_fourteen_cells():
    diff = symmetric_difference(
        BinaryImage.from_text(DEMO_F2_TEXT), BinaryImage.from_text(DEMO_F3_TEXT)
    )
    assert diff.size == 14


# ---------------------------------------------------------------------------
# BinaryImage mechanics
# ---------------------------------------------------------------------------


def test_text_round_trip():
    img = BinaryImage.from_text(DEMO_F2_TEXT)
    assert BinaryImage.from_text(img.to_text()) == img


def test_from_text_rejects_unknown_characters():
    with pytest.raises(ValueError):
        BinaryImage.from_text("#x\n..")


def test_pbm_header_and_body():
    img = BinaryImage(((1, 0, 1), (0, 1, 0)))
    assert img.to_pbm() == "P1\n3 2\n1 0 1\n0 1 0\n"


def test_move_flips_exactly_two_cells():
    img = BinaryImage(((1, 0), (1, 1)))
    moved = img.move(1, 1, 2)
    assert moved.grid == ((0, 1), (1, 1))
    assert moved.mass == img.mass
    assert moved.row_sums() == img.row_sums()


def test_move_requires_filled_source_and_empty_target():
    img = BinaryImage(((1, 0), (1, 1)))
    with pytest.raises(IllegalMove):
        img.move(1, 2, 1)
    with pytest.raises(IllegalMove):
        img.move(2, 1, 2)


def test_grid_must_be_rectangular_binary():
    with pytest.raises(ValueError):
        BinaryImage(((1, 0), (1,)))
    with pytest.raises(ValueError):
        BinaryImage(((2, 0),))


# ---------------------------------------------------------------------------
# original-order restoration
# ---------------------------------------------------------------------------


def test_restore_image_reinstates_zero_lines_and_order():
    p = canonicalize([0, 2, 1], [1, 0, 2])
    # canonical: rows (2, 1) at original positions 2, 3; cols (2, 1) at 3, 1
    canonical = BinaryImage(((1, 1), (1, 0)))
    restored = p.restore_image(canonical)
    assert restored.height == 3 and restored.width == 3
    assert restored.row_sums() == (0, 2, 1)
    assert restored.col_sums() == (1, 0, 2)


def test_restore_image_checks_dimensions(demo_profile):
    with pytest.raises(ValueError):
        demo_profile.restore_image(BinaryImage(((1,),)))
