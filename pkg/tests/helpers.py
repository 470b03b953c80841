"""Shared test data and hypothesis strategies.

The demo profile (8 rows, 6 columns, alpha = 4) is the package's running
example; the frozen grids below were derived by hand from the pair
analysis and double-checked against the enumeration oracle.
"""

from hypothesis import strategies as st

from tomodiff import canonicalize

DEMO_ROWS = (5, 5, 5, 4, 4, 2, 1, 1)
DEMO_COLS = (6, 6, 6, 3, 3, 3)
DEMO_NEIGHBOUR_SUMS = (8, 6, 5, 5, 3, 0)
DEMO_ALPHA = 4

DEMO_F1_TEXT = """\
#####.
#####.
#####.
####..
####..
##....
#.....
#....."""

# F1 after moving the row-8 cell from column 1 to column 3.
DEMO_AFTER_STEP_TEXT = """\
#####.
#####.
#####.
####..
####..
##....
#.....
..#..."""

# Free construction with rows 7, 1, 2, 3 pinned for the four pairs.
DEMO_F2_TEXT = """\
.#####
###.##
###.##
####..
####..
##....
..#...
#....."""

# Steered construction against the pinned F2, with candidate windows
# {7, 8} and {1, 4} pinned for the first two batches.
DEMO_F3_TEXT = """\
###.##
#####.
#####.
.###.#
###..#
##....
#.....
..#..."""


@st.composite
def consistent_profiles(draw, min_side=2, max_side=5):
    """Profiles read off a random bit grid, hence consistent by construction."""
    m = draw(st.integers(min_side, max_side))
    n = draw(st.integers(min_side, max_side))
    bits = draw(
        st.lists(
            st.lists(st.integers(0, 1), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    rows = [sum(row) for row in bits]
    cols = [sum(row[j] for row in bits) for j in range(n)]
    return canonicalize(rows, cols)


@st.composite
def raw_sum_vectors(draw, max_len=6, max_value=6):
    """Arbitrary non-negative integer vectors (not necessarily consistent)."""
    return draw(st.lists(st.integers(0, max_value), min_size=0, max_size=max_len))
