"""Fundamental types and projection arithmetic for binary images.

A binary image is an m x n grid of 0/1 cells; its projections are the row
sums and column sums.  This module provides canonicalization of a pair of
projection vectors, the Gale-Ryser consistency test, the column sums of the
left-justified companion image, the ambiguity parameter derived from them,
and exact cellwise comparison of two images.

Index conventions
-----------------
All row and column indices that appear in public records, method arguments
and rendered output are 1-based, matching matrix notation (row indices grow
downward, column indices grow rightward).  The raw ``grid`` attribute of
:class:`BinaryImage` is an ordinary tuple of tuples and is therefore
0-indexed like any Python sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple


class TomographyError(Exception):
    """Base class for all domain errors raised by this package."""


class Inconsistent(TomographyError):
    """The given projections cannot all belong to one binary image."""


class NotAmbiguous(TomographyError):
    """The projections determine a unique image; no divergent pair exists."""


class EmptyAmbiguity(NotAmbiguous):
    """Column pairing was requested for projections with zero ambiguity."""


class IllegalMove(TomographyError):
    """A cell move whose source is empty or whose target is occupied."""


class TruncatedEnumeration(TomographyError):
    """An operation that needs an exhaustive solution list got a capped one."""


class ConstructionInvariantViolated(TomographyError):
    """An internal guarantee of the construction failed; indicates a bug."""


def _internal(condition: bool, message: str) -> None:
    # Guards facts the theory promises; a failure here is a defect, not bad input.
    if not condition:
        raise ConstructionInvariantViolated(message)


# ---------------------------------------------------------------------------
# Projection profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ProjectionProfile:
    """Canonicalized row/column sums with the reordering that produced them.

    ``row_sums`` and ``col_sums`` hold only the nonzero sums, sorted in
    descending order.  ``row_perm`` / ``col_perm`` map each canonical
    position (1-based) to the index the entry had in the caller's input;
    zero sums keep their slot at the tail of the permutation so the
    original layout can be restored.  Build instances via
    :func:`canonicalize`.
    """

    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    @property
    def m(self) -> int:
        """Number of nonzero rows."""
        return len(self.row_sums)

    @property
    def n(self) -> int:
        """Number of nonzero columns."""
        return len(self.col_sums)

    @property
    def original_m(self) -> int:
        return len(self.row_perm)

    @property
    def original_n(self) -> int:
        return len(self.col_perm)

    @property
    def mass(self) -> int:
        """Total number of filled cells implied by the row sums."""
        return sum(self.row_sums)

    def original_rows(self) -> tuple[int, ...]:
        """The row sums exactly as the caller supplied them."""
        return self.restore_rows(self.row_sums)

    def original_cols(self) -> tuple[int, ...]:
        return self.restore_cols(self.col_sums)

    def restore_rows(self, values: tuple[int, ...], fill: int = 0) -> tuple[int, ...]:
        """Scatter per-canonical-row values back into the original row order."""
        if len(values) != self.m:
            raise ValueError(f"expected {self.m} values, got {len(values)}")
        out = [fill] * self.original_m
        for pos, value in enumerate(values):
            out[self.row_perm[pos] - 1] = value
        return tuple(out)

    def restore_cols(self, values: tuple[int, ...], fill: int = 0) -> tuple[int, ...]:
        """Scatter per-canonical-column values back into the original column order."""
        if len(values) != self.n:
            raise ValueError(f"expected {self.n} values, got {len(values)}")
        out = [fill] * self.original_n
        for pos, value in enumerate(values):
            out[self.col_perm[pos] - 1] = value
        return tuple(out)

    def restore_image(self, image: BinaryImage) -> BinaryImage:
        """Re-embed a canonical-order image into the caller's original layout.

        Rows and columns that were stripped as all-zero reappear empty.
        """
        if image.height != self.m or image.width != self.n:
            raise ValueError(
                f"image is {image.height}x{image.width}, profile is {self.m}x{self.n}"
            )
        out = [[0] * self.original_n for _ in range(self.original_m)]
        for r in range(self.m):
            orig_r = self.row_perm[r] - 1
            row = image.grid[r]
            for c in range(self.n):
                if row[c]:
                    out[orig_r][self.col_perm[c] - 1] = 1
        return BinaryImage(tuple(tuple(row) for row in out))


def _canonical_order(values: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    sorted_vals = [values[i] for i in order]
    nonzero = tuple(v for v in sorted_vals if v > 0)
    perm = tuple(i + 1 for i in order)
    return nonzero, perm


def canonicalize(raw_rows, raw_cols) -> ProjectionProfile:
    """Sort both projection vectors into descending order, recording the shuffle.

    Entries must be non-negative integers.  Zero sums are kept in the
    permutations (so output can be mapped back) but dropped from the
    canonical vectors themselves.
    """
    rows = _validated_sums(raw_rows, "row")
    cols = _validated_sums(raw_cols, "column")
    row_sums, row_perm = _canonical_order(rows)
    col_sums, col_perm = _canonical_order(cols)
    return ProjectionProfile(row_sums, col_sums, row_perm, col_perm)


def _validated_sums(values, kind: str) -> list[int]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"{kind} sums must be integers, got {v!r}")
        if v < 0:
            raise ValueError(f"{kind} sums must be non-negative, got {v}")
        out.append(v)
    return out


def is_consistent(profile: ProjectionProfile) -> bool:
    """Whether at least one binary image has these row and column sums.

    Uses the dominance criterion: the masses must agree, and every prefix
    of the descending column sums must be covered by the rows' capacity
    for that many columns.
    """
    rows = profile.row_sums
    cols = profile.col_sums
    if sum(rows) != sum(cols):
        return False
    prefix = 0
    for k in range(1, len(cols) + 1):
        prefix += cols[k - 1]
        if prefix > sum(min(r, k) for r in rows):
            return False
    return True


# ---------------------------------------------------------------------------
# Binary images
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BinaryImage:
    """An immutable m x n grid of 0/1 cells.

    The grid is the single source of truth; row and column sums are always
    recomputed from it.
    """

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.grid}
        if len(widths) > 1:
            raise ValueError("grid rows have unequal lengths")
        for row in self.grid:
            for cell in row:
                if cell not in (0, 1):
                    raise ValueError(f"grid cells must be 0 or 1, got {cell!r}")

    @property
    def height(self) -> int:
        return len(self.grid)

    @property
    def width(self) -> int:
        return len(self.grid[0]) if self.grid else 0

    @property
    def mass(self) -> int:
        """Number of filled cells."""
        return sum(sum(row) for row in self.grid)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.grid)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(row[c] for row in self.grid) for c in range(self.width))

    def filled(self, row: int, col: int) -> bool:
        """Whether cell (row, col) is set; both indices 1-based."""
        if not (1 <= row <= self.height and 1 <= col <= self.width):
            raise ValueError(f"cell ({row}, {col}) outside {self.height}x{self.width} grid")
        return self.grid[row - 1][col - 1] == 1

    def move(self, row: int, source: int, target: int) -> BinaryImage:
        """Shift one filled cell along its row from ``source`` to ``target``.

        Raises IllegalMove unless the source cell is filled and the target
        cell is empty.
        """
        if not self.filled(row, source):
            raise IllegalMove(f"source cell ({row}, {source}) is empty")
        if self.filled(row, target):
            raise IllegalMove(f"target cell ({row}, {target}) is already filled")
        cells = [list(r) for r in self.grid]
        cells[row - 1][source - 1] = 0
        cells[row - 1][target - 1] = 1
        return BinaryImage(tuple(tuple(r) for r in cells))

    def to_text(self) -> str:
        """Render as one line per row, ``#`` for filled and ``.`` for empty."""
        return "\n".join("".join("#" if c else "." for c in row) for row in self.grid)

    @classmethod
    def from_text(cls, text: str) -> BinaryImage:
        """Parse the ``#``/``.`` grid format produced by :meth:`to_text`."""
        lines = [line for line in text.splitlines() if line.strip() != ""]
        rows = []
        for line in lines:
            row = []
            for ch in line.strip():
                if ch == "#":
                    row.append(1)
                elif ch == ".":
                    row.append(0)
                else:
                    raise ValueError(f"unexpected character {ch!r} in grid text")
            rows.append(tuple(row))
        return cls(tuple(rows))

    def to_pbm(self) -> str:
        """Render as an ASCII PBM (P1) document."""
        body = "\n".join(" ".join(str(c) for c in row) for row in self.grid)
        header = f"P1\n{self.width} {self.height}\n"
        return header + body + ("\n" if body else "")


# ---------------------------------------------------------------------------
# The left-justified companion and the ambiguity parameter
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NeighbourAnalysis:
    """Column sums of the left-justified companion image, and their gap to C.

    ``column_sums`` is non-increasing.  ``alpha`` is half the L1 distance
    between it and the given column sums: the number of unit moves needed
    to turn one into the other.  ``surplus_cols`` lists the columns where
    the companion exceeds the target (each index repeated by its excess),
    ``deficit_cols`` the columns that still need mass; both are ascending
    and both have exactly ``alpha`` entries.
    """

    column_sums: tuple[int, ...]
    alpha: int
    surplus_cols: tuple[int, ...]
    deficit_cols: tuple[int, ...]


def neighbour_column_sums(profile: ProjectionProfile) -> NeighbourAnalysis:
    """Count, per column index j, the rows whose sum reaches j, and compare to C.

    The resulting vector is exactly the column-sum vector of the
    left-justified image built from the row sums.  Raises Inconsistent when
    the profile fails the cheap mass checks (unequal totals, a row longer
    than the column count, a column taller than the row count) because the
    ambiguity accounting is meaningless there.
    """
    rows = profile.row_sums
    cols = profile.col_sums
    n = profile.n
    if sum(rows) != sum(cols):
        raise Inconsistent("row sums and column sums have different totals")
    if any(r > n for r in rows):
        raise Inconsistent("a row sum exceeds the number of nonzero columns")
    if any(c > profile.m for c in cols):
        raise Inconsistent("a column sum exceeds the number of nonzero rows")
    values = tuple(sum(1 for r in rows if r >= j) for j in range(1, n + 1))
    gap = sum(abs(c - v) for c, v in zip(cols, values))
    _internal(gap % 2 == 0, "total projection gap must be even")
    surplus = []
    deficit = []
    for j in range(1, n + 1):
        v, c = values[j - 1], cols[j - 1]
        if v > c:
            surplus.extend([j] * (v - c))
        elif c > v:
            deficit.extend([j] * (c - v))
    alpha = gap // 2
    _internal(len(surplus) == alpha and len(deficit) == alpha,
              "surplus and deficit masses must both equal alpha")
    return NeighbourAnalysis(values, alpha, tuple(surplus), tuple(deficit))


def build_neighbour(profile: ProjectionProfile) -> BinaryImage:
    """Build the left-justified image: row i is filled in columns 1..r_i.

    This is the unique image whose row sums are R and whose column sums are
    the vector computed by :func:`neighbour_column_sums`.
    """
    n = profile.n
    if any(r > n for r in profile.row_sums):
        raise Inconsistent("a row sum exceeds the number of nonzero columns")
    grid = tuple(tuple(1 if c < r else 0 for c in range(n)) for r in profile.row_sums)
    return BinaryImage(grid)


# ---------------------------------------------------------------------------
# Symmetric difference
# ---------------------------------------------------------------------------


Side = Literal["first", "second"]


class DiffCell(NamedTuple):
    row: int
    col: int
    side: Side


@dataclass(frozen=True, slots=True)
class SymmetricDifference:
    """Cells on which two images disagree.

    ``side`` is ``"first"`` for cells filled only in the first image and
    ``"second"`` for cells filled only in the second.  When both images
    share all line sums the two sides have equal counts, so ``size`` is even.
    """

    size: int
    cells: tuple[DiffCell, ...]


def symmetric_difference(a: BinaryImage, b: BinaryImage) -> SymmetricDifference:
    """List every cell where the two images differ (cellwise XOR)."""
    if a.height != b.height or a.width != b.width:
        raise ValueError(
            f"images have different dimensions: "
            f"{a.height}x{a.width} vs {b.height}x{b.width}"
        )
    cells = []
    for r in range(a.height):
        row_a, row_b = a.grid[r], b.grid[r]
        for c in range(a.width):
            if row_a[c] != row_b[c]:
                side: Side = "first" if row_a[c] else "second"
                cells.append(DiffCell(r + 1, c + 1, side))
    return SymmetricDifference(len(cells), tuple(cells))
