"""Column pairing: matching surplus columns to deficit columns.

Each unit of surplus in the left-justified companion must migrate to a
deficit column.  Listing surplus indices and deficit indices in ascending
order (with multiplicity) and matching them positionally yields the ordered
pair sequence; consecutive equal pairs collapse into groups, and each group
gets a designated "final" column where the divergent construction will
concentrate its difference.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import groupby

from .core import (
    ConstructionInvariantViolated,
    EmptyAmbiguity,
    Inconsistent,
    NeighbourAnalysis,
    _internal,
)


@dataclass(frozen=True, slots=True)
class ColumnPair:
    """One unit move: a surplus column (source) feeding a deficit column (target).

    For consistent projections the target always lies strictly to the right
    of the source.
    """

    source: int
    target: int

    @property
    def columns(self) -> frozenset[int]:
        return frozenset((self.source, self.target))


@dataclass(frozen=True, slots=True)
class PairGroup:
    """A maximal run of equal column pairs.

    ``position`` is the 1-based rank of the group in the ordered sequence.
    ``final_column`` is filled in by :func:`designate_final_columns`; it is
    one of the pair's two columns and never occurs in any later group.
    """

    pair: ColumnPair
    multiplicity: int
    position: int
    final_column: int | None = None

    @property
    def other_column(self) -> int:
        """The pair column that is not the final one."""
        if self.final_column is None:
            raise ValueError("final column has not been designated")
        if self.final_column == self.pair.target:
            return self.pair.source
        return self.pair.target

    @property
    def final_is_target(self) -> bool:
        if self.final_column is None:
            raise ValueError("final column has not been designated")
        return self.final_column == self.pair.target


@dataclass(frozen=True, slots=True)
class PairAnalysis:
    ordered_pairs: tuple[ColumnPair, ...]
    groups: tuple[PairGroup, ...]
    distinct_columns: frozenset[int]

    @property
    def alpha(self) -> int:
        return len(self.ordered_pairs)

    @property
    def designated(self) -> bool:
        return all(g.final_column is not None for g in self.groups)


def column_pairs(analysis: NeighbourAnalysis) -> tuple[ColumnPair, ...]:
    """Match the t-th surplus column with the t-th deficit column.

    Both lists are ascending with multiplicity, so the pairing is fully
    determined.  Raises EmptyAmbiguity when there is nothing to pair
    (alpha = 0) and Inconsistent if any matched deficit column does not lie
    strictly right of its surplus column, which cannot happen for
    projections that admit an image.
    """
    if analysis.alpha == 0:
        raise EmptyAmbiguity("line sums determine a unique image; no column pairs exist")
    pairs = []
    for source, target in zip(analysis.surplus_cols, analysis.deficit_cols):
        if target <= source:
            raise Inconsistent(
                f"deficit column {target} is not right of surplus column {source}; "
                "the line sums admit no image"
            )
        pairs.append(ColumnPair(source, target))
    return tuple(pairs)


def group_pairs(pairs) -> PairAnalysis:
    """Collapse maximal runs of equal pairs into groups (finals undesignated).

    The input must be the sorted sequence produced by :func:`column_pairs`:
    sources non-decreasing, targets non-decreasing, every target strictly
    right of its source, and no column playing both roles.
    """
    pairs = tuple(pairs)
    if not pairs:
        raise EmptyAmbiguity("cannot group an empty pair sequence")
    _validate_pair_order(pairs)
    groups = []
    for position, (pair, run) in enumerate(groupby(pairs), start=1):
        groups.append(PairGroup(pair, sum(1 for _ in run), position))
    distinct = frozenset(c for p in pairs for c in (p.source, p.target))
    _internal(
        len(distinct) >= len(groups) + 1,
        "every new group introduces a new column, so at least r+1 columns occur",
    )
    return PairAnalysis(pairs, tuple(groups), distinct)


def _validate_pair_order(pairs: tuple[ColumnPair, ...]) -> None:
    sources = {p.source for p in pairs}
    targets = {p.target for p in pairs}
    if sources & targets:
        raise ValueError("a column appears as both source and target")
    for p in pairs:
        if p.target <= p.source:
            raise ValueError(f"pair {p.source}->{p.target} has target not right of source")
    for a, b in zip(pairs, pairs[1:]):
        if b.source < a.source or b.target < a.target:
            raise ValueError("pairs are not in the sorted order produced by column_pairs")


def designate_final_columns(analysis: PairAnalysis) -> PairAnalysis:
    """Choose each group's final column.

    For group h with columns {source, target}:

    1. if one of the columns recurs in group h+1, the other column is final;
    2. otherwise, if one of the columns occurred in group h-1, that column
       is final;
    3. otherwise (both columns confined to this group) the target is final.

    The designation guarantees that a final column never occurs in any later
    group, which the function re-checks before returning.
    """
    groups = analysis.groups
    designated = []
    for idx, group in enumerate(groups):
        prev_cols = groups[idx - 1].pair.columns if idx > 0 else frozenset()
        next_cols = groups[idx + 1].pair.columns if idx + 1 < len(groups) else frozenset()
        source, target = group.pair.source, group.pair.target
        if source in next_cols:
            final = target
        elif target in next_cols:
            final = source
        elif source in prev_cols:
            final = source
        elif target in prev_cols:
            final = target
        else:
            final = target
        designated.append(replace(group, final_column=final))

    for idx, group in enumerate(designated):
        for later in designated[idx + 1:]:
            _internal(
                group.final_column not in later.pair.columns,
                f"final column {group.final_column} of group {group.position} "
                f"reappears in group {later.position}",
            )
    return replace(analysis, groups=tuple(designated))


def analyse_pairs(analysis: NeighbourAnalysis) -> PairAnalysis:
    """Full pipeline: pair columns, group equal pairs, designate finals."""
    return designate_final_columns(group_pairs(column_pairs(analysis)))
