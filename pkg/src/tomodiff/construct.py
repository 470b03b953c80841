"""Construction of two solutions whose symmetric difference is at least 2*alpha + 2.

Both solutions start from the left-justified image and move one filled cell
per column pair from the pair's source column to its target column, staying
inside a single row.  The first solution moves pairs one at a time in
freely chosen rows.  The second processes every group of equal pairs as one
batch and steers its row choices against the first solution, forcing at
least 2k disagreements in the group's final column and two more in some
non-final column.
"""

from __future__ import annotations

import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Literal

from .core import (
    BinaryImage,
    Inconsistent,
    NotAmbiguous,
    ProjectionProfile,
    SymmetricDifference,
    _internal,
    build_neighbour,
    is_consistent,
    neighbour_column_sums,
    symmetric_difference,
)
from .pairs import PairAnalysis, PairGroup, analyse_pairs


@dataclass(frozen=True, slots=True)
class RowChoicePolicy:
    """Resolves the free row choices left open by the construction.

    Unpinned choices fall back to a seeded uniform draw when ``seed`` is
    set, and to the smallest admissible row index otherwise.

    f2_rows:      for the free construction, the row to use at each step
                  (one entry per column pair, in order).
    f3_windows:   for the batched construction, the candidate window R to
                  use for a given batch position (must be 2k rows drawn
                  from the admissible candidates).
    """

    f2_rows: tuple[int, ...] | None = None
    f3_windows: Mapping[int, tuple[int, ...]] | None = None
    seed: int | None = None

    def pick_row(self, step: int, legal: Sequence[int], rng: random.Random | None) -> int:
        if self.f2_rows is not None:
            if step > len(self.f2_rows):
                raise ValueError(f"policy pins {len(self.f2_rows)} rows but step {step} was reached")
            row = self.f2_rows[step - 1]
            if row not in legal:
                raise ValueError(f"pinned row {row} is not legal at step {step} (legal: {sorted(legal)})")
            return row
        if rng is not None:
            return rng.choice(list(legal))
        return min(legal)

    def pick_window(
        self, batch: int, candidates: Sequence[int], size: int, rng: random.Random | None
    ) -> tuple[int, ...]:
        if self.f3_windows is not None and batch in self.f3_windows:
            window = tuple(sorted(self.f3_windows[batch]))
            if len(window) != size or len(set(window)) != size:
                raise ValueError(f"pinned window for batch {batch} must hold {size} distinct rows")
            if not set(window) <= set(candidates):
                raise ValueError(
                    f"pinned window for batch {batch} is not a subset of the "
                    f"candidate rows {sorted(candidates)}"
                )
            return window
        if rng is not None:
            return tuple(sorted(rng.sample(list(candidates), size)))
        return tuple(sorted(candidates)[:size])

    def _rng(self) -> random.Random | None:
        return random.Random(self.seed) if self.seed is not None else None


DEFAULT_POLICY = RowChoicePolicy()


@dataclass(frozen=True, slots=True)
class MoveRecord:
    """One applied cell move; ``batch`` is the step (free construction)
    or group position (batched construction) it belongs to."""

    row: int
    source: int
    target: int
    batch: int


Case = Literal["case1", "case2"]
Condition = Literal["A", "B"]


@dataclass(frozen=True, slots=True)
class BatchContext:
    """Audit record of one batch of the steered construction.

    ``candidate_rows`` is the window R of exactly 2k rows able to host a
    move.  ``case`` tells which side of the membership dichotomy fired,
    ``condition`` whether the non-final column recurs in the adjacent group
    ("A") or is confined to this one ("B"), and ``mirrored`` whether the
    final column is the source (the membership tests then flip).  In case 2
    ``r_prime`` holds the k+1 blocked rows and ``l0`` the specially chosen
    member of it; both are None in case 1.  ``moved_rows`` are the k rows
    actually moved.
    """

    group: PairGroup
    candidate_rows: tuple[int, ...]
    case: Case
    condition: Condition
    mirrored: bool
    moved_rows: tuple[int, ...]
    r_prime: tuple[int, ...] | None = None
    l0: int | None = None


@dataclass(frozen=True, slots=True)
class ConstructionTrace:
    """Every choice both constructions made, plus per-column difference counts.

    ``column_diffs`` maps each column that occurs in a pair to the number of
    cells in which the two finished solutions disagree within that column.
    """

    batches: tuple[BatchContext, ...]
    f3_moves: tuple[MoveRecord, ...]
    column_diffs: dict[int, int]
    f2_moves: tuple[MoveRecord, ...] = field(default_factory=tuple)


@dataclass(frozen=True, slots=True)
class DivergentPair:
    """Two solutions of the same projections with a certified minimum difference."""

    f2: BinaryImage
    f3: BinaryImage
    diff: SymmetricDifference
    alpha: int
    guarantee: int
    trace: ConstructionTrace


def apply_move(image: BinaryImage, move: MoveRecord) -> BinaryImage:
    """Apply one recorded move, returning the new image.

    Raises IllegalMove unless the source cell is filled and the target cell
    empty; row sums never change, the source column loses one and the
    target column gains one.
    """
    return image.move(move.row, move.source, move.target)


def _legal_rows(image: BinaryImage, source: int, target: int) -> list[int]:
    return [
        row
        for row in range(1, image.height + 1)
        if image.filled(row, source) and not image.filled(row, target)
    ]


def _construct_f2(
    profile: ProjectionProfile,
    analysis: PairAnalysis,
    policy: RowChoicePolicy,
) -> tuple[BinaryImage, tuple[MoveRecord, ...]]:
    if not analysis.ordered_pairs:
        raise NotAmbiguous("line sums determine a unique image")
    rng = policy._rng()
    image = build_neighbour(profile)
    moves = []
    for step, pair in enumerate(analysis.ordered_pairs, start=1):
        legal = _legal_rows(image, pair.source, pair.target)
        _internal(
            len(legal) >= 2,
            f"step {step}: fewer than two rows can host the move "
            f"{pair.source}->{pair.target}",
        )
        row = policy.pick_row(step, legal, rng)
        move = MoveRecord(row, pair.source, pair.target, step)
        image = apply_move(image, move)
        moves.append(move)
    _check_line_sums(image, profile, "free construction")
    return image, tuple(moves)


def construct_f2(
    profile: ProjectionProfile,
    analysis: PairAnalysis,
    policy: RowChoicePolicy | None = None,
) -> BinaryImage:
    """Build the first solution, one pair at a time in policy-chosen rows.

    At every step at least two rows can host the move, so the policy always
    has a real choice; the result carries exactly the requested line sums.
    """
    image, _ = _construct_f2(profile, analysis, policy or DEFAULT_POLICY)
    return image


def construct_f3(
    profile: ProjectionProfile,
    analysis: PairAnalysis,
    f2: BinaryImage,
    policy: RowChoicePolicy | None = None,
) -> tuple[BinaryImage, ConstructionTrace]:
    """Build the second solution, steering each batch against ``f2``.

    Groups of equal pairs are processed in order.  For a group with
    multiplicity k, final column phi and other column psi:

    * exactly 2k candidate rows R are selected (filled at the source, empty
      at the target);
    * case 1: if k rows of R would create a disagreement with ``f2`` at
      their phi cell, move in k of those rows;
    * case 2: otherwise at least k+1 rows of R agree with ``f2`` at phi;
      take R' = k+1 of them, pick l0 in R' (under condition "B" pick one
      whose psi cell will also disagree; one always exists), and move in
      {l0} plus the k-1 rows of R outside R'.  The k unmoved rows of R'
      then all disagree with ``f2`` in column phi.

    Either way column phi ends with at least 2k disagreements, and under
    condition "B" column psi ends with at least 2.

    Returns the finished image and a trace whose batch records carry every
    set and choice named above (``f2_moves`` is left empty; see
    :func:`diverge`).
    """
    if not analysis.ordered_pairs:
        raise NotAmbiguous("line sums determine a unique image")
    if not analysis.designated:
        raise ValueError("pair analysis has no final columns; run designate_final_columns")
    policy = policy or DEFAULT_POLICY
    rng = policy._rng()
    n = profile.n
    image = build_neighbour(profile)
    if f2.height != image.height or f2.width != image.width:
        raise ValueError("f2 does not match the profile's canonical dimensions")

    batches = []
    moves = []
    groups = analysis.groups
    for group in groups:
        k = group.multiplicity
        source, target = group.pair.source, group.pair.target
        mirrored = not group.final_is_target
        final = group.final_column
        assert final is not None

        col_sums = image.col_sums()
        _internal(
            col_sums[source - 1] >= col_sums[target - 1] + 2 * k,
            f"batch {group.position}: source column {source} must exceed target "
            f"column {target} by at least {2 * k}",
        )
        candidates = _legal_rows(image, source, target)
        _internal(
            len(candidates) >= 2 * k,
            f"batch {group.position}: need {2 * k} candidate rows, found {len(candidates)}",
        )
        window = policy.pick_window(group.position, candidates, 2 * k, rng)

        condition = _condition(groups, group.position, n, mirrored)

        # Membership dichotomy on the final column.  "Breaking" rows create a
        # disagreement with f2 at their final-column cell as soon as they move
        # (target final: cell gets filled, f2 lacks it; source final: cell gets
        # emptied, f2 keeps it).  |R| = 2k makes exactly one case apply.
        if mirrored:
            breaking = [l for l in window if f2.filled(l, final)]
            blocked = [l for l in window if not f2.filled(l, final)]
        else:
            breaking = [l for l in window if not f2.filled(l, final)]
            blocked = [l for l in window if f2.filled(l, final)]

        r_prime: tuple[int, ...] | None = None
        l0: int | None = None
        if len(breaking) >= k:
            case: Case = "case1"
            moved = tuple(breaking[:k])
        else:
            case = "case2"
            _internal(
                len(blocked) >= k + 1,
                f"batch {group.position}: neither case applies with {len(breaking)} "
                f"breaking and {len(blocked)} blocked rows",
            )
            r_prime = tuple(blocked[: k + 1])
            if condition == "B":
                other = group.other_column
                if mirrored:
                    wanted = [l for l in r_prime if not f2.filled(l, other)]
                else:
                    wanted = [l for l in r_prime if f2.filled(l, other)]
                _internal(
                    bool(wanted),
                    f"batch {group.position}: no admissible l0 in R' under condition B",
                )
                l0 = wanted[0]
            else:
                l0 = r_prime[0]
            remainder = [l for l in window if l not in r_prime]
            _internal(
                len(remainder) == k - 1,
                f"batch {group.position}: window minus R' must leave k-1 rows",
            )
            moved = tuple(sorted([l0] + remainder))

        for row in moved:
            move = MoveRecord(row, source, target, group.position)
            image = apply_move(image, move)
            moves.append(move)
        batches.append(
            BatchContext(
                group=group,
                candidate_rows=window,
                case=case,
                condition=condition,
                mirrored=mirrored,
                moved_rows=moved,
                r_prime=r_prime,
                l0=l0,
            )
        )

    _check_line_sums(image, profile, "batched construction")
    column_diffs = {
        col: sum(
            1
            for row in range(1, image.height + 1)
            if f2.filled(row, col) != image.filled(row, col)
        )
        for col in sorted(analysis.distinct_columns)
    }
    trace = ConstructionTrace(tuple(batches), tuple(moves), column_diffs)
    return image, trace


def _condition(groups: tuple[PairGroup, ...], position: int, n: int, mirrored: bool) -> Condition:
    """Classify the non-final column: recurs in the adjacent group (A) or not (B).

    Sources ascend and targets ascend across the ordered pair sequence, so a
    column's occurrences always form a run of adjacent groups; checking the
    two neighbouring groups (with out-of-range sentinels 0 and n+1 standing
    in at the ends) decides whether the non-final column leaks out of this
    group at all.
    """
    idx = position - 1
    group = groups[idx]
    if mirrored:
        own = group.pair.target
        prev = groups[idx - 1].pair.target if idx > 0 else 0
        nxt = groups[idx + 1].pair.target if idx + 1 < len(groups) else n + 1
    else:
        own = group.pair.source
        prev = groups[idx - 1].pair.source if idx > 0 else 0
        nxt = groups[idx + 1].pair.source if idx + 1 < len(groups) else n + 1
    if nxt == own:
        return "A"
    _internal(
        prev != own,
        f"group {position}: non-final column {own} occurs in the previous group "
        "but the final-column designation forbids that",
    )
    return "B"


def _check_line_sums(image: BinaryImage, profile: ProjectionProfile, label: str) -> None:
    _internal(
        image.row_sums() == profile.row_sums and image.col_sums() == profile.col_sums,
        f"{label} produced wrong line sums",
    )


def diverge(
    profile: ProjectionProfile,
    policy: RowChoicePolicy | None = None,
) -> DivergentPair:
    """Produce two solutions differing in at least 2*alpha + 2 cells.

    Raises Inconsistent when no image has the given line sums and
    NotAmbiguous when exactly one does (alpha = 0).
    """
    if not is_consistent(profile):
        raise Inconsistent("no binary image has these line sums")
    neighbour = neighbour_column_sums(profile)
    if neighbour.alpha == 0:
        raise NotAmbiguous("line sums determine a unique image")
    analysis = analyse_pairs(neighbour)
    policy = policy or DEFAULT_POLICY
    f2, f2_moves = _construct_f2(profile, analysis, policy)
    f3, trace = construct_f3(profile, analysis, f2, policy)
    diff = symmetric_difference(f2, f3)
    guarantee = 2 * neighbour.alpha + 2
    _internal(
        diff.size >= guarantee,
        f"constructed pair differs in {diff.size} cells, below the "
        f"guaranteed {guarantee}",
    )
    return DivergentPair(
        f2=f2,
        f3=f3,
        diff=diff,
        alpha=neighbour.alpha,
        guarantee=guarantee,
        trace=replace(trace, f2_moves=f2_moves),
    )
