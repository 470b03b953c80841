"""Brute-force machinery: exhaustive enumeration, exact extremes, bound audits.

Everything here is independent of the constructive code so it can serve as
its referee: a backtracking enumerator lists every image with the given
line sums, the exact maximum pairwise symmetric difference is computed by
comparing all pairs, and the audit checks the lower bound, both inherited
upper bounds and the uniqueness criterion against those exact numbers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterator, NamedTuple

from .core import (
    BinaryImage,
    Inconsistent,
    ProjectionProfile,
    TruncatedEnumeration,
    _internal,
    canonicalize,
    is_consistent,
    neighbour_column_sums,
)

DEFAULT_CAP = 100_000


@dataclass(frozen=True, slots=True)
class SolutionSet:
    """An ordered, possibly capped list of all images with given line sums."""

    images: tuple[BinaryImage, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __getitem__(self, index):
        return self.images[index]

    def __contains__(self, item) -> bool:
        return item in self.images


class BoundCheck(NamedTuple):
    name: str
    value: float
    satisfied: bool


@dataclass(frozen=True, slots=True)
class EnumerationReport:
    """Summary of an exhaustive (or capped) enumeration of one profile."""

    profile: ProjectionProfile
    solution_count: int
    max_pairwise_symdiff: int
    alpha: int
    truncated: bool
    bound_checks: tuple[BoundCheck, ...] = ()

    @property
    def all_satisfied(self) -> bool:
        return all(check.satisfied for check in self.bound_checks)


def _iter_row_masks(profile: ProjectionProfile, dominance_pruning: bool) -> Iterator[tuple[int, ...]]:
    """Yield solutions as tuples of per-row column bitmasks, deterministically.

    Rows are filled top to bottom; within a row, column subsets are tried in
    ascending lexicographic order of their index tuples, so the overall
    output order is fixed.  Partial assignments are discarded as soon as
    the residual column sums cannot be met by the remaining rows.
    """
    rows = profile.row_sums
    m, n = profile.m, profile.n
    residual = list(profile.col_sums)
    suffix_rows = [tuple(sorted(rows[i:], reverse=True)) for i in range(m + 1)]
    chosen: list[int] = []

    def feasible(depth: int) -> bool:
        rows_left = m - depth
        if any(c > rows_left for c in residual):
            return False
        if not dominance_pruning:
            return True
        cols = sorted((c for c in residual if c > 0), reverse=True)
        remaining = suffix_rows[depth]
        prefix = 0
        for k in range(1, len(cols) + 1):
            prefix += cols[k - 1]
            if prefix > sum(min(r, k) for r in remaining):
                return False
        return True

    def search(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == m:
            yield tuple(chosen)
            return
        r = rows[depth]
        available = [j for j in range(n) if residual[j] > 0]
        if len(available) < r:
            return
        for picked in combinations(available, r):
            for j in picked:
                residual[j] -= 1
            if feasible(depth + 1):
                mask = 0
                for j in picked:
                    mask |= 1 << j
                chosen.append(mask)
                yield from search(depth + 1)
                chosen.pop()
            for j in picked:
                residual[j] += 1

    yield from search(0)


def _image_from_masks(masks: tuple[int, ...], width: int) -> BinaryImage:
    return BinaryImage(
        tuple(tuple((mask >> j) & 1 for j in range(width)) for mask in masks)
    )


def enumerate_solutions(
    profile: ProjectionProfile,
    cap: int = DEFAULT_CAP,
    *,
    dominance_pruning: bool = True,
) -> SolutionSet:
    """List every image with the profile's line sums, up to ``cap`` of them.

    The order is deterministic (row-major backtracking, see
    :func:`_iter_row_masks`).  If more than ``cap`` solutions exist, the
    first ``cap`` are returned with ``truncated`` set.  Intended for desk
    scale; raises Inconsistent when no solution exists.
    ``dominance_pruning`` only affects speed, never the output, and exists
    so tests can cross-check the pruned search against the plain one.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if not is_consistent(profile):
        raise Inconsistent("no binary image has these line sums")
    images = []
    truncated = False
    for masks in _iter_row_masks(profile, dominance_pruning):
        if len(images) == cap:
            truncated = True
            break
        images.append(_image_from_masks(masks, profile.n))
    return SolutionSet(tuple(images), truncated)


def max_pairwise_symdiff(solutions) -> int:
    """Exact maximum symmetric-difference size over all unordered pairs.

    Zero for a single solution.  Images are flattened to integers so each
    pair costs one XOR and one popcount.
    """
    images = list(solutions)
    if not images:
        raise ValueError("need at least one solution")
    width = images[0].width
    masks = []
    for img in images:
        flat = 0
        for r, row in enumerate(img.grid):
            for c, cell in enumerate(row):
                if cell:
                    flat |= 1 << (r * width + c)
        masks.append(flat)
    best = 0
    for i, mi in enumerate(masks):
        for mj in masks[i + 1:]:
            d = (mi ^ mj).bit_count()
            if d > best:
                best = d
    return best


def enumeration_report(profile: ProjectionProfile, cap: int = DEFAULT_CAP) -> EnumerationReport:
    """Enumerate and summarize; when truncated the max is only a lower bound."""
    solutions = enumerate_solutions(profile, cap)
    return EnumerationReport(
        profile=profile,
        solution_count=len(solutions),
        max_pairwise_symdiff=max_pairwise_symdiff(solutions),
        alpha=neighbour_column_sums(profile).alpha,
        truncated=solutions.truncated,
    )


def audit_bounds(profile: ProjectionProfile, report: EnumerationReport) -> EnumerationReport:
    """Check the exact enumeration numbers against every known bound.

    Four checks, all evaluated in exact integer arithmetic:

    * lower: two or more solutions imply a max difference of at least
      2*alpha + 2;
    * upper-sqrt: max difference <= 2*alpha*(sqrt(8N+1) - 1);
    * upper-4a: max difference <= 4*alpha*sqrt(2N);
    * uniqueness: exactly one solution iff alpha = 0.

    Refuses truncated reports, since every check needs exhaustiveness.
    """
    if report.truncated:
        raise TruncatedEnumeration("bound audit requires an exhaustive enumeration")
    alpha = report.alpha
    count = report.solution_count
    d = report.max_pairwise_symdiff
    mass = profile.mass

    lower_value = 2 * alpha + 2
    lower_ok = count < 2 or d >= lower_value
    # d <= 2a(sqrt(8N+1)-1)  <=>  (d + 2a)^2 <= 4a^2(8N+1)
    upper_sqrt_ok = (d + 2 * alpha) ** 2 <= 4 * alpha * alpha * (8 * mass + 1)
    upper_sqrt_value = 2 * alpha * ((8 * mass + 1) ** 0.5 - 1)
    # d <= 4a*sqrt(2N)  <=>  d^2 <= 32 a^2 N
    upper_4a_ok = d * d <= 32 * alpha * alpha * mass
    upper_4a_value = 4 * alpha * (2 * mass) ** 0.5
    uniqueness_ok = (count == 1) == (alpha == 0)

    checks = (
        BoundCheck("lower", float(lower_value), lower_ok),
        BoundCheck("upper-sqrt", upper_sqrt_value, upper_sqrt_ok),
        BoundCheck("upper-4a", upper_4a_value, upper_4a_ok),
        BoundCheck("uniqueness", 1.0, uniqueness_ok),
    )
    return replace(report, bound_checks=checks)


# ---------------------------------------------------------------------------
# Instance families
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class InstanceFamily:
    """A generated profile with its predicted ambiguity and difference bound."""

    tag: str
    profile: ProjectionProfile
    predicted_alpha: int
    predicted_max_symdiff: int


def sharp_all_ones(s: int) -> InstanceFamily:
    """(s+1) x (s+1) profile with every line sum 1: permutation matrices.

    Ambiguity is exactly s and no two solutions can differ in more than
    2s + 2 cells, so the constructive lower bound is tight here.
    """
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise ValueError(f"family parameter s must be an integer >= 1, got {s!r}")
    profile = canonicalize([1] * (s + 1), [1] * (s + 1))
    family = InstanceFamily("sharp-all-ones", profile, s, 2 * s + 2)
    _verify_prediction(family)
    return family


def uniform_k(n: int, k: int) -> InstanceFamily:
    """n x n profile with every line sum k (k at most n/2).

    Ambiguity is k(n-k), at least half of kn, so the trivial ceiling of
    2kn on any pairwise difference is within a factor 4 of 2*alpha.
    """
    for name, value in (("n", n), ("k", k)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"family parameter {name} must be an integer >= 1, got {value!r}")
    if 2 * k > n:
        raise ValueError(f"family requires k <= n/2, got n={n}, k={k}")
    profile = canonicalize([k] * n, [k] * n)
    family = InstanceFamily("uniform-k", profile, k * (n - k), 2 * k * n)
    _verify_prediction(family)
    return family


def _verify_prediction(family: InstanceFamily) -> None:
    computed = neighbour_column_sums(family.profile).alpha
    _internal(
        computed == family.predicted_alpha,
        f"{family.tag}: predicted ambiguity {family.predicted_alpha}, computed {computed}",
    )


FAMILY_TAGS = ("sharp-all-ones", "uniform-k")


def make_family(tag: str, **params: int) -> InstanceFamily:
    """Dispatch on the family tag; see :func:`sharp_all_ones` and :func:`uniform_k`."""
    if tag == "sharp-all-ones":
        extra = set(params) - {"s"}
        if extra or "s" not in params:
            raise ValueError("sharp-all-ones takes exactly the parameter s")
        return sharp_all_ones(params["s"])
    if tag == "uniform-k":
        extra = set(params) - {"n", "k"}
        if extra or not {"n", "k"} <= set(params):
            raise ValueError("uniform-k takes exactly the parameters n and k")
        return uniform_k(params["n"], params["k"])
    raise ValueError(f"unknown family tag {tag!r}; known tags: {', '.join(FAMILY_TAGS)}")


# ---------------------------------------------------------------------------
# Random consistent profiles for property testing
# ---------------------------------------------------------------------------


def random_consistent_profile(
    rng: random.Random,
    min_side: int = 2,
    max_side: int = 5,
) -> ProjectionProfile:
    """Draw a consistent profile by reading the margins off a random image.

    Sides are uniform in [min_side, max_side], row sums uniform in [0, n];
    the column sums are taken from an image drawn with those row sums, so
    the pair is consistent by construction.
    """
    m = rng.randint(min_side, max_side)
    n = rng.randint(min_side, max_side)
    rows = [rng.randint(0, n) for _ in range(m)]
    filled_cols = [rng.sample(range(n), r) for r in rows]
    cols = [sum(1 for picked in filled_cols if j in picked) for j in range(n)]
    return canonicalize(rows, cols)
