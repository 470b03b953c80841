"""Command-line interface.

Subcommands cover each pipeline stage: ``check`` (consistency), ``alpha``
(ambiguity), ``neighbour`` (left-justified image), ``pairs`` (column
pairing), ``diverge`` (two maximally-disagreeing solutions), ``enumerate``
and ``verify`` (brute-force oracle), ``generate`` (instance families) and
``render`` (grid to PBM).  Profiles are JSON objects ``{"rows": [...],
"cols": [...]}`` read from a file, from stdin (``--input -``) or passed
inline.  Everything user-facing is reported in the caller's original
row/column order; exit status is 0 on success, 1 on domain errors and 2 on
I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construct import DivergentPair, RowChoicePolicy, diverge
from .core import (
    BinaryImage,
    ProjectionProfile,
    TomographyError,
    build_neighbour,
    canonicalize,
    is_consistent,
    neighbour_column_sums,
)
from .oracle import (
    DEFAULT_CAP,
    FAMILY_TAGS,
    audit_bounds,
    enumeration_report,
    make_family,
)
from .pairs import PairAnalysis, analyse_pairs


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if source.lstrip().startswith("{"):
        return source
    with open(source, encoding="utf-8") as handle:
        return handle.read()


def _parse_profile(text: str) -> ProjectionProfile:
    data = json.loads(text)
    if not isinstance(data, dict) or "rows" not in data or "cols" not in data:
        raise ValueError('profile JSON must be an object with "rows" and "cols" lists')
    rows, cols = data["rows"], data["cols"]
    if not isinstance(rows, list) or not isinstance(cols, list):
        raise ValueError('"rows" and "cols" must be lists of non-negative integers')
    return canonicalize(rows, cols)


def _parse_image(text: str) -> BinaryImage:
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if not isinstance(data, dict) or "grid" not in data:
            raise ValueError('image JSON must be an object with a "grid" list of rows')
        grid = data["grid"]
        if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
            raise ValueError('"grid" must be a list of lists of 0/1 cells')
        return BinaryImage(tuple(tuple(cell for cell in row) for row in grid))
    return BinaryImage.from_text(text)


def _load_profile(args) -> ProjectionProfile:
    return _parse_profile(_read_source(args.input))


def _dump(data) -> str:
    return json.dumps(data, indent=2)


def _reject_format(args, *allowed: str) -> None:
    if args.format not in allowed:
        raise ValueError(
            f"format {args.format!r} is not supported by this command "
            f"(use one of: {', '.join(allowed)})"
        )


def _orig_row(profile: ProjectionProfile, row: int) -> int:
    return profile.row_perm[row - 1]


def _orig_col(profile: ProjectionProfile, col: int) -> int:
    return profile.col_perm[col - 1]


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the text to print)
# ---------------------------------------------------------------------------


def _cmd_check(args) -> str:
    profile = _load_profile(args)
    verdict = is_consistent(profile)
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump({"consistent": verdict})
    return "consistent" if verdict else "inconsistent"


def _cmd_alpha(args) -> str:
    profile = _load_profile(args)
    analysis = neighbour_column_sums(profile)
    sums = profile.restore_cols(analysis.column_sums)
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump({"alpha": analysis.alpha, "neighbour_col_sums": list(sums)})
    return f"alpha: {analysis.alpha}\nneighbour column sums: {' '.join(map(str, sums))}"


def _cmd_neighbour(args) -> str:
    profile = _load_profile(args)
    image = profile.restore_image(build_neighbour(profile))
    if args.format == "json":
        return _dump({"grid": [list(row) for row in image.grid]})
    if args.format == "pbm":
        return image.to_pbm().rstrip("\n")
    return image.to_text()


def _pairs_payload(profile: ProjectionProfile, analysis: PairAnalysis) -> list[dict]:
    return [
        {
            "source": _orig_col(profile, g.pair.source),
            "target": _orig_col(profile, g.pair.target),
            "multiplicity": g.multiplicity,
            "final": _orig_col(profile, g.final_column),
        }
        for g in analysis.groups
    ]


def _cmd_pairs(args) -> str:
    profile = _load_profile(args)
    analysis = analyse_pairs(neighbour_column_sums(profile))
    groups = _pairs_payload(profile, analysis)
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump({"alpha": analysis.alpha, "groups": groups})
    lines = [f"alpha: {analysis.alpha}"]
    for h, g in enumerate(groups, start=1):
        lines.append(
            f"group {h}: {g['source']} -> {g['target']}  "
            f"x{g['multiplicity']}  final column {g['final']}"
        )
    return "\n".join(lines)


def _trace_payload(profile: ProjectionProfile, pair: DivergentPair) -> dict:
    def move(m) -> dict:
        return {
            "row": _orig_row(profile, m.row),
            "source": _orig_col(profile, m.source),
            "target": _orig_col(profile, m.target),
            "batch": m.batch,
        }

    def batch(b) -> dict:
        return {
            "pair": {
                "source": _orig_col(profile, b.group.pair.source),
                "target": _orig_col(profile, b.group.pair.target),
            },
            "multiplicity": b.group.multiplicity,
            "final_column": _orig_col(profile, b.group.final_column),
            "case": b.case,
            "condition": b.condition,
            "mirrored": b.mirrored,
            "candidate_rows": [_orig_row(profile, r) for r in b.candidate_rows],
            "r_prime": [_orig_row(profile, r) for r in b.r_prime] if b.r_prime else None,
            "l0": _orig_row(profile, b.l0) if b.l0 is not None else None,
            "moved_rows": [_orig_row(profile, r) for r in b.moved_rows],
        }

    trace = pair.trace
    return {
        "f2_moves": [move(m) for m in trace.f2_moves],
        "batches": [batch(b) for b in trace.batches],
        "f3_moves": [move(m) for m in trace.f3_moves],
        "column_diffs": {
            str(_orig_col(profile, col)): count
            for col, count in trace.column_diffs.items()
        },
    }


def _cmd_diverge(args) -> str:
    profile = _load_profile(args)
    policy = RowChoicePolicy(seed=args.seed) if args.seed is not None else None
    result = diverge(profile, policy)
    f2 = profile.restore_image(result.f2)
    f3 = profile.restore_image(result.f3)
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump(
            {
                "alpha": result.alpha,
                "guarantee": result.guarantee,
                "diff_size": result.diff.size,
                "f2": f2.to_text().splitlines(),
                "f3": f3.to_text().splitlines(),
                "trace": _trace_payload(profile, result),
            }
        )
    trace = _trace_payload(profile, result)
    lines = [
        f"alpha: {result.alpha}",
        f"guarantee: {result.guarantee}",
        f"difference: {result.diff.size}",
        "",
        "first solution:",
        f2.to_text(),
        "",
        "second solution:",
        f3.to_text(),
        "",
        "trace:",
    ]
    for m in trace["f2_moves"]:
        lines.append(f"  move {m['source']} -> {m['target']} in row {m['row']} (step {m['batch']})")
    for b in trace["batches"]:
        detail = f"R={{{', '.join(map(str, b['candidate_rows']))}}}"
        if b["r_prime"]:
            detail += f", R'={{{', '.join(map(str, b['r_prime']))}}}, l0={b['l0']}"
        detail += f", moved {{{', '.join(map(str, b['moved_rows']))}}}"
        lines.append(
            f"  batch {b['pair']['source']} -> {b['pair']['target']} x{b['multiplicity']}: "
            f"final column {b['final_column']}, {b['case']}, condition {b['condition']}, {detail}"
        )
    return "\n".join(lines)


def _cmd_enumerate(args) -> str:
    profile = _load_profile(args)
    report = enumeration_report(profile, args.cap)
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump(
            {
                "count": report.solution_count,
                "max_symdiff": report.max_pairwise_symdiff,
                "truncated": report.truncated,
            }
        )
    return (
        f"solutions: {report.solution_count}\n"
        f"max symmetric difference: {report.max_pairwise_symdiff}\n"
        f"truncated: {'yes' if report.truncated else 'no'}"
    )


def _cmd_verify(args) -> str:
    profile = _load_profile(args)
    report = audit_bounds(profile, enumeration_report(profile, args.cap))
    _reject_format(args, "text", "json")
    if args.format == "json":
        out = _dump(
            {
                "count": report.solution_count,
                "alpha": report.alpha,
                "max_symdiff": report.max_pairwise_symdiff,
                "checks": [
                    {"name": c.name, "bound": c.value, "satisfied": c.satisfied}
                    for c in report.bound_checks
                ],
                "all_passed": report.all_satisfied,
            }
        )
    else:
        lines = [
            f"solutions: {report.solution_count}",
            f"alpha: {report.alpha}",
            f"max symmetric difference: {report.max_pairwise_symdiff}",
        ]
        for c in report.bound_checks:
            status = "satisfied" if c.satisfied else "VIOLATED"
            lines.append(f"{c.name}: {status} (bound {c.value:.3f})")
        lines.append("all checks passed" if report.all_satisfied else "CHECKS FAILED")
        out = "\n".join(lines)
    if not report.all_satisfied:
        raise TomographyError("bound audit failed:\n" + out)
    return out


def _cmd_generate(args) -> str:
    params = {}
    if args.family == "sharp-all-ones":
        if args.s is None:
            raise ValueError("sharp-all-ones requires --s")
        params["s"] = args.s
    else:
        if args.n is None or args.k is None:
            raise ValueError("uniform-k requires --n and --k")
        params["n"], params["k"] = args.n, args.k
    family = make_family(args.family, **params)
    rows = list(family.profile.original_rows())
    cols = list(family.profile.original_cols())
    _reject_format(args, "text", "json")
    if args.format == "json":
        return _dump(
            {
                "rows": rows,
                "cols": cols,
                "family": family.tag,
                "predicted_alpha": family.predicted_alpha,
                "predicted_max_symdiff": family.predicted_max_symdiff,
            }
        )
    return (
        f"rows: {' '.join(map(str, rows))}\n"
        f"cols: {' '.join(map(str, cols))}\n"
        f"family: {family.tag}\n"
        f"predicted alpha: {family.predicted_alpha}\n"
        f"predicted max symdiff: {family.predicted_max_symdiff}"
    )


def _cmd_render(args) -> str:
    image = _parse_image(_read_source(args.input))
    if args.format == "json":
        return _dump({"grid": [list(row) for row in image.grid]})
    if args.format == "text":
        return image.to_text()
    return image.to_pbm().rstrip("\n")


_HANDLERS = {
    "check": _cmd_check,
    "alpha": _cmd_alpha,
    "neighbour": _cmd_neighbour,
    "pairs": _cmd_pairs,
    "diverge": _cmd_diverge,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
    "render": _cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomodiff",
        description="Analyse binary-image projections and construct divergent solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *, needs_input: bool = True, default_format: str = "text"):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument(
                "--input",
                required=True,
                help="profile JSON: a file path, '-' for stdin, or an inline JSON object",
            )
        p.add_argument(
            "--format",
            choices=("text", "json", "pbm"),
            default=default_format,
            help=f"output format (default: {default_format})",
        )
        return p

    add("check", "report whether the line sums admit any image")
    add("alpha", "print the ambiguity parameter and the companion column sums")
    add("neighbour", "print the left-justified image determined by the row sums")
    add("pairs", "print the grouped column pairs with their final columns")

    p = add("diverge", "construct two solutions differing in at least 2*alpha + 2 cells")
    p.add_argument("--seed", type=int, default=None, help="randomize the free row choices")

    p = add("enumerate", "count all solutions and their exact maximum difference")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="stop after this many solutions")

    p = add("verify", "audit the lower/upper bounds against an exhaustive enumeration")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    p = add("generate", "emit an instance-family profile", needs_input=False)
    p.add_argument("--family", choices=FAMILY_TAGS, required=True)
    p.add_argument("--s", type=int, default=None, help="sharp-all-ones size parameter")
    p.add_argument("--n", type=int, default=None, help="uniform-k side length")
    p.add_argument("--k", type=int, default=None, help="uniform-k line sum")

    p = sub.add_parser("render", help="convert a '#'/'.' grid (or image JSON) to PBM")
    p.add_argument("--input", required=True, help="grid text file, '-' for stdin, or image JSON")
    p.add_argument(
        "--format",
        choices=("text", "json", "pbm"),
        default="pbm",
        help="output format (default: pbm)",
    )

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        output = _HANDLERS[args.command](args)
    except TomographyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(output)
    return 0


def run_main() -> None:
    raise SystemExit(main())
