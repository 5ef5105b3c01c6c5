"""Command line interface.

Exit codes: 0 when the requested property holds or the artifact was
produced, 1 when a checked property fails (invalid structure content,
not a U-tile, failed basis or state or protocol verification), 2 for
usage, format, or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .families import example1, fig2, five_tile, prop2, prop3
from .grid import TileGridContentError, TileGridFormatError, parse_tile_grid, serialize, validate
from .jsonio import vector_to_pairs
from .locc import attach_resource, build_theorem3_protocol, verify_protocol
from .ppt import ppt_report
from .rectangles import (
    DEFAULT_TILE_CAP,
    EnumerationCapError,
    enumerate_special_rectangles,
    extension_witness,
    is_u_tile,
)
from .states import NotUTileError, build_upb
from .verify import (
    DEFAULT_CONV_TOL,
    DEFAULT_MAX_ITERS,
    DEFAULT_RESTARTS,
    check_upb,
)

FAMILIES = {
    "example1": (example1, ()),
    "fig2": (fig2, ()),
    "prop2": (prop2, ("m", "n")),
    "prop3": (prop3, ("m", "tiles")),
    "five-tile": (five_tile, ("m", "n")),
}


def _add_structure_args(sub: argparse.ArgumentParser, with_file: bool = True) -> None:
    if with_file:
        sub.add_argument("file", nargs="?", metavar="FILE",
                         help="read the tile grid from this file")
    sub.add_argument("--family", choices=sorted(FAMILIES), help="use a built-in family")
    sub.add_argument("--m", type=int, help="family row count")
    sub.add_argument("--n", type=int, help="family column count")
    sub.add_argument("--tiles", type=int, help="family tile count (prop3)")


def _add_output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-o", "--output", metavar="PATH", help="write the result to a file")
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")


def _load_structure(args, parser: argparse.ArgumentParser):
    path = getattr(args, "file", None)
    if (path is None) == (args.family is None):
        parser.error("exactly one of FILE and --family is required")
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return parse_tile_grid(fh.read())
    builder, arity = FAMILIES[args.family]
    values = []
    for name in arity:
        value = getattr(args, name)
        if value is None:
            parser.error(f"--family {args.family} requires --{name}")
        values.append(value)
    return builder(*values)


def _emit(args, text: str, payload) -> None:
    if getattr(args, "json", False):
        body = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _cmd_validate(args, parser) -> int:
    try:
        ts = _load_structure(args, parser)
    except TileGridContentError as exc:
        problems = list(exc.report.problems) if exc.report is not None else [str(exc)]
        _emit(args, "\n".join(["invalid tile structure:"] + [f"  {p}" for p in problems]),
              {"ok": False, "problems": problems})
        return 1
    report = validate(ts)
    if not report.ok:
        problems = list(report.problems)
        _emit(args, "\n".join(["invalid tile structure:"] + [f"  {p}" for p in problems]),
              {"ok": False, "problems": problems})
        return 1
    _emit(args, f"ok: {ts.m} x {ts.n} grid with {ts.tile_count} tiles",
          {"ok": True, "m": ts.m, "n": ts.n, "tiles": ts.tile_count, "problems": []})
    return 0


def _cmd_special_rects(args, parser) -> int:
    ts = _load_structure(args, parser)
    rects = enumerate_special_rectangles(ts, cap=args.cap)
    lines = [f"{len(rects)} special rectangle(s)"]
    payload = {
        "m": ts.m,
        "n": ts.n,
        "cap": args.cap,
        "count": len(rects),
        "rectangles": [],
    }
    for rect in rects:
        lines.append(
            f"  tiles {{{', '.join(map(str, rect.tile_ids))}}}: "
            f"rows {list(rect.rows)} x cols {list(rect.cols)}"
        )
        payload["rectangles"].append(
            {"tiles": list(rect.tile_ids), "rows": list(rect.rows), "cols": list(rect.cols)}
        )
    _emit(args, "\n".join(lines), payload)
    return 0


def _cmd_check_utile(args, parser) -> int:
    ts = _load_structure(args, parser)
    verdict = is_u_tile(ts, method=args.method, cap=args.cap)
    payload = {"is_u_tile": verdict.is_u_tile, "method": args.method, "witness": None}
    if verdict.is_u_tile:
        _emit(args, "U-tile: yes", payload)
        return 0
    wit = verdict.witness
    state = extension_witness(ts, verdict)
    payload["witness"] = {
        "tiles": list(wit.rectangle.tile_ids),
        "rows": list(wit.rectangle.rows),
        "cols": list(wit.rectangle.cols),
        "axis": wit.axis,
        "part1": list(wit.part1),
        "part2": list(wit.part2),
        "state": {"a": vector_to_pairs(state.a_vec), "b": vector_to_pairs(state.b_vec)},
    }
    text = (
        "U-tile: no\n"
        f"witness rectangle: tiles {{{', '.join(map(str, wit.rectangle.tile_ids))}}} "
        f"(rows {list(wit.rectangle.rows)} x cols {list(wit.rectangle.cols)})\n"
        f"disconnected {wit.axis} split: {list(wit.part1)} vs {list(wit.part2)}"
    )
    _emit(args, text, payload)
    return 1


def _cmd_gen(args, parser) -> int:
    if args.family is None:
        parser.error("gen requires --family")
    ts = _load_structure(args, parser)
    text = serialize(ts)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_build_upb(args, parser) -> int:
    ts = _load_structure(args, parser)
    upb = build_upb(ts, check=True)
    labels = upb.state_labels()
    lines = [f"{len(upb.states)} states on a {upb.m} x {upb.n} grid"]
    lines += [f"  {i}: {label}" for i, label in enumerate(labels)]
    _emit(args, "\n".join(lines), upb.to_json_dict())
    return 0


def _cmd_verify_upb(args, parser) -> int:
    ts = _load_structure(args, parser)
    upb = build_upb(ts, check=False)
    report = check_upb(
        upb,
        restarts=args.restarts,
        max_iters=args.max_iters,
        conv_tol=args.tol,
        seed=args.seed,
    )
    lines = [
        f"size: {report.size} (expected {report.expected_size})",
        f"orthogonal: {report.orthogonality.ok} "
        f"(max off-diagonal {report.orthogonality.max_offdiagonal:.3e})",
        f"complement dimension: {report.complement_dim} "
        f"(expected {report.expected_complement_dim})",
    ]
    if report.search is not None:
        lines.append(
            f"best product overlap: {report.search.best_overlap:.12f} "
            f"over {report.search.restarts_run} restarts"
        )
    if report.note:
        lines.append(report.note)
    lines.append("verdict: " + ("unextendible product basis" if report.passed else "FAILED"))
    _emit(args, "\n".join(lines), report.to_json_dict())
    return 0 if report.passed else 1


def _cmd_ppt(args, parser) -> int:
    ts = _load_structure(args, parser)
    upb = build_upb(ts, check=True)
    report = ppt_report(upb)
    lines = [
        f"trace: {report.trace:.12f}",
        f"rank: {report.rank} (expected {report.expected_rank})",
        f"min eigenvalue: {report.min_eigenvalue:.3e}",
        f"min eigenvalue after partial transpose: {report.min_eigenvalue_pt:.3e}",
        f"ppt: {report.ppt}",
    ]
    if report.warning:
        lines.append(f"warning: {report.warning}")
    lines.append("verdict: " + ("ok" if report.ok else "FAILED"))
    _emit(args, "\n".join(lines), report.to_json_dict())
    return 0 if report.ok else 1


def _cmd_distinguish(args, parser) -> int:
    if args.m is None or args.n is None:
        parser.error("distinguish requires --m and --n")
    protocol = build_theorem3_protocol(args.m, args.n)
    upb = build_upb(prop2(args.m, args.n), check=False)
    resource_dim = args.m // 2
    states = attach_resource(upb.states, resource_dim)
    report = verify_protocol(protocol, states)
    lines = [
        f"states: {len(states)} on {args.m} x {args.n} with a {resource_dim}-level resource",
        f"min success probability: {report.min_success_probability:.12f}",
        f"max misidentification probability: {report.max_wrong_probability:.3e}",
    ]
    for problem in report.branch_violations + report.leaf_violations:
        lines.append(f"violation: {problem}")
    lines.append("verdict: " + ("perfect discrimination" if report.ok else "FAILED"))
    payload = {
        "m": args.m,
        "n": args.n,
        "resource_dim": resource_dim,
        "report": report.to_json_dict(),
    }
    _emit(args, "\n".join(lines), payload)
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tileupb",
        description="Tile structures, unextendible product bases, and discrimination protocols.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("validate", help="check a tile structure for well-formedness")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.set_defaults(func=_cmd_validate)

    sub = subs.add_parser("special-rects", help="list rectangles formed by unions of tiles")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.add_argument("--cap", type=int, default=DEFAULT_TILE_CAP,
                     help="refuse enumeration above this many tiles")
    sub.set_defaults(func=_cmd_special_rects)

    sub = subs.add_parser("check-utile", help="decide the U-tile property")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.add_argument("--method", choices=("graph", "bipartition"), default="graph")
    sub.add_argument("--cap", type=int, default=DEFAULT_TILE_CAP)
    sub.set_defaults(func=_cmd_check_utile)

    sub = subs.add_parser("gen", help="write a built-in family grid")
    _add_structure_args(sub, with_file=False)
    _add_output_args(sub)
    sub.set_defaults(func=_cmd_gen)

    sub = subs.add_parser("build-upb", help="construct the product basis of a tile structure")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.set_defaults(func=_cmd_build_upb)

    sub = subs.add_parser("verify-upb", help="verify orthogonality and unextendibility")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    sub.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--tol", type=float, default=DEFAULT_CONV_TOL,
                     help="seesaw convergence tolerance")
    sub.set_defaults(func=_cmd_verify_upb)

    sub = subs.add_parser("ppt", help="build and check the complement-projector state")
    _add_structure_args(sub)
    _add_output_args(sub)
    sub.set_defaults(func=_cmd_ppt)

    sub = subs.add_parser("distinguish", help="build and verify a discrimination protocol")
    sub.add_argument("--family", choices=("prop2",), default="prop2",
                     help="basis family to distinguish (only the ring family has a protocol)")
    sub.add_argument("--m", type=int, required=True, help="row count (even)")
    sub.add_argument("--n", type=int, required=True, help="column count")
    _add_output_args(sub)
    sub.set_defaults(func=_cmd_distinguish)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except TileGridFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TileGridContentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NotUTileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
