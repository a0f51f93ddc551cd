"""Command-line interface.

Subcommands: ``verify`` (run corpus scripts, optionally writing a report
directory with a delimited results table and board figures), ``moves``,
``annotate``, ``solve``, ``render``, ``corpus`` and ``serve``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import corpus
from .board import Jump, Place, PhutballError, Position, Role, apply_move, outcome_of
from .movegen import legal_moves
from .notation import format_coord, format_move, parse_move, parse_position
from .script import Branch, MoveStep, ProofScript
from .tactics import TerminalAfterMove, annotate, principal_line, report, win_within
from .verifier import run_script, verify_all


def _load_position_arg(text: str) -> Position:
    """A position argument is a corpus name or a path to a position file."""
    if text in corpus.POSITIONS:
        return corpus.load_position(text)
    return parse_position(Path(text).read_text(encoding="utf-8"))


def _outcome_text(outcome) -> str:
    return {"ongoing": "ongoing", "A": "wins A", "B": "wins B"}[outcome.value]


# ---------------------------------------------------------------------------
# verify


def _linear_steps(script: ProofScript) -> list[MoveStep]:
    return [item for item in script.items if isinstance(item, MoveStep)]


def _write_report_dir(directory: Path, summary) -> None:
    from .render import save_board_png, save_line_panels

    directory.mkdir(parents=True, exist_ok=True)
    rows = ["script\tpath\tentry\tdetail\texpected\tcomputed\tstatus"]
    for rep in summary.reports:
        for res in rep.results:
            status = "pass" if res.ok else ("erratum" if res.erratum else "fail")
            if hasattr(res, "move"):
                detail = f"move {res.role} {res.move}"
                expected, computed = res.expected, res.computed
            else:
                detail = res.detail
                expected, computed = "", ""
            rows.append(
                f"{rep.script}\t{res.path}\t"
                f"{'move' if hasattr(res, 'move') else 'claim'}\t{detail}\t"
                f"{expected}\t{computed}\t{status}"
            )
    (directory / "results.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    (directory / "summary.json").write_text(summary.to_json(), encoding="utf-8")

    for rep in summary.reports:
        if rep.error:
            continue
        try:
            script = corpus.load_script(rep.script)
            base = corpus.load_position(script.base)
        except PhutballError:
            continue
        save_board_png(base, str(directory / f"{rep.script}-base.png"), script.base)
        steps = _linear_steps(script)
        if steps:
            positions = [base]
            labels = ["start"]
            pos = base
            for step in steps:
                if pos.to_move is not Role(step.role):
                    pos = replace(pos, to_move=Role(step.role))
                pos, _ = apply_move(pos, parse_move(step.move_text, pos.geometry))
                positions.append(pos)
                labels.append(f"{step.role} {step.move_text} {step.expect}".strip())
            save_line_panels(positions, labels, str(directory / f"{rep.script}-line.png"))


def _cmd_verify(args) -> int:
    names = list(corpus.SCRIPT_NAMES) if args.all or not args.scripts else args.scripts
    started = time.perf_counter()
    summary = verify_all(names, strict=args.strict)
    elapsed = time.perf_counter() - started
    if args.report_dir:
        _write_report_dir(Path(args.report_dir), summary)
    if args.json:
        sys.stdout.write(summary.to_json())
    else:
        sys.stdout.write(summary.to_text())
    print(f"verified {len(names)} script(s) in {elapsed:.2f}s", file=sys.stderr)
    return 0 if summary.passed else 1


# ---------------------------------------------------------------------------
# position tools


def _cmd_moves(args) -> int:
    pos = _load_position_arg(args.position)
    listing = legal_moves(pos)
    print(f"placements ({len(listing.placements)}):")
    coords = [format_coord(c) for c in sorted(listing.placements)]
    for i in range(0, len(coords), 12):
        print("  " + " ".join(coords[i : i + 12]))
    print(f"jumps ({len(listing.jumps)}):")
    for rec in listing.jumps:
        path = ",".join(d.name for d in rec.path)
        end = "exit" if rec.trace.end is None else format_coord(rec.trace.end)
        print(f"  {path:24s} -> {end:5s} {_outcome_text(rec.outcome)}")
    return 0


def _cmd_annotate(args) -> int:
    pos = _load_position_arg(args.position)
    move = parse_move(args.move, pos.geometry)
    try:
        tact = annotate(pos, move)
    except TerminalAfterMove:
        _, outcome = apply_move(pos, move)
        print(f"{args.move}: game over, {_outcome_text(outcome)}")
        return 0
    witnesses = ", ".join(",".join(d.name for d in w) for w in tact.shot_witnesses)
    print(f"move:         {format_move(move)} (by {pos.to_move.value})")
    print(f"annotation:   {tact.annotation}")
    print(f"shot:         {'yes, via ' + witnesses if tact.has_shot else 'no'}")
    print(f"unjottable:   {tact.unjottable}")
    print(f"untackleable: {tact.untackleable}")
    print(f"win in one:   {tact.win_in_one}")
    return 0


def _cmd_solve(args) -> int:
    pos = _load_position_arg(args.position)
    winner = Role(args.winner)
    won = win_within(pos, winner, args.plies, node_cap=args.budget)
    if not won:
        print(f"no forced win for {winner.value} within {args.plies} plies")
        return 0
    line = principal_line(pos, winner, args.plies, node_cap=args.budget)
    moves = " ".join(format_move(m) for m in line)
    print(f"win for {winner.value} within {args.plies} plies")
    print(f"principal line: {moves}")
    return 0


def _cmd_render(args) -> int:
    from .render import ascii_board, save_board_png

    pos = _load_position_arg(args.position)
    sys.stdout.write(ascii_board(pos))
    print(f"to move: {pos.to_move.value}   outcome: {outcome_of(pos).value}")
    if args.png:
        save_board_png(pos, args.png)
        print(f"wrote {args.png}")
    return 0


def _cmd_corpus(args) -> int:
    if args.name:
        if args.name in corpus.POSITIONS:
            sys.stdout.write(corpus.position_text(args.name))
        else:
            sys.stdout.write(corpus.script_text(args.name))
        return 0
    print("positions:")
    for entry in corpus.POSITIONS.values():
        print(
            f"  {entry.name:6s} {entry.rows}x{entry.cols}, ball {entry.ball},"
            f" {entry.chap_count} chaps - {entry.note}"
        )
    print("scripts:")
    for entry in corpus.SCRIPTS.values():
        print(f"  {entry.name} ({entry.alias}), base {entry.base} - {entry.note}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(snapshot=args.snapshot)
    uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phutball", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="replay corpus scripts and check every claim")
    p.add_argument("scripts", nargs="*", help="script names (default: all)")
    p.add_argument("--all", action="store_true", help="run the whole corpus")
    p.add_argument("--strict", action="store_true", help="exact symbols, no leniency")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--report-dir", help="write results.tsv, summary.json and figures here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("moves", help="list legal moves with outcomes")
    p.add_argument("position", help="corpus name or position file")
    p.set_defaults(func=_cmd_moves)

    p = sub.add_parser("annotate", help="tactical report for a move")
    p.add_argument("position", help="corpus name or position file")
    p.add_argument("move", help="placement square or jump path")
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("solve", help="bounded forced-win search")
    p.add_argument("position", help="corpus name or position file")
    p.add_argument("--for", dest="winner", choices=("A", "B"), required=True)
    p.add_argument("--plies", type=int, default=2)
    p.add_argument("--budget", type=int, default=5 * 10**7)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("render", help="print a board (optionally save a figure)")
    p.add_argument("position", help="corpus name or position file")
    p.add_argument("--png", help="also write a PNG figure")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("corpus", help="list or show embedded entries")
    p.add_argument("name", nargs="?", help="entry to print")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("serve", help="run the HTTP analysis service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--snapshot", help="write session snapshots here on shutdown")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PhutballError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
