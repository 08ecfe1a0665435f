"""Command-line front end.

Every subcommand parses its inputs fully, calls one library function and
formats the result.  Exit status is 0 on success, equality or a passing
check, 1 on a counterexample or failed check, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import automaton as core
from .frame import conical_frame, convex_extreme_points
from .linalg import Matrix, format_fraction
from .oracles import EquivQuery, equiv_exact, equiv_up_to
from .reducer import dumps_report, reduce, result_from_report, verify
from .table import build_table, format_table, make_consistent


class InputError(Exception):
    """A user-facing problem with the command line or an input file."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 text ({exc.reason})") from None


def load_automaton(path: str) -> core.Automaton:
    text = _read_text(path)
    try:
        return core.parse(text)
    except core.AutomatonError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_points(path: str) -> Matrix:
    """One point per line, coordinates separated by whitespace; ``#`` starts a comment."""
    points = []
    for lineno, line in enumerate(_read_text(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            point = [core.parse_rational(tok, f"line {lineno}") for tok in line.split()]
        except core.AutomatonError as exc:
            raise InputError(f"{path}: {exc}") from None
        if points and len(point) != len(points[0]):
            raise InputError(f"{path}: line {lineno}: expected {len(points[0])} coordinates, got {len(point)}")
        points.append(point)
    if not points:
        raise InputError(f"{path}: no points")
    return Matrix.from_columns(points)


def _word(text: str, aut: core.Automaton) -> core.Word:
    try:
        return core.parse_word(text, aut.alphabet)
    except core.AutomatonError as exc:
        raise InputError(str(exc)) from None


def _state(aut: core.Automaton, q: str, path: str) -> str:
    if q not in aut.states:
        raise InputError(f"{path}: unknown state {q!r}")
    return q


def _write(path: Optional[str], data: str) -> None:
    if path is None:
        sys.stdout.write(data)
        return
    try:
        Path(path).write_text(data, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def cmd_reduce(args) -> int:
    aut = load_automaton(args.automaton)
    result = reduce(aut, args.engine)
    report = dumps_report(result)
    if args.out is not None:
        _write(args.out, core.emit(result.reduced).decode("utf-8"))
    if args.report is not None:
        _write(args.report, report)
    if args.out is None or args.report is None:
        _write(None, report)
    return 0


def cmd_obs_table(args) -> int:
    aut = load_automaton(args.automaton)
    if args.consistent:
        table = make_consistent(aut, args.engine)
    else:
        words = [_word(w, aut) for w in args.words.split(",")] if args.words else [core.EPS]
        if len(set(words)) != len(words):
            raise InputError("--words lists a word twice")
        table = build_table(aut, words)
    sys.stdout.write(format_table(table))
    return 0


def cmd_frame(args) -> int:
    points = load_points(args.points)
    idx = convex_extreme_points(points) if args.convex else conical_frame(points)
    sys.stdout.write("".join(f"{i}\n" for i in idx))
    return 0


def cmd_eval(args) -> int:
    aut = load_automaton(args.automaton)
    v = core.dirac(aut, _state(aut, args.state, args.automaton))
    sys.stdout.write(format_fraction(core.obs(aut, v, _word(args.word, aut))) + "\n")
    return 0


def cmd_equiv(args) -> int:
    left, right = load_automaton(args.left_automaton), load_automaton(args.right_automaton)
    _state(left, args.left, args.left_automaton)
    _state(right, args.right, args.right_automaton)
    try:
        query = EquivQuery.of_states(left, args.left, right, args.right)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.max_len is not None:
        verdict = equiv_up_to(query, args.max_len)
    else:
        if core.Theory.CONIC in (left.theory, right.theory):
            raise InputError("exact equivalence is not available for conic automata; use --max-len")
        verdict = equiv_exact(query)
    if verdict.equal:
        print("Equal")
        return 0
    print(core.format_word(verdict.counterexample))
    return 1


def cmd_verify(args) -> int:
    text = _read_text(args.report)
    try:
        result = result_from_report(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.report}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{args.report}: {exc}") from None
    report = verify(result, args.max_len)
    print(report.summary())
    return 0 if report.passed else 1


def _nonneg_int(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fareduce", description="Exact reduction of probabilistic and weighted automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="eliminate redundant states")
    p.add_argument("automaton")
    p.add_argument("--out", help="write the reduced automaton here")
    p.add_argument("--report", help="write the reduction report here")
    p.add_argument("--engine", choices=["nullspace", "lp"], default="nullspace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("obs-table", help="print an observation table")
    p.add_argument("automaton")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--words", help="comma-separated column words, eps for the empty word")
    g.add_argument("--consistent", action="store_true", help="grow the columns until consistent")
    p.add_argument("--engine", choices=["nullspace", "lp"], default="nullspace")
    p.set_defaults(func=cmd_obs_table)

    p = sub.add_parser("frame", help="frame of the conical hull of a point set")
    p.add_argument("points")
    p.add_argument("--convex", action="store_true", help="extreme points of the convex hull instead")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("eval", help="weight of a word from a state")
    p.add_argument("automaton")
    p.add_argument("--state", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", help="compare the languages of two states")
    p.add_argument("left_automaton")
    p.add_argument("right_automaton")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--max-len", type=_nonneg_int)
    g.add_argument("--exact", action="store_true", help="exact decision (the default)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify", help="re-check a reduction report")
    p.add_argument("report")
    p.add_argument("--max-len", type=_nonneg_int, default=10)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"fareduce {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
