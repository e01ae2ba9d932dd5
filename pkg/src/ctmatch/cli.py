"""Command-line entry point: ``ctmatch search|bench|graph``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from ctmatch.bench import records_to_csv, run_bench
from ctmatch.matchers import MatchMode, meta_search
from ctmatch.swapgraph import automaton_search, build_swap_automaton, build_swap_graph
from ctmatch.tree import Number, as_sequence

SEARCH_MODES = {
    "exact": MatchMode.EXACT,
    "swap": MatchMode.SWAP_PD,
    "swap-sn": MatchMode.SWAP_SN,
    "mismatch": MatchMode.MISMATCH,
    "insert": MatchMode.INSERTION,
    "delete": MatchMode.DELETION,
}

_INT = re.compile(r"[+-]?\d+")


class InputError(ValueError):
    pass


def parse_numbers(text: str) -> tuple[Number, ...]:
    """Numbers separated by commas, whitespace or newlines."""
    out = []
    for tok in re.split(r"[,\s]+", text.strip()):
        if not tok:
            continue
        try:
            out.append(int(tok) if _INT.fullmatch(tok) else float(tok))
        except ValueError:
            raise InputError(f"not a number: {tok!r}") from None
    return as_sequence(out)


def read_numbers(path: str) -> tuple[Number, ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_numbers(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}") from None


def cmd_search(args: argparse.Namespace) -> int:
    mode = SEARCH_MODES[args.mode]
    p = read_numbers(args.pattern)
    t = read_numbers(args.text)
    if args.engine == "automaton":
        if mode is not MatchMode.SWAP_PD:
            raise InputError("the automaton engine only supports --mode swap")
        report = automaton_search(build_swap_automaton(p), t)
    else:
        report = meta_search(p, t, mode)
    if args.json:
        payload = {
            "mode": args.mode,
            "engine": args.engine,
            "positions": report.occurrences,
            "window_length": report.window_length,
            "comparisons": report.comparisons,
        }
        sys.stdout.write(json.dumps(payload) + "\n")
    else:
        sys.stdout.write("".join(f"{j}\n" for j in report.occurrences))
    return 0


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def cmd_bench(args: argparse.Namespace) -> int:
    mode = MatchMode(args.mode)
    records = [
        run_bench(mode, m, args.n, args.trials, args.seed, args.planted, args.workers)
        for m in args.m
    ]
    _write(records_to_csv(records, timing=args.timing), args.out)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    graph = build_swap_graph(args.m)
    _write(graph.to_dot() if args.format == "dot" else graph.to_csv(), args.out)
    print(f"vertices: {len(graph.vertices)}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctmatch", description="Cartesian tree matching with one difference.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="report matching window starts")
    s.add_argument("--mode", choices=list(SEARCH_MODES), default="exact")
    s.add_argument("--engine", choices=["meta", "automaton"], default="meta")
    s.add_argument("--pattern", required=True, metavar="FILE")
    s.add_argument("--text", required=True, metavar="FILE")
    s.add_argument("--json", action="store_true", help="print a JSON object instead of one position per line")
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bench", help="average comparisons on random permutations, as CSV")
    b.add_argument("--mode", choices=[m.value for m in MatchMode] + ["swap"], default="swap-pd")
    b.add_argument("--m", type=_int_list, required=True, metavar="LIST", help="comma-separated pattern lengths")
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--trials", type=_positive, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--planted", action="store_true", help="guarantee one exact occurrence per text")
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--timing", action="store_true", help="fill in the runtime column (output no longer reproducible)")
    b.add_argument("--out", metavar="FILE")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("graph", help="export the swap graph of trees of size m")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--format", choices=["dot", "csv"], default="dot")
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_graph)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"ctmatch: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
