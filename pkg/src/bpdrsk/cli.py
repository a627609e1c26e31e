"""Command line front end: ``python -m bpdrsk <subcommand> ...``.

Exit status is 0 on success, 1 for bad input and 2 when an internal
invariant fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bpd import ParseError, enumerate_bpds, parse, perm_of, render, weight
from .growth import (
    GrowthError,
    SeparationError,
    constants_to_json,
    fill_growth,
    jdt,
    structure_constants_separated,
)
from .insertion import Biletter, Biword, left_insert, right_insert, rsk_left, rsk_right, unrsk_left, unrsk_right
from .moves import format_trace
from .perm import MixedChain, Permutation, down_chain, up_chain
from .poly import schubert_oracle
from .suites import SUITES


class InputError(ValueError):
    pass


def _max_n() -> int:
    raw = os.environ.get("SCHUBERT_MAX_N", "8")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SCHUBERT_MAX_N must be an integer, got {raw!r}") from None


def _perm(text: str) -> Permutation:
    p = Permutation.parse(text)
    if p.n > _max_n():
        raise InputError(f"{text} lives in S_{p.n}, above SCHUBERT_MAX_N={_max_n()}")
    return p


def _chain(text: str) -> MixedChain:
    c = MixedChain.parse(text)
    for p in c.perms:
        if p.n > _max_n():
            raise InputError(f"chain reaches S_{p.n}, above SCHUBERT_MAX_N={_max_n()}")
    return c


def _group(text: str) -> int:
    if not (text[:1] in "Ss" and text[1:].isdigit()):
        raise InputError(f"group must look like S4, got {text!r}")
    n = int(text[1:])
    if n > _max_n():
        raise InputError(f"S_{n} is above SCHUBERT_MAX_N={_max_n()}")
    return n


def _read_grid(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse(text.strip("\n"))


def cmd_schubert(args) -> int:
    w = _perm(args.perm)
    if args.method == "bpd":
        total = None
        for D in enumerate_bpds(w):
            total = weight(D) if total is None else total + weight(D)
        poly = total
    else:
        poly = schubert_oracle(w)
    print(poly.to_text())
    return 0


def cmd_rsk(args) -> int:
    Q = Biword.parse(args.biword)
    D, chain = rsk_left(Q) if args.side == "left" else rsk_right(Q)
    print(render(D))
    print(chain)
    return 0


def cmd_lr(args) -> int:
    w, v = _perm(args.w), _perm(args.v)
    table = structure_constants_separated(w, v, verify=not args.no_verify)
    if args.json:
        print(constants_to_json(w, v, table, not args.no_verify))
    else:
        for u, c in table.items():
            print(f"{u} {c}")
    return 0


def cmd_check(args) -> int:
    n = _group(args.group)
    report = SUITES[args.suite](n)
    print(report.to_text())
    return 0 if report.ok else 2


def cmd_bpds(args) -> int:
    grids = enumerate_bpds(_perm(args.perm))
    if args.count:
        print(len(grids))
    else:
        print("\n\n".join(render(D) for D in grids))
    return 0


def cmd_insert(args) -> int:
    D = _read_grid(args.grid)
    bl = Biletter.parse(args.biletter)
    steps: list = []
    E = (left_insert if args.side == "left" else right_insert)(D, bl, trace=steps)
    if args.trace:
        print(format_trace(steps))
    print(render(E))
    return 0


def cmd_unrsk(args) -> int:
    D = _read_grid(args.grid)
    c = _chain(args.chain)
    Q = unrsk_left(D, c) if args.side == "left" else unrsk_right(D, c)
    print(Q)
    return 0


def cmd_growth(args) -> int:
    G = fill_growth(_chain(args.bottom), _chain(args.right))
    print(json.dumps(G.to_json(), sort_keys=True) if args.json else G.to_text())
    return 0


def cmd_jdt(args) -> int:
    print(jdt(_chain(args.c), _chain(args.d)))
    return 0


def cmd_chains(args) -> int:
    w = _perm(args.perm)
    print(up_chain(w) if args.direction == "up" else down_chain(w))
    return 0


def _side(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--left", dest="side", action="store_const", const="left")
    g.add_argument("--right", dest="side", action="store_const", const="right")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpdrsk", description="Bumpless pipe dream insertion and Schubert products.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schubert", help="Schubert polynomial of a permutation")
    p.add_argument("perm")
    p.add_argument("--method", choices=["bpd", "ddiff"], default="bpd")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("rsk", help="insert a biword, print grid and recording chain")
    _side(p)
    p.add_argument("biword", help='e.g. "1_1 2_3 1_2 2_4"')
    p.set_defaults(func=cmd_rsk)

    p = sub.add_parser("lr", help="structure constants for separated descents")
    p.add_argument("w")
    p.add_argument("v")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-verify", action="store_true", help="skip the polynomial cross-check")
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("check", help="run an exhaustive property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--group", default="S4")
    p.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; suites are exhaustive")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bpds", help="list the pipe dreams of a permutation")
    p.add_argument("perm")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--render", action="store_true", help="print every grid (default)")
    p.set_defaults(func=cmd_bpds)

    p = sub.add_parser("insert", help="insert one biletter into a grid file ('-' for stdin)")
    _side(p)
    p.add_argument("grid")
    p.add_argument("biletter")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_insert)

    p = sub.add_parser("unrsk", help="recover a biword from a grid and its recording chain")
    _side(p)
    p.add_argument("grid")
    p.add_argument("--chain", required=True)
    p.set_defaults(func=cmd_unrsk)

    p = sub.add_parser("growth", help="fill a growth diagram")
    p.add_argument("--bottom", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("jdt", help="left column of the growth diagram")
    p.add_argument("--c", required=True)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_jdt)

    p = sub.add_parser("chains", help="up- or down-chain of a permutation")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--up", dest="direction", action="store_const", const="up")
    g.add_argument("--down", dest="direction", action="store_const", const="down")
    p.add_argument("perm")
    p.set_defaults(func=cmd_chains)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GrowthError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (SeparationError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
