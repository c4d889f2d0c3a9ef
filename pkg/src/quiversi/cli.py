"""Command line front end: ``quiversi <verb> ...`` or ``python -m quiversi``.

Exit status: 0 on success, 1 when a verification check fails, 2 on bad input
(unreadable file, malformed quiver or word, cap exceeded).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import enumeration, symalg, treelike, verify
from .quiver import Quiver, QuiverError, parse_path, parse_quiver

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _field(c: int) -> symalg.FieldSpec:
    try:
        return symalg.FieldSpec(c)
    except ValueError as e:
        raise InputError(str(e)) from e


def _load(path: str) -> Quiver:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_quiver(text)


def _word(q: Quiver, text: str):
    w = parse_path(text)
    for x in w.letters:
        q.arrow(x.name)
    return w


def cmd_gens(args, out) -> int:
    q = _load(args.file)
    gs = enumeration.minimal_generating_set(q, _field(args.char), cap=args.arrow_cap)
    out.write(gs.serialize())
    return EXIT_OK


def cmd_count(args, out) -> int:
    q = _load(args.file)
    gs = enumeration.minimal_generating_set(q, _field(args.char), cap=args.arrow_cap)
    out.write(f"{len(gs)}\n")
    return EXIT_OK


def cmd_poly(args, out) -> int:
    q = _load(args.file)
    fs = _field(args.char)
    if args.det is not None:
        q.arrow(args.det)
        f = symalg.det_poly(args.det, fs)
    else:
        f = symalg.sigma(1, q, _word(q, args.path), fs, cap=args.word_cap)
    out.write(symalg.format_poly(f) + "\n")
    return EXIT_OK


def cmd_decomp(args, out) -> int:
    q = _load(args.file)
    w = _word(q, args.path)
    decomps = enumeration.enumerate_decompositions(q, w)
    witness = None
    for k, d in enumerate(decomps, 1):
        ok = enumeration.decomposition_admissible(q, d)
        if ok and witness is None:
            witness = k
        out.write(f"decomposition {k}: {d}\n")
        out.write(f"  diagram: {enumeration.type_diagram(q, d)}\n")
        out.write(f"  admissible: {'yes' if ok else 'no'}\n")
    verdict = "true" if witness else "false"
    suffix = f" (decomposition {witness})" if witness else ""
    out.write(f"tree path: {'yes' if enumeration.is_tree_path(q, w) else 'no'}\n")
    out.write(f"admissible: {verdict}{suffix}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    fs = _field(args.char)
    q = _load(args.file) if args.file else None
    suites = [args.suite] if args.suite else (
        ["relations"] if q is None else ["invariance", "minimality", "spanning"])
    rep = verify.Report()
    for s in suites:
        rep.extend(verify.run_suite(s, q, fs, args.max_deg))
    for line in rep.lines():
        out.write(line + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_twovertex(args, out) -> int:
    if min(args.p, args.q, args.l) < 0:
        raise InputError("p, q, l must be natural numbers")
    chars = [args.char] if args.char is not None else [2, 0]
    for c in chars:
        res = treelike.two_vertex_generating_set(args.p, args.q, args.l, _field(c))
        if args.char is not None:
            out.write(f"{res.count}\n")
        else:
            out.write(f"{'char2' if c == 2 else 'not2'} {res.count}\n")
        if args.list:
            out.write(res.generators.serialize())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiversi", description=(
        "Minimal generating sets of semi-invariants of quivers in dimension (2,...,2)."))
    sub = p.add_subparsers(dest="verb", required=True)

    def with_file(sp, required=True):
        if required:
            sp.add_argument("file", help="quiver description file")
        else:
            sp.add_argument("file", nargs="?", help="quiver description file")

    def with_char(sp, default=0):
        sp.add_argument("--char", type=int, default=default, help="field characteristic: 0 or a prime")

    sp = sub.add_parser("gens", help="print the minimal generating set")
    with_file(sp)
    with_char(sp)
    sp.add_argument("--arrow-cap", type=int, default=enumeration.DEFAULT_ARROW_CAP)
    sp.set_defaults(func=cmd_gens)

    sp = sub.add_parser("count", help="print the size of the minimal generating set")
    with_file(sp)
    with_char(sp)
    sp.add_argument("--arrow-cap", type=int, default=enumeration.DEFAULT_ARROW_CAP)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("poly", help="print tr of a closed path or det of an arrow")
    with_file(sp)
    with_char(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--path", help='closed path, e.g. "z1 z1*"')
    g.add_argument("--det", help="arrow name")
    sp.add_argument("--word-cap", type=int, default=symalg.DEFAULT_WORD_CAP)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("decomp", help="decompositions, diagrams and admissibility of a path")
    with_file(sp)
    sp.add_argument("--path", required=True)
    sp.set_defaults(func=cmd_decomp)

    sp = sub.add_parser("verify", help="run verification suites")
    with_file(sp, required=False)
    with_char(sp)
    sp.add_argument("--suite", choices=verify.SUITES)
    sp.add_argument("--max-deg", type=int, default=verify.DEFAULT_DEGREE_CAP)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("twovertex", help="two-vertex quiver with p, q loops and l arrows")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("--char", type=int, default=None, help="omit to print both branches")
    sp.add_argument("--list", action="store_true", help="also print the generators")
    sp.set_defaults(func=cmd_twovertex)
    return p


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, QuiverError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        err.write(f"error: {msg}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
