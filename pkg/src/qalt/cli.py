"""Command-line interface: ``qalt <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .catalog import MODES, load_certificate, run_batch
from .conway import (MontesinosPresentation, ParseError, RationalTangleWord, parse_montesinos,
                     parse_tangle_word, render_word)
from .dessin import genus_data
from .determinant import DEFAULT_ORACLE_BUDGET, compute_det, det_oracle
from .diagram import PlanarDiagram, build_montesinos, build_pretzel, build_rational
from .qacert import DEFAULT_DEPTH, Unknown, certify, certify_designated, verify_certificate
from .tangle import slot_value
from .treecount import Multigraph, count_trees, count_trees_oracle

_PRETZEL = re.compile(r"P\((.*)\)$")


def diagram_from_notation(text: str) -> PlanarDiagram:
    """``[w1;...;wm]`` Montesinos, ``P(p1,...,pm)`` pretzel, otherwise a rational word."""
    text = text.strip()
    if text.startswith("["):
        return build_montesinos(parse_montesinos(text))
    m = _PRETZEL.match(text)
    if m:
        try:
            twists = [int(x) for x in m.group(1).split(",")]
        except ValueError:
            raise ParseError("pretzel entries must be integers", text, 2) from None
        return build_pretzel(twists)
    return build_rational(parse_tangle_word(text))


def _designation(text: str):
    slots = text.strip()[1:-1].split(";") if text.strip().startswith("[") else []
    marked = [i for i, s in enumerate(slots) if s.strip().startswith("*")]
    return marked[0] if len(marked) == 1 else None


def cmd_parse(args) -> int:
    text = args.notation.strip()
    if text.startswith("["):
        p = parse_montesinos(text)
        slot = _designation(text)
        print(f"Montesinos link, {len(p.tangles)} tangles, k={p.half_twists}")
        for i, w in enumerate(p.tangles):
            mark = "  (designated)" if i == slot else ""
            tail = ", horizontal tail" if w.horizontal_tail else ""
            print(f"  slot {i}: {render_word(w)}  entries={list(w.entries)}{tail}  slot value={slot_value(w)}{mark}")
    else:
        w = parse_tangle_word(text)
        print(f"rational word {render_word(w)}  entries={list(w.entries)}  slot value={slot_value(w)}")
    return 0


def cmd_det(args) -> int:
    d = diagram_from_notation(args.notation)
    value, engine = compute_det(d, check=args.check or None, budget=args.oracle_budget)
    print(f"det={value} engine={engine}")
    return 0


def cmd_genus(args) -> int:
    g = genus_data(diagram_from_notation(args.notation))
    print(f"v_A={g.v_a} e={g.edges} v_B={g.v_b} g={g.genus}")
    return 0


def cmd_trees(args) -> int:
    if args.file in (None, "-"):
        g = Multigraph.from_edge_lines(sys.stdin)
    else:
        with open(args.file, encoding="utf-8") as fh:
            g = Multigraph.from_edge_lines(fh)
    value = count_trees(g)
    print(value)
    if args.check:
        other = count_trees_oracle(g, budget=args.budget)
        if other != value:
            print(f"deletion-contraction disagrees: {other}", file=sys.stderr)
            return 1
    return 0


def cmd_certify(args) -> int:
    if args.verify:
        cert = load_certificate(args.verify)
        result = verify_certificate(cert, budget=args.oracle_budget)
        if result:
            print(f"ok: {cert.link}")
            return 0
        print(f"invalid at {result.path or '<root>'}: {result.reason}")
        return 1
    if not args.notation:
        raise ParseError("certify needs a notation or --verify FILE")
    slot = _designation(args.notation)
    if slot is not None:
        result = certify_designated(parse_montesinos(args.notation), slot,
                                    depth=args.depth, budget=args.oracle_budget)
    elif args.notation.strip().startswith("["):
        result = certify(parse_montesinos(args.notation), depth=args.depth, budget=args.oracle_budget)
    else:
        result = certify(diagram_from_notation(args.notation), link=args.notation,
                         depth=args.depth, budget=args.oracle_budget)
    if isinstance(result, Unknown):
        print(f"Unknown: {result.reason}")
        return 1
    text = json.dumps(result.to_json(), indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"QA ({result.method}) det={result.det}; certificate written to {args.out}")
    else:
        print(text)
    return 0


def cmd_batch(args) -> int:
    report = run_batch(args.csv, args.mode, out_dir=args.out, jobs=args.jobs,
                       depth=args.depth, budget=args.oracle_budget)
    if args.json:
        print(json.dumps(report.to_json(), indent=1, sort_keys=True))
    else:
        print(report.text())
    return report.exit_code


def cmd_oracle(args) -> int:
    d = diagram_from_notation(args.notation)
    print(f"det={det_oracle(d, args.oracle_budget, states=args.states)} engine=oracle")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qalt", description="Montesinos link determinants and quasi-alternating certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def budgeted(p):
        p.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET,
                       help="crossing cap for the bracket oracle (env QALT_ORACLE_BUDGET)")
        return p

    def depthed(p):
        p.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                       help="recursion depth for certificate search (env QALT_DEPTH)")
        return p

    p = sub.add_parser("parse", help="show the structured presentation")
    p.add_argument("notation")
    p.set_defaults(func=cmd_parse)

    p = budgeted(sub.add_parser("det", help="determinant and the engine used"))
    p.add_argument("notation")
    p.add_argument("--check", action="store_true", help="cross-check against the oracle (env QALT_DEBUG)")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("genus", help="state-circle counts and dessin genus")
    p.add_argument("notation")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("trees", help="spanning trees of an edge list ('u v' per line)")
    p.add_argument("file", nargs="?", help="edge list file, '-' or omitted for stdin")
    p.add_argument("--check", action="store_true", help="also run deletion-contraction")
    p.add_argument("--budget", type=int, default=16, help="edge cap for deletion-contraction")
    p.set_defaults(func=cmd_trees)

    p = depthed(budgeted(sub.add_parser("certify", help="certify quasi-alternating or verify a certificate")))
    p.add_argument("notation", nargs="?")
    p.add_argument("--verify", metavar="FILE", help="verify a certificate JSON file")
    p.add_argument("--out", metavar="FILE", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = depthed(budgeted(sub.add_parser("batch", help="certify every row of a knot,conway CSV")))
    p.add_argument("csv")
    p.add_argument("--mode", choices=MODES, default="family")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--out", metavar="DIR", help="write one certificate per QA row")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    p = budgeted(sub.add_parser("oracle", help="determinant from the Kauffman bracket only"))
    p.add_argument("notation")
    p.add_argument("--states", action="store_true", help="enumerate all 2^c states instead of contracting")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        where = f" at position {exc.position}" if exc.position is not None else ""
        print(f"parse error{where}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
