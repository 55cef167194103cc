"""Command-line front end: ``paragodel {prove,eval,sat,oracle,translate,frames}``.

Exit statuses:

    prove      0 valid, 1 invalid, 2 resource limit
    sat        0 satisfiable, 1 unsatisfiable, 2 resource limit
    oracle     0 no countermodel, 1 countermodel found, 2 budget exceeded
    any        64 formula parse error, 65 bad model data, 66 missing file
"""
from __future__ import annotations

import argparse
import sys

from .formula import ParseError, SourceError, parse, to_text
from .model import ModelError, dumps_model, evaluate, frame_predicates, load_model
from .oracle import SearchBounds, search_countermodel, search_satisfying
from .tableau import (
    DEFAULT_MAX_BRANCHES, DEFAULT_MAX_STATES, Proved, ResourceLimitExceeded, decide_sat,
    decide_sat_by_reduction, prove,
)
from .translate import KINDS, TRANSLATIONS

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66


class _Fail(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _formula(args):
    text = args.formula
    if text is None or text == "-":
        text = sys.stdin.read()
    try:
        return parse(text.strip())
    except ParseError as exc:
        raise _Fail(EX_USAGE, f"parse error: {exc}") from exc


def _model(path):
    try:
        return load_model(path)
    except FileNotFoundError as exc:
        raise _Fail(EX_NOINPUT, f"model file not found: {path}") from exc
    except ModelError as exc:
        raise _Fail(EX_DATAERR, f"bad model file {path}: {exc}") from exc


def _write_lines(path, lines):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.writelines(line + "\n" for line in lines)


def cmd_prove(args) -> int:
    phi = _formula(args)
    transcript = [] if args.transcript else None
    try:
        v = prove(phi, args.mode, max_states=args.max_states, max_branches=args.max_branches,
                  transcript=transcript)
    except ResourceLimitExceeded as exc:
        print(f"RESOURCE LIMIT: {exc}")
        return 2
    finally:
        _write_lines(args.transcript, transcript or [])
    if isinstance(v, Proved):
        print("VALID")
        return 0
    print("INVALID")
    print(f"witness: world {v.world}, coordinate {v.coordinate}, value {v.value}")
    print(dumps_model(v.model))
    return 1


def cmd_eval(args) -> int:
    m = _model(args.model)
    phi = _formula(args)
    if args.world not in m.worlds:
        raise _Fail(EX_DATAERR, f"unknown world {args.world!r}; model has {', '.join(m.worlds)}")
    print(evaluate(m, args.world, phi))
    return 0


def cmd_sat(args) -> int:
    phi = _formula(args)
    run = decide_sat_by_reduction if args.via_reduction else decide_sat
    try:
        res = run(phi, args.mode, max_states=args.max_states, max_branches=args.max_branches)
    except ResourceLimitExceeded as exc:
        print(f"RESOURCE LIMIT: {exc}")
        return 2
    if not res.satisfiable:
        print("UNSAT")
        return 1
    print("SAT")
    print(f"witness: world {res.world}, value {evaluate(res.model, res.world, phi)}")
    print(dumps_model(res.model))
    return 0


def cmd_oracle(args) -> int:
    phi = _formula(args)
    b = SearchBounds(
        max_worlds=args.max_worlds, grid_denominator=args.grid, crisp_only=args.crisp,
        crisp_minus_only=args.crisp_minus, mono_relational_only=args.mono, budget=args.budget,
    )
    transcript = [] if args.transcript else None
    if args.mode in ("pos1", "sat-strong"):
        res = search_satisfying(phi, "pos1" if args.mode == "pos1" else "strong", b, transcript)
    else:
        res = search_countermodel(phi, args.mode, b, transcript)
    _write_lines(args.transcript, transcript or [])
    print(f"grid: 1/{b.grid_denominator}, max worlds: {b.max_worlds}, models examined: {res.examined}")
    if res.status == "budget":
        print("BUDGET EXCEEDED")
        return 2
    if not res.found:
        print("NONE")
        return 0
    print("FOUND")
    print(f"witness: world {res.world}, value {res.value}, index {res.index}")
    print(dumps_model(res.model))
    return 1


def cmd_translate(args) -> int:
    phi = _formula(args)
    try:
        print(to_text(TRANSLATIONS[args.kind](phi)))
    except SourceError as exc:
        raise _Fail(EX_USAGE, f"not a source formula: {exc}") from exc
    return 0


def cmd_frames(args) -> int:
    rep = frame_predicates(_model(args.model))
    for key in ("crisp_plus", "crisp_minus", "mono_relational"):
        print(f"{key}: {str(getattr(rep, key)).lower()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paragodel", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def formula_arg(sp):
        sp.add_argument("formula", nargs="?", help="formula text; read from stdin when omitted or '-'")

    def limits(sp):
        sp.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
        sp.add_argument("--max-branches", type=int, default=DEFAULT_MAX_BRANCHES)

    sp = sub.add_parser("prove", help="decide validity with the tableau")
    formula_arg(sp)
    sp.add_argument("--mode", choices=("pos", "neg", "strong"), default="strong")
    sp.add_argument("--transcript", metavar="PATH")
    limits(sp)
    sp.set_defaults(run=cmd_prove)

    sp = sub.add_parser("eval", help="evaluate a formula on a model file")
    sp.add_argument("--model", required=True)
    sp.add_argument("--world", required=True)
    formula_arg(sp)
    sp.set_defaults(run=cmd_eval)

    sp = sub.add_parser("sat", help="decide satisfiability with the tableau")
    formula_arg(sp)
    sp.add_argument("--mode", choices=("pos1", "strong"), default="pos1")
    sp.add_argument("--via-reduction", action="store_true", help="go through the validity reduction")
    limits(sp)
    sp.set_defaults(run=cmd_sat)

    sp = sub.add_parser("oracle", help="bounded brute-force model search")
    formula_arg(sp)
    sp.add_argument("--mode", choices=("pos", "neg", "strong", "pos1", "sat-strong"), default="strong")
    sp.add_argument("--max-worlds", type=int, default=2)
    sp.add_argument("--grid", type=int, default=2, help="grid denominator N: values 0, 1/N, ..., 1")
    sp.add_argument("--crisp", action="store_true", help="both relations crisp")
    sp.add_argument("--crisp-minus", action="store_true", help="R- crisp")
    sp.add_argument("--mono", action="store_true", help="R+ = R-")
    sp.add_argument("--budget", type=int, default=SearchBounds().budget)
    sp.add_argument("--transcript", metavar="PATH")
    sp.set_defaults(run=cmd_oracle)

    sp = sub.add_parser("translate", help="apply a formula translation")
    sp.add_argument("--kind", choices=KINDS, required=True)
    formula_arg(sp)
    sp.set_defaults(run=cmd_translate)

    sp = sub.add_parser("frames", help="frame predicates of a model file")
    sp.add_argument("--model", required=True)
    sp.set_defaults(run=cmd_frames)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:  # bad bounds and the like
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
