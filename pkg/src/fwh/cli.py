"""Command-line driver: check, eval, explain, lemmas."""

from __future__ import annotations

import argparse
import json
import sys

from .derivation import render
from .driver import check_file_text, erased_main, explain_def, Diagnostic
from .errors import FwhError, ParseError
from .printer import show_constructor, show_term
from .reduction import normalize_term


def _emit_diagnostics(diags, as_json: bool):
    for d in diags:
        if as_json:
            print(json.dumps(d.json_obj()), file=sys.stderr)
        else:
            print(d.render(), file=sys.stderr)


def _load(path: str, unsafe: bool, no_prelude: bool):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return None
    try:
        return check_file_text(text, path, unsafe=unsafe, with_prelude=not no_prelude)
    except ParseError as e:
        return Parsed(path, e)


class Parsed:
    def __init__(self, path, err):
        self.diagnostics = [
            Diagnostic(path, err.line, err.col, "syntax", None, err.message)
        ]
        self.ok = False


def cmd_check(args) -> int:
    result = _load(args.file, args.unsafe, args.no_prelude)
    if result is None:
        return 3
    if result.ok:
        for line in result.ok_lines:
            print(line)
        print(f"ok: {args.file}")
        return 0
    _emit_diagnostics(result.diagnostics, args.json)
    return 1


def cmd_eval(args) -> int:
    result = _load(args.file, args.unsafe, args.no_prelude)
    if result is None:
        return 3
    if not result.ok:
        _emit_diagnostics(result.diagnostics, args.json)
        return 1
    try:
        main = erased_main(result, args.main)
    except FwhError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 3
    outcome = normalize_term(main, args.fuel)
    if outcome.status == "out_of_fuel":
        print(f"out of fuel after {outcome.steps} steps", file=sys.stderr)
        return 2
    print(show_term(outcome.term))
    return 0


def cmd_explain(args) -> int:
    result = _load(args.file, args.unsafe, args.no_prelude)
    if result is None:
        return 3
    if not result.ok:
        _emit_diagnostics(result.diagnostics, args.json)
        return 1
    try:
        deriv = explain_def(result, args.def_name, unsafe=args.unsafe)
    except FwhError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 3
    print(render(deriv, _show_conclusion))
    return 0


def _show_conclusion(conc) -> str:
    tag = conc[0]
    if tag == "type":
        _, _, term, ty = conc
        return f"{show_term(term)} : {show_constructor(ty)}"
    if tag == "sub":
        _, _, f, g, _ = conc
        return f"{show_constructor(f)} <= {show_constructor(g)}"
    if tag == "cont":
        _, _, _, ivar, q, f, _ = conc
        sym = "(+)" if q == "upper" else "(-)"
        return f"[{ivar}{sym}] {show_constructor(f)}"
    if tag == "kind":
        _, _, c, k = conc
        return f"{show_constructor(c)} : {k}"
    if tag == "ordpure":
        return f"{show_constructor(conc[2])} ord"
    return repr(conc)


def cmd_lemmas(args) -> int:
    from .lemmas import run_all

    report = run_all(trials=args.trials, seed=args.seed)
    print(report.render())
    for line in report.machine_lines():
        print(line)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fwh", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file")
        sp.add_argument("--unsafe", action="store_true",
                        help="skip the admissibility gate on recursion")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable diagnostics, one JSON object per line")
        sp.add_argument("--no-prelude", action="store_true",
                        help="do not load the bundled prelude")

    sp = sub.add_parser("check", help="kind-, type- and admissibility-check a file")
    common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("eval", help="normalize a definition")
    common(sp)
    sp.add_argument("--main", required=True)
    sp.add_argument("--fuel", type=int, default=100000)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("explain", help="print the derivations for a definition")
    common(sp)
    sp.add_argument("--def", dest="def_name", required=True)
    sp.set_defaults(fn=cmd_explain)

    sp = sub.add_parser("lemmas", help="run the finite-lattice limit checks")
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, default=2024)
    sp.set_defaults(fn=cmd_lemmas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 3 if e.code not in (0, None) else 0
    return args.fn(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
