"""Command-line front end: ``quadcycles {eval,verify,edi}``.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 contradiction while propagating an EDI table.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

from . import edi
from .expr import ExprError, eval_expr, format_value, parse_expr, to_text
from .identities import run_verify
from .report import Check, Report, TableLevel
from .ring import ORIENTATIONS, DomainError, QuadricContext

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="dimension of the quadric")
    p.add_argument("--orientation", choices=ORIENTATIONS, default="ld",
                   help="which middle class rho(i,d) uses for even n")
    p.add_argument("--delta-middle-convention", choices=ORIENTATIONS, default="ld",
                   dest="delta_middle", help="middle class used inside delta(i,j) for even n")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--trace", action="store_true", help="print every check or rule firing")
    p.add_argument("--max-n", type=int, default=edi.DEFAULT_MAX_N, help="refuse larger n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadcycles",
                                     description="mod-2 cycles on powers of split quadrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a cycle expression")
    _common(p)
    p.add_argument("expression")

    p = sub.add_parser("verify", help="run identity suites")
    _common(p)
    p.add_argument("--from", type=int, dest="n_min", default=None,
                   help="smallest n to check (default: --n)")
    p.add_argument("--suite", default=None,
                   help="comma-separated suite names or glob patterns")
    p.add_argument("--list", action="store_true", help="list suites and exit")

    p = sub.add_parser("edi", help="propagate or enumerate EDI tables")
    _common(p)
    p.add_argument("--aniso", action="store_true", help="quadric is anisotropic")
    p.add_argument("--i1", type=int, default=None, help="first Witt index (implies --aniso)")
    p.add_argument("--seed", action="append", default=[], metavar="I:M",
                   help="seed membership m in level i (repeatable)")
    p.add_argument("--table", default=None, metavar="PATH", help="seed from a JSON table file")
    p.add_argument("--mode", choices=("propagate", "enumerate"), default="propagate")
    p.add_argument("--levels", default=None,
                   help="enumerate: comma-separated levels to project onto")
    return parser


def _context(args) -> QuadricContext:
    if args.n > args.max_n:
        raise UsageError(f"n={args.n} exceeds --max-n {args.max_n}")
    if args.n < 1:
        raise UsageError(f"n must be positive, got {args.n}")
    return QuadricContext(args.n, args.orientation, args.delta_middle)


def _conventions(args) -> dict:
    return {"orientation": args.orientation, "delta_middle": args.delta_middle}


def _emit(report: Report, args, out) -> None:
    if args.json:
        out.write(report.dumps(indent=2 if args.trace else None) + "\n")


def cmd_eval(args, out) -> int:
    ctx = _context(args)
    try:
        ast = parse_expr(args.expression)
        value = eval_expr(ast, ctx)
    except ExprError as exc:
        raise UsageError(str(exc)) from exc
    text = format_value(value)
    report = Report(args.n, _conventions(args),
                    [Check("eval", {"expr": to_text(ast), "value": text}, True)])
    if args.json:
        _emit(report, args, out)
    else:
        if args.trace:
            out.write(f"parsed: {to_text(ast)}\n")
        out.write(text + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .identities import SUITES, select_suites

    if args.list:
        for s in SUITES.values():
            out.write(f"{s.name}: {s.description}\n")
        return EXIT_OK
    _context(args)
    n_min = args.n if args.n_min is None else args.n_min
    try:
        report = run_verify(n_min, args.n, args.suite, args.max_n,
                            args.orientation, args.delta_middle)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _emit(report, args, out)
    else:
        lines = report.summary_lines()
        if not args.trace:
            lines = [ln for ln in lines[:-1] if ln.startswith("[FAIL]")] + lines[-1:]
        if not select_suites(args.suite):
            out.write(f"no suite matches {args.suite!r}\n")
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_seed(text: str) -> edi.Atom:
    try:
        i, m = text.split(":")
        return int(i), int(m)
    except ValueError:
        raise UsageError(f"bad --seed {text!r}; expected I:M") from None


def _load_table(path: str, n: int) -> List[edi.Atom]:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read table {path}: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("tables"), list):
        raise UsageError(f"{path}: expected an object with a 'tables' list")
    if "n" in obj and obj["n"] != n:
        raise UsageError(f"{path}: table is for n={obj['n']}, not n={n}")
    atoms = []
    for entry in obj["tables"]:
        try:
            atoms.extend((int(entry["level"]), int(m)) for m in entry["members"])
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"{path}: malformed level entry {entry!r}") from None
    return atoms


def _table_levels(t: edi.EDITable) -> List[TableLevel]:
    return [TableLevel(i, sorted(s)) for i, s in enumerate(t.sets)]


def _firing_check(f: edi.RuleFiring) -> Check:
    params = dict(f.params)
    if f.contradiction:
        return Check(f.rule, params, False, f.describe())
    params["added"] = [f"{m}@{i}" for i, m in f.added]
    if f.clipped:
        params["clipped"] = [f"{m}@{i}" for i, m in f.clipped]
    return Check(f.rule, params, True)


def cmd_edi(args, out) -> int:
    _context(args)
    start = time.perf_counter()
    try:
        witt = edi.WittContext(args.aniso or args.i1 is not None, args.i1)
        witt.validate(args.n)
        conventions = dict(_conventions(args), mode=args.mode,
                           anisotropic=witt.anisotropic, i1=witt.i1)
        if args.mode == "enumerate":
            if args.seed or args.table:
                raise UsageError("--seed/--table apply to propagate mode only")
            return _enumerate(args, witt, conventions, out)
        atoms = [_parse_seed(s) for s in args.seed]
        if args.table:
            atoms += _load_table(args.table, args.n)
        seed = edi.EDITable.from_atoms(args.n, atoms)
        result = edi.propagate(seed, witt)
    except edi.EDIError as exc:
        raise UsageError(str(exc)) from exc
    checks = [_firing_check(f) for f in result.trail] if args.trace else []
    if result.contradiction is not None:
        checks.append(_firing_check(result.contradiction))
    report = Report(args.n, conventions, checks, _table_levels(result.table),
                    time.perf_counter() - start)
    if args.json:
        _emit(report, args, out)
    else:
        for f in result.trail if args.trace else []:
            out.write(f.describe() + "\n")
        if result.contradiction is not None:
            out.write(f"contradiction: {result.contradiction.describe()}\n")
        out.write(str(result.table) + "\n")
    return EXIT_OK if result.ok else EXIT_CONTRADICTION


def _enumerate(args, witt: edi.WittContext, conventions: dict, out) -> int:
    levels = None
    if args.levels:
        try:
            levels = [int(x) for x in args.levels.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad --levels {args.levels!r}") from None
    tables = list(edi.enumerate_admissible(args.n, witt, levels, args.max_n))
    checks = []
    for k, t in enumerate(tables):
        sets = {str(i): sorted(s) for i, s in enumerate(t.sets) if levels is None or i in levels}
        checks.append(Check("admissible-table", {"index": k, "sets": sets}, True))
    conventions = dict(conventions, levels=levels, count=len(tables))
    report = Report(args.n, conventions, checks)
    if args.json:
        _emit(report, args, out)
    else:
        if args.trace:
            for t in tables:
                out.write(str(t) + "\n")
        out.write(f"{len(tables)} admissible tables\n")
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "edi": cmd_edi}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
