"""``mvred`` command line.

Exit status: 0 success or all verdicts pass, 1 some verdict fails,
2 usage/parse/evaluation error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import abstract_reduction as ar
from .errors import BudgetExceeded, MvredError
from .generate import clause_suite, enumerate_formulas
from .lattice import check_lattice, lattice_from_selector
from .modal_flatten import build_kripke_flat, flatten_program, verify_corollary, verify_flat
from .modal_unary import (
    DEFAULT_CLAUSE_BUDGET, build_kripke_unary, transform_unary, verify_invariance,
    verify_two_valued,
)
from .semantics import compute_model
from .syntax import ground, parse_formula, parse_program
from .syntax.ast import BoxGamma, Dia, DiaD, Encap, FAtom, FOp, children
from .verdict import Verdict

SUITES = ("invariance", "twovalued", "flatten", "corollary", "suszko", "matrix", "lattice-axioms")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(MvredError):
    pass


def _budgets(args) -> tuple[int, int]:
    env = os.environ.get("MVRED_BUDGET")
    default_c, default_v = DEFAULT_CLAUSE_BUDGET, ar.DEFAULT_VALUATION_BUDGET
    if env:
        try:
            default_c = default_v = int(env)
        except ValueError:
            raise UsageError(f"MVRED_BUDGET must be an integer, got {env!r}") from None
    c = args.clause_budget if args.clause_budget is not None else default_c
    v = args.valuation_budget if args.valuation_budget is not None else default_v
    if c <= 0 or v <= 0:
        raise UsageError("budgets must be positive")
    return c, v


def _load(path: str, selector: str | None):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    lattice = lattice_from_selector(selector, Path.cwd()) if selector else None
    program = parse_program(text, lattice, base_dir=p.parent)
    return ground(program)


def _designated(args, lattice) -> ar.Matrix:
    names = [x for part in (args.designated or []) for x in part.split(",") if x.strip()]
    return ar.Matrix(lattice, names or [lattice.top])


def _emit(obj, as_json: bool, text: str | None = None):
    if as_json or text is None:
        sys.stdout.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------


def cmd_model(args) -> int:
    program = _load(args.program, args.lattice)
    I = compute_model(program)
    _emit(I.to_json(), args.json, I.dump_text())
    return EXIT_OK


def cmd_transform(args) -> int:
    program = _load(args.program, args.lattice)
    clause_budget, _ = _budgets(args)
    if args.mode == "unary":
        mp = transform_unary(program, clause_budget, args.body_mode)
        _emit(mp.to_json(), args.json, mp.format())
        return EXIT_OK
    I = compute_model(program)
    lines = flatten_program(program, I)
    if args.json:
        M = build_kripke_flat(program, I, args.full_implication)
        _emit({"clauses": lines, "relations": M.relations_json()}, True)
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def _kinds(node) -> set[type]:
    out = {type(node)}
    for k in children(node):
        out |= _kinds(k)
    return out


def cmd_check(args) -> int:
    program = _load(args.program, args.lattice)
    L = program.lattice
    phi = parse_formula(args.formula, L)
    I = compute_model(program)
    kinds = _kinds(phi)
    if BoxGamma in kinds:
        _, vbudget = _budgets(args)
        vs = ar.ValuationSpace(program.herbrand_base(), L, vbudget)
        M = ar.suszko_model(ar.program_clauses(program), vs)
        world = None if args.world is None else _int_world(args.world, vs.size)
    else:
        if DiaD in kinds:
            M = ar.matrix_model(_designated(args, L), dict(I.items()), args.designated_only)
        elif kinds & {FAtom, FOp, Encap, Dia}:
            M = build_kripke_flat(program, I, args.full_implication)
        else:
            M = build_kripke_unary(program, I)
        world = None if args.world is None else L.lookup(args.world)
    if world is None:
        value = M.is_true(phi)
    else:
        value = M.holds(phi, world)
    if args.json:
        ext = M.extent(phi)
        _emit({"formula": args.formula, "model": M.kind, "world": world,
               "value": value, "extent": [str(w) for w in M.worlds if w in ext]}, True)
    else:
        sys.stdout.write("true\n" if value else "false\n")
    return EXIT_OK


def _int_world(text, size) -> int:
    try:
        w = int(text)
    except ValueError:
        raise UsageError(f"Suszko worlds are valuation indices 0..{size - 1}") from None
    if not 0 <= w < size:
        raise UsageError(f"Suszko world {w} out of range 0..{size - 1}")
    return w


def _suite_verdicts(program, suite: str, args) -> list[Verdict]:
    clause_budget, vbudget = _budgets(args)
    L = program.lattice
    if suite == "lattice-axioms":
        reports = check_lattice(L)
        return [Verdict("lattice-axioms", not reports, reports[0] if reports else None,
                        {"lattice": L.name, "violations": len(reports)})]
    I = compute_model(program)
    if suite == "invariance":
        return [verify_invariance(program, I, clause_budget, args.body_mode)]
    if suite == "twovalued":
        return [verify_two_valued(program, I, count=args.samples, seed=args.seed)]
    if suite == "flatten":
        return [verify_flat(program, I, True, args.samples, args.seed),
                verify_flat(program, I, False, args.samples, args.seed)]
    if suite == "corollary":
        return [verify_corollary(program, I, full_implication=args.full_implication)]
    H = program.herbrand_base()
    if suite == "suszko":
        vs = ar.ValuationSpace(H, L, vbudget)
        gamma = ar.program_clauses(program)
        phis = list(dict.fromkeys(gamma + clause_suite(H, L)))
        return [ar.verify_suszko(gamma, phis, vs)]
    if suite == "matrix":
        depth = 2 if len(H) <= 4 else 1
        return [ar.verify_matrix(_designated(args, L), dict(I.items()),
                                 enumerate_formulas(H, depth), args.designated_only)]
    raise UsageError(f"unknown suite {suite!r}")


def _expand(paths) -> list[Path]:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.glob("*.mv")))
        else:
            out.append(p)
    return out


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for path in _expand(args.program):
        program = _load(str(path), args.lattice)
        for suite in suites:
            for v in _suite_verdicts(program, suite, args):
                results.append({"program": str(path), **v.to_json()})
    _emit(results, True)
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvred", description="Many-valued logic programs and their 2-valued modal reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, many=False):
        if many:
            p.add_argument("program", nargs="+", help="program files or directories of *.mv")
        else:
            p.add_argument("program", help="program file")
        p.add_argument("--lattice", help="belnap4 | fuzzy:k | interval:k | confidence:k | file:PATH")
        p.add_argument("--json", action="store_true", help="emit a single JSON document")
        p.add_argument("--clause-budget", type=int)
        p.add_argument("--valuation-budget", type=int)
        p.add_argument("--full-implication", action="store_true",
                       help="do not filter the implication relation by x <= y")
        p.add_argument("--designated", action="append", metavar="VALUES",
                       help="designated values, comma separated (default: lattice top)")
        p.add_argument("--designated-only", action="store_true",
                       help="matrix model keeps atoms only at designated worlds")
        p.add_argument("--body-mode", choices=("conjunctive", "verbatim"), default="conjunctive")

    p = sub.add_parser("model", help="print the least model")
    common(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("transform", help="print a reduced program")
    common(p)
    p.add_argument("--mode", choices=("unary", "flatten"), default="unary")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("check", help="evaluate one formula in the matching Kripke model")
    common(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--world", help="world to evaluate at (default: true at every world)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run verification suites, JSON verdict array")
    common(p, many=True)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=200, help="random formulas per program")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"mvred: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MvredError as exc:
        print(f"mvred: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
